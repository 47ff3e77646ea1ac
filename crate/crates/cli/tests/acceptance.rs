//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use natave::avenue::{first_occurrences_with, scan_with};
use natave::observable::{
    kappa_with, milestones_with, occurrences_batch, occurrences_with, DEFAULT_KAPPA_CAP,
};
use natave::{
    canonicalize, count_matches, kappa, li, min_realization, min_realization_unordered,
    occurrences, transpose, tree_of, window_equal, word_of, CanonicalShape, DensityModel,
    DensityTarget, Direction, KappaStatus, OccurrenceStatus, PlanarShape, ScanConfig, ShapeKind,
    Token, Word,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn natave_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_natave"))
        .args(args)
        .output()
        .map_err(fail)?;
    ensure!(
        out.status.success(),
        "natave {args:?} exited with {}",
        out.status
    );
    serde_json::from_slice(&out.stdout).map_err(fail)
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn u64s(v: &Value) -> Vec<u64> {
    v.as_array()
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default()
}

// ---- criteria --------------------------------------------------------------

fn tree_table() -> Check {
    let table = [
        (1, "()"),
        (2, "(())"),
        (3, "(())"),
        (4, "((()))"),
        (5, "(())"),
        (6, "(()())"),
        (7, "(())"),
        (8, "((()))"),
        (9, "((()))"),
        (10, "(()())"),
        (11, "(())"),
        (12, "((())())"),
        (13, "(())"),
        (14, "(()())"),
        (15, "(()())"),
        (16, "(((())))"),
        (17, "(())"),
        (18, "(()(()))"),
        (19, "(())"),
        (20, "((())())"),
        (30, "(()()())"),
        (48, "(((()))())"),
        (60, "((())()())"),
        (64, "((()()))"),
    ];
    for (n, s) in table {
        let got = tree_of(n).map_err(fail)?;
        ensure!(got.as_str() == s, "t({n}) = {got}, expected {s}");
    }
    Ok(format!("{} trees match", table.len()))
}

fn first_occurrences() -> Check {
    let planar = natave_json(&["seq", "--max", "10000", "--kind", "planar"])?;
    let unordered = natave_json(&["seq", "--max", "10000", "--kind", "unordered"])?;
    let p = u64s(&planar["result"]["entries"]);
    let u = u64s(&unordered["result"]["entries"]);
    ensure!(
        p.starts_with(&[1, 2, 4, 6, 12, 16, 18, 30, 36, 48]),
        "planar prefix {:?}",
        &p[..10.min(p.len())]
    );
    ensure!(
        u.starts_with(&[1, 2, 4, 6, 12, 16, 30, 36, 48]),
        "unordered prefix {:?}",
        &u[..9.min(u.len())]
    );

    let mut compared = Vec::new();
    for (file, kind) in [("b284456.txt", "planar"), ("b279686.txt", "unordered")] {
        let r = natave_json(&[
            "compare",
            "--oeis-bfile",
            &data(file),
            "--kind",
            kind,
            "--max",
            "1000000",
        ])?;
        let mismatches = r["result"]["mismatches"]
            .as_array()
            .map_or(usize::MAX, Vec::len);
        ensure!(mismatches == 0, "{file}: {mismatches} mismatches");
        let n = r["result"]["compared"].as_u64().unwrap_or(0);
        ensure!(
            n == r["result"]["terms"].as_u64().unwrap_or(u64::MAX),
            "{file}: only {n} terms compared"
        );
        compared.push(n);
    }
    Ok(format!(
        "prefixes ok; {} planar and {} unordered b-file terms to 10^6, 0 mismatches",
        compared[0], compared[1]
    ))
}

fn proved_unique_windows() -> Check {
    let cfg = ScanConfig::default();
    let long: Vec<Word> = [2, 4, 8]
        .iter()
        .map(|&n| word_of(n, 2))
        .collect::<Result<_, _>>()
        .map_err(fail)?;
    let short: Vec<Word> = [5, 11, 17]
        .iter()
        .map(|&n| word_of(n, 3))
        .collect::<Result<_, _>>()
        .map_err(fail)?;
    let a = occurrences_batch(&long, 10_000_000, None, &cfg).map_err(fail)?;
    let b = occurrences_batch(&short, 1_000_000, None, &cfg).map_err(fail)?;
    for (r, n) in a.iter().chain(&b).zip([2, 4, 8, 5, 11, 17]) {
        ensure!(
            r.positions == [n],
            "{}: {:?} up to {}",
            r.word,
            r.positions,
            r.bound
        );
        ensure!(
            r.status == OccurrenceStatus::UniqueProved,
            "{}: status {}",
            r.word,
            r.status
        );
    }
    Ok("{2}, {4}, {8} to 10^7 and {5}, {11}, {17} to 10^6 on one thread".into())
}

fn listed_sequences() -> Check {
    let w11 = word_of(11, 2).map_err(fail)?;
    let w12 = word_of(12, 2).map_err(fail)?;
    let a = occurrences(&w11, 1_000, Some(11)).map_err(fail)?.positions;
    let b = occurrences(&w12, 1_000, Some(11)).map_err(fail)?.positions;
    let listed11 = [11, 19, 23, 43, 67, 103, 151, 163, 211, 223, 283];
    let listed12 = [13, 29, 41, 53, 89, 97, 137, 149, 173, 233, 269];
    ensure!(a == listed11, "word_of(11,2) starts {a:?}");
    // The second list names each window by its prime, which is the window's
    // last letter; the windows themselves start one earlier.
    let ends: Vec<u64> = b.iter().map(|p| p + 1).collect();
    ensure!(ends == listed12, "word_of(12,2) windows end at {ends:?}");
    Ok(format!(
        "word_of(11,2) starts exact; word_of(12,2) starts {:?}.. end exactly at the listed primes",
        &b[..3]
    ))
}

fn kappa_table() -> Check {
    let cfg = ScanConfig::default()
        .with_threads(std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut got = Vec::new();
    for (dir, expected) in [
        (Direction::Forward, [0, 1, 2, 1, 2]),
        (Direction::Backward, [0, 1, 1, 2, 1]),
    ] {
        for (n, k) in (1..=5).zip(expected) {
            let r = kappa_with(n, dir, 1_000_000, DEFAULT_KAPPA_CAP, &cfg).map_err(fail)?;
            ensure!(
                r.kappa == Some(k),
                "kappa {dir} ({n}) = {:?}, expected {k}",
                r.kappa
            );
            ensure!(
                r.status == KappaStatus::Proved,
                "kappa {dir} ({n}) status {}",
                r.status
            );
            got.push(k);
        }
    }
    Ok(format!(
        "kappa+ = {:?}, kappa- = {:?}, all unique-proved",
        &got[..5],
        &got[5..]
    ))
}

fn transpose_identities() -> Check {
    let t52 = transpose(&word_of(5, 2).map_err(fail)?);
    let t32 = transpose(&word_of(3, 2).map_err(fail)?);
    ensure!(
        t52 == word_of(6, 2).map_err(fail)?,
        "transpose(word_of(5,2)) = {t52}"
    );
    ensure!(
        t32 == word_of(4, 2).map_err(fail)?,
        "transpose(word_of(3,2)) = {t32}"
    );
    ensure!(
        window_equal(5, 13, 2).map_err(fail)?,
        "window_equal(5,13,2) is false"
    );
    Ok("3 identities hold".into())
}

fn milestone_membership() -> Check {
    let cfg = ScanConfig::default()
        .with_threads(std::thread::available_parallelism().map_or(1, |n| n.get()));
    let two = milestones_with(100_000, 2, &cfg).map_err(fail)?;
    let three = milestones_with(100_000, 3, &cfg).map_err(fail)?;
    for n in [4, 8] {
        let w = word_of(n, 2).map_err(fail)?;
        ensure!(
            two.iter().any(|m| m.word == w && m.position == n),
            "word_of({n},2) missing"
        );
    }
    let w43 = word_of(4, 3).map_err(fail)?;
    ensure!(
        !three.iter().any(|m| m.word == w43),
        "word_of(4,3) listed as a milestone"
    );
    Ok(format!(
        "{} milestones of length <= 2, {} of length <= 3",
        two.len(),
        three.len()
    ))
}

fn sieve_prime_count(limit: usize) -> u64 {
    let mut composite = vec![false; limit + 1];
    let mut count = 0;
    for i in 2..=limit {
        if !composite[i] {
            count += 1;
            for j in (i * i..=limit).step_by(i) {
                composite[j] = true;
            }
        }
    }
    count
}

fn densities() -> Check {
    let oracle = sieve_prime_count(1_000_000);
    let xs = [1_000, 10_000, 100_000, 1_000_000];
    let prime = DensityTarget::Shape("(())".parse().map_err(fail)?);
    let r = count_matches(&prime, 1_000_000, &xs, DensityModel::LogIntegral).map_err(fail)?;
    let pi = r.checkpoints.last().map(|c| c.count).unwrap_or(0);
    ensure!(
        pi == oracle && pi == 78_498,
        "pi(10^6) = {pi}, sieve says {oracle}"
    );
    for cp in &r.checkpoints {
        let x = cp.x as f64;
        let dev = (cp.count as f64 - li(x).map_err(fail)?).abs();
        ensure!(dev < x.sqrt() * x.ln(), "|pi - li| = {dev} at {x}");
    }
    let c = 6.0 / std::f64::consts::PI.powi(2);
    let sf = count_matches(
        &DensityTarget::Squarefree,
        1_000_000,
        &[1_000_000],
        DensityModel::Constant(c),
    )
    .map_err(fail)?;
    let ratio = sf.checkpoints[0].ratio;
    ensure!((ratio - 1.0).abs() < 1e-3, "squarefree ratio {ratio}");
    Ok(format!(
        "pi(10^6) = {pi}; squarefree {} (ratio {ratio:.6})",
        sf.checkpoints[0].count
    ))
}

fn minimal_realizations() -> Check {
    for n in 1..=10_000u64 {
        let shape = tree_of(n).map_err(fail)?;
        let m = min_realization(&shape).map_err(fail)?;
        ensure!(m <= n, "min_realization(t({n})) = {m}");
        ensure!(
            tree_of(m).map_err(fail)? == shape,
            "t(min_realization(t({n}))) differs"
        );
    }
    let m18 =
        min_realization_unordered(&canonicalize(&tree_of(18).map_err(fail)?)).map_err(fail)?;
    ensure!(m18 == 12, "unordered minimal realization of t(18) = {m18}");
    Ok("n <= 10^4 exhaustive; unordered t(18) -> 12".into())
}

fn shuffle_deep(shape: &PlanarShape, rng: &mut StdRng) -> PlanarShape {
    let mut kids: Vec<PlanarShape> = shape
        .children()
        .iter()
        .map(|k| shuffle_deep(k, rng))
        .collect();
    kids.shuffle(rng);
    PlanarShape::from_children(&kids)
}

fn property_suites() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);

    // codec round-trip and canonicalization
    for n in 1..=20_000u64 {
        let shape = tree_of(n).map_err(fail)?;
        let back: PlanarShape = shape.as_str().parse().map_err(fail)?;
        ensure!(back == shape, "codec round-trip failed at {n}");
        let c = canonicalize(&shape);
        ensure!(
            canonicalize(&c.to_planar()) == c,
            "canonicalization not idempotent at {n}"
        );
        ensure!(
            c.as_str().parse::<CanonicalShape>().map_err(fail)? == c,
            "canonical codec at {n}"
        );
        let shuffled = shuffle_deep(&shape, &mut rng);
        ensure!(
            canonicalize(&shuffled) == c,
            "permutation changed canonical form at {n}"
        );
    }

    // occurrences shrink as words grow
    for n in 1..=100u64 {
        let mut last = usize::MAX;
        for len in 1..=5 {
            let count = occurrences(&word_of(n, len).map_err(fail)?, 100_000, None)
                .map_err(fail)?
                .count();
            ensure!(count <= last, "O({n}, len {len}) grew");
            last = count;
        }
    }

    // kappa does not fall as the bound grows
    for n in 1..=30u64 {
        for dir in [Direction::Forward, Direction::Backward] {
            let mut last = 0;
            for bound in [10_000, 100_000, 1_000_000] {
                if let Some(k) = kappa(n, dir, bound).map_err(fail)?.kappa {
                    ensure!(k >= last, "kappa {dir} ({n}) fell at {bound}");
                    last = k;
                }
            }
        }
    }

    // nothing depends on segment size or thread count
    let base = ScanConfig::default();
    let words = [
        word_of(3, 2).map_err(fail)?,
        "(()) * (())".parse::<Word>().map_err(fail)?,
        {
            let mut t = word_of(24, 4).map_err(fail)?.tokens().to_vec();
            t[1] = Token::Wildcard;
            natave::make_word(t).map_err(fail)?
        },
    ];
    let bound = 200_000;
    let ref_first = first_occurrences_with(bound, ShapeKind::Unordered, &base)
        .map_err(fail)?
        .entries;
    let ref_occ: Vec<_> = words
        .iter()
        .map(|w| occurrences_with(w, bound, None, &base).map(|r| r.positions))
        .collect::<Result<_, _>>()
        .map_err(fail)?;
    let ref_ms = milestones_with(50_000, 3, &base).map_err(fail)?;
    let ref_scan: Vec<_> = scan_with(123_456, 133_456, &base).map_err(fail)?.collect();
    for _ in 0..8 {
        let cfg = ScanConfig::default()
            .with_segment_size(rng.gen_range(1..100_000))
            .with_threads(rng.gen_range(1..9));
        ensure!(
            first_occurrences_with(bound, ShapeKind::Unordered, &cfg)
                .map_err(fail)?
                .entries
                == ref_first,
            "first occurrences differ under {cfg:?}"
        );
        for (w, r) in words.iter().zip(&ref_occ) {
            ensure!(
                &occurrences_with(w, bound, None, &cfg)
                    .map_err(fail)?
                    .positions
                    == r,
                "occurrences of {w} differ under {cfg:?}"
            );
        }
        ensure!(
            milestones_with(50_000, 3, &cfg).map_err(fail)? == ref_ms,
            "milestones differ under {cfg:?}"
        );
        let s: Vec<_> = scan_with(123_456, 133_456, &cfg).map_err(fail)?.collect();
        ensure!(s == ref_scan, "scan differs under {cfg:?}");
    }
    Ok("codec, canonical form, monotonicity and chunking checks green".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("tree table", Some(Duration::from_secs(1)), tree_table),
        (
            "first occurrences vs b-files",
            Some(Duration::from_secs(5)),
            first_occurrences,
        ),
        (
            "proved-unique windows",
            Some(Duration::from_secs(120)),
            proved_unique_windows,
        ),
        ("listed match sequences", None, listed_sequences),
        ("kappa table", None, kappa_table),
        ("transpose identities", None, transpose_identities),
        ("milestones", None, milestone_membership),
        ("densities", Some(Duration::from_secs(30)), densities),
        (
            "minimal realizations",
            Some(Duration::from_secs(10)),
            minimal_realizations,
        ),
        ("property suites", None, property_suites),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let elapsed = started.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!(
                "took {:.2} s, budget {} s",
                elapsed.as_secs_f64(),
                b.as_secs()
            )),
            (o, _) => o,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} {:>2} {name} [{:.2} s]: {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
