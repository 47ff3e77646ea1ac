use std::fmt::Write as _;
use std::path::Path;

use natave::avenue::first_occurrences_with;
use natave::bfile::parse_bfile;
use natave::observable::{kappa_with, milestones_with, occurrences_with};
use natave::stats::{count_matches_with, gap_stats_with};
use natave::{
    canonicalize, labeled_tree_of, min_realization, min_realization_unordered, tree_of,
    CanonicalShape, DensityModel, DensityTarget, Direction, PlanarShape, PrimeTree, ScanConfig,
    ShapeKind, Word,
};
use serde_json::json;

use crate::output::{Failure, Format, Payload};
use crate::DensityArgs;

fn joined(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn dot_of_shape(shape: &str) -> String {
    let mut out = String::from("digraph tree {\n  node [shape=point];\n");
    let mut stack = Vec::new();
    let mut next = 0usize;
    for c in shape.bytes() {
        if c == b'(' {
            let id = next;
            next += 1;
            writeln!(out, "  n{id};").unwrap();
            if let Some(parent) = stack.last() {
                writeln!(out, "  n{parent} -> n{id};").unwrap();
            }
            stack.push(id);
        } else {
            stack.pop();
        }
    }
    out.push_str("}\n");
    out
}

fn dot_of_labeled(tree: &PrimeTree) -> String {
    fn walk(t: &PrimeTree, id: usize, next: &mut usize, out: &mut String) {
        for (p, sub) in t.children() {
            let child = *next;
            *next += 1;
            writeln!(out, "  n{child};").unwrap();
            writeln!(out, "  n{id} -> n{child} [label=\"{p}\"];").unwrap();
            walk(sub, child, next, out);
        }
    }
    let mut out = String::from("digraph tree {\n  node [shape=point];\n  n0;\n");
    let mut next = 1;
    walk(tree, 0, &mut next, &mut out);
    out.push_str("}\n");
    out
}

pub fn tree(n: u64, labeled: bool, unordered: bool, format: Format) -> Result<Payload, Failure> {
    let planar = tree_of(n)?;
    let shape = if unordered {
        canonicalize(&planar).as_str().to_string()
    } else {
        planar.as_str().to_string()
    };
    let labels = if labeled {
        Some(labeled_tree_of(n)?)
    } else {
        None
    };
    let label_text = labels.as_ref().map(|t| t.to_string());

    let text = match (format, &labels) {
        (Format::Dot, Some(t)) => dot_of_labeled(t),
        (Format::Dot, None) => dot_of_shape(&shape),
        _ => format!("{}\n", label_text.as_deref().unwrap_or(&shape)),
    };
    let mut result = json!({ "n": n, "shape": shape, "nodes": planar.node_count(), "omega": planar.child_count() });
    let mut header = vec!["n", "shape", "nodes", "omega"];
    let mut row = vec![
        n.to_string(),
        shape.clone(),
        planar.node_count().to_string(),
        planar.child_count().to_string(),
    ];
    if let Some(l) = label_text {
        result["labeled"] = json!(l);
        header.push("labeled");
        row.push(l);
    }
    Ok(Payload {
        result,
        header,
        rows: vec![row],
        text,
    })
}

pub fn seq(max: u64, kind: ShapeKind, cfg: &ScanConfig) -> Result<Payload, Failure> {
    let list = first_occurrences_with(max, kind, cfg)?;
    Ok(Payload {
        result: json!({ "kind": kind.to_string(), "bound": max, "count": list.entries.len(), "entries": list.entries }),
        header: vec!["index", "n"],
        rows: list
            .entries
            .iter()
            .enumerate()
            .map(|(i, n)| vec![(i + 1).to_string(), n.to_string()])
            .collect(),
        text: format!("{}\n", joined(&list.entries)),
    })
}

fn parse_word(text: &str) -> Result<Word, Failure> {
    Ok(Word::parse(text)?)
}

pub fn find(
    word: &str,
    max: u64,
    limit: Option<usize>,
    cfg: &ScanConfig,
) -> Result<Payload, Failure> {
    let word = parse_word(word)?;
    let r = occurrences_with(&word, max, limit, cfg)?;
    Ok(Payload {
        result: json!({
            "word": r.word.to_string(),
            "bound": r.bound,
            "count": r.count(),
            "status": r.status.as_str(),
            "positions": r.positions,
            "gaps": r.gaps,
        }),
        header: vec!["index", "position"],
        rows: r
            .positions
            .iter()
            .enumerate()
            .map(|(i, p)| vec![(i + 1).to_string(), p.to_string()])
            .collect(),
        text: format!(
            "{} positions ({})\n{}\n",
            r.count(),
            r.status,
            joined(&r.positions)
        ),
    })
}

pub fn kappa(
    n: u64,
    direction: Direction,
    bound: u64,
    cap: u64,
    cfg: &ScanConfig,
) -> Result<Payload, Failure> {
    let r = kappa_with(n, direction, bound, cap, cfg)?;
    let sign = match direction {
        Direction::Forward => "+",
        Direction::Backward => "-",
    };
    let value = r
        .kappa
        .map_or_else(|| "none".to_string(), |k| k.to_string());
    Ok(Payload {
        result: json!({
            "n": n,
            "direction": direction.to_string(),
            "bound": bound,
            "kappa": r.kappa,
            "status": r.status.as_str(),
        }),
        header: vec!["n", "direction", "bound", "kappa", "status"],
        rows: vec![vec![
            n.to_string(),
            direction.to_string(),
            bound.to_string(),
            value.clone(),
            r.status.to_string(),
        ]],
        text: format!("kappa{sign}({n}) = {value} ({})\n", r.status),
    })
}

pub fn milestones(bound: u64, max_len: u64, cfg: &ScanConfig) -> Result<Payload, Failure> {
    let found = milestones_with(bound, max_len, cfg)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for m in &found {
        let word = m.word.to_string();
        writeln!(
            text,
            "{} {} {}{}",
            m.position,
            m.word.len(),
            word,
            if m.proved { " proved" } else { "" }
        )
        .unwrap();
        rows.push(vec![
            m.position.to_string(),
            m.word.len().to_string(),
            word.clone(),
            m.proved.to_string(),
        ]);
        items.push(json!({ "position": m.position, "length": m.word.len(), "word": word, "proved": m.proved }));
    }
    Ok(Payload {
        result: json!({ "bound": bound, "max_len": max_len, "count": found.len(), "milestones": items }),
        header: vec!["position", "length", "word", "proved"],
        rows,
        text,
    })
}

pub fn density(
    args: &DensityArgs,
    checkpoints: &[u64],
    cfg: &ScanConfig,
) -> Result<Payload, Failure> {
    let model: DensityModel = args.model.parse()?;
    let target = match (&args.word, &args.shape) {
        (Some(w), _) => DensityTarget::Word(parse_word(w)?),
        (_, Some(s)) if args.unordered => DensityTarget::Canonical(CanonicalShape::parse(s)?),
        (_, Some(s)) => DensityTarget::Shape(PlanarShape::parse(s)?),
        _ => DensityTarget::Squarefree,
    };
    let r = count_matches_with(&target, args.max, checkpoints, model, cfg)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for cp in &r.checkpoints {
        writeln!(
            text,
            "{} {} {:.6} {:.6}",
            cp.x, cp.count, cp.model_value, cp.ratio
        )
        .unwrap();
        rows.push(vec![
            cp.x.to_string(),
            cp.count.to_string(),
            cp.model_value.to_string(),
            cp.ratio.to_string(),
        ]);
        items.push(
            json!({ "x": cp.x, "count": cp.count, "model": cp.model_value, "ratio": cp.ratio }),
        );
    }
    Ok(Payload {
        result: json!({ "target": r.target.to_string(), "model": r.model.to_string(), "checkpoints": items }),
        header: vec!["x", "count", "model", "ratio"],
        rows,
        text,
    })
}

pub fn gaps(word: &str, max: u64, cfg: &ScanConfig) -> Result<Payload, Failure> {
    let word = parse_word(word)?;
    let r = gap_stats_with(&word, max, cfg)?;
    let mut text = format!("{} occurrences, max gap {}\n", r.occurrences, r.max_gap);
    let mut histogram = serde_json::Map::new();
    for (gap, count) in &r.gap_histogram {
        writeln!(text, "{gap} {count}").unwrap();
        histogram.insert(gap.to_string(), json!(count));
    }
    Ok(Payload {
        result: json!({
            "word": r.word.to_string(),
            "bound": r.bound,
            "occurrences": r.occurrences,
            "max_gap": r.max_gap,
            "histogram": histogram,
        }),
        header: vec!["gap", "count"],
        rows: r
            .gap_histogram
            .iter()
            .map(|(g, c)| vec![g.to_string(), c.to_string()])
            .collect(),
        text,
    })
}

pub fn minreal(shape: &str, unordered: bool) -> Result<Payload, Failure> {
    let (canonical, n) = if unordered {
        let c = CanonicalShape::parse(shape)?;
        (c.as_str().to_string(), min_realization_unordered(&c)?)
    } else {
        let s = PlanarShape::parse(shape)?;
        (s.as_str().to_string(), min_realization(&s)?)
    };
    Ok(Payload {
        result: json!({ "shape": canonical, "n": n }),
        header: vec!["shape", "n"],
        rows: vec![vec![canonical, n.to_string()]],
        text: format!("{n}\n"),
    })
}

pub fn compare(
    path: &Path,
    kind: ShapeKind,
    max: u64,
    cfg: &ScanConfig,
) -> Result<Payload, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let terms = parse_bfile(&text)?;
    let computed = first_occurrences_with(max, kind, cfg)?.entries;

    let mut compared = 0usize;
    let mut mismatches = Vec::new();
    for term in &terms {
        // terms past the scanned bound cannot be checked
        if term.value.is_some_and(|v| v > max) || term.value.is_none() {
            continue;
        }
        compared += 1;
        let actual = usize::try_from(term.index - 1)
            .ok()
            .and_then(|i| computed.get(i))
            .copied();
        if actual != term.value {
            mismatches.push((term.index, term.value, actual));
        }
    }

    let mut out = format!(
        "{compared} terms compared, {} mismatches\n",
        mismatches.len()
    );
    for (i, e, a) in &mismatches {
        writeln!(
            out,
            "a({i}): expected {}, computed {}",
            e.unwrap_or_default(),
            a.map_or("none".into(), |v| v.to_string())
        )
        .unwrap();
    }
    let items: Vec<_> = mismatches
        .iter()
        .map(|(i, e, a)| json!({ "index": i, "expected": e, "computed": a }))
        .collect();
    Ok(Payload {
        result: json!({
            "kind": kind.to_string(),
            "bound": max,
            "terms": terms.len(),
            "computed": computed.len(),
            "compared": compared,
            "mismatches": items,
        }),
        header: vec!["index", "expected", "computed"],
        rows: mismatches
            .iter()
            .map(|(i, e, a)| {
                vec![
                    i.to_string(),
                    e.map_or(String::new(), |v| v.to_string()),
                    a.map_or(String::new(), |v| v.to_string()),
                ]
            })
            .collect(),
        text: out,
    })
}
