//! Brute-force references shared by the integration tests. Nothing here calls
//! into the library.

#![allow(dead_code)]

/// Prime factorization by trial division.
pub fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Tree string by direct recursion on trial-division factorizations.
pub fn naive_tree(n: u64) -> String {
    let mut s = String::from("(");
    for (_, e) in trial_factor(n) {
        s.push_str(&naive_tree(e as u64));
    }
    s.push(')');
    s
}

/// Order-normalized tree string: children sorted by (length, text).
pub fn naive_canonical(s: &str) -> String {
    let inner = &s[1..s.len() - 1];
    let mut kids = Vec::new();
    let (mut depth, mut start) = (0, 0);
    for (i, c) in inner.char_indices() {
        if c == '(' {
            if depth == 0 {
                start = i;
            }
            depth += 1;
        } else {
            depth -= 1;
            if depth == 0 {
                kids.push(naive_canonical(&inner[start..=i]));
            }
        }
    }
    kids.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    format!("({})", kids.concat())
}

/// Primality flags for 0..=limit by a plain sieve.
pub fn prime_flags(limit: usize) -> Vec<bool> {
    let mut flags = vec![true; limit + 1];
    flags[0] = false;
    if limit >= 1 {
        flags[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if flags[i] {
            let mut j = i * i;
            while j <= limit {
                flags[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    flags
}

/// Squarefree flags for 1..=limit (index 0 unused) by crossing out multiples
/// of prime squares.
pub fn squarefree_flags(limit: usize) -> Vec<bool> {
    let primes = prime_flags(limit.isqrt() + 1);
    let mut flags = vec![true; limit + 1];
    for (p, &is_p) in primes.iter().enumerate() {
        if !is_p || p * p > limit {
            continue;
        }
        let mut m = p * p;
        while m <= limit {
            flags[m] = false;
            m += p * p;
        }
    }
    flags
}

/// Naive shape strings of 1..=bound, index 0 unused.
pub fn naive_avenue(bound: u64) -> Vec<String> {
    std::iter::once(String::new())
        .chain((1..=bound).map(naive_tree))
        .collect()
}

/// Number of window starts p <= bound - len + 1 whose shapes equal those of
/// the window at `start`.
pub fn naive_window_count(avenue: &[String], start: usize, len: usize) -> usize {
    let bound = avenue.len() - 1;
    let target = &avenue[start..start + len];
    (1..=bound + 1 - len)
        .filter(|&p| &avenue[p..p + len] == target)
        .count()
}
