//! Smallest-prime-factor sieving, factorization and primality.
//!
//! Two engines live here. [`SieveTable`] is the classic segmented
//! smallest-prime-factor table used for factoring individual integers in a
//! range. [`ExponentSieve`] is the range-scanning engine: it divides out every
//! base prime over a whole segment at once and records, for each integer, the
//! sequence of its prime exponents in increasing prime order. That sequence is
//! all the tree module needs to build a shape.

use crate::error::{Error, Result};

/// Default number of entries per sieve segment.
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 22;

/// Default cap on the number of entries a single [`SieveTable`] may hold.
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 26;

/// All primes `<= limit`, by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from pairs, checking the ordering invariant.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::invalid("primes must be strictly increasing"));
            }
        }
        if let Some(&(p, e)) = pairs.iter().find(|&&(p, e)| e == 0 || !is_prime(p)) {
            return Err(Error::invalid(format!("invalid factor {p}^{e}")));
        }
        Ok(Factorization { pairs })
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.pairs.len()
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.pairs.iter().map(|&(_, e)| e)
    }

    /// The factored integer, or `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        self.pairs
            .iter()
            .try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }
}

/// Smallest-prime-factor table over `[lo, hi]`.
///
/// Entries hold the smallest prime factor when it is at most `sqrt(hi)`;
/// a zero entry marks either a prime or the sentinel at `n = 1`.
#[derive(Debug, Clone)]
pub struct SieveTable {
    lo: u64,
    hi: u64,
    spf: Vec<u32>,
    base_primes: Vec<u64>,
}

/// Builds a [`SieveTable`] for `[lo, hi]` under the default memory budget.
pub fn build_sieve(lo: u64, hi: u64) -> Result<SieveTable> {
    SieveTable::with_budget(lo, hi, DEFAULT_MEMORY_BUDGET)
}

impl SieveTable {
    pub fn with_budget(lo: u64, hi: u64, budget: u64) -> Result<Self> {
        if lo == 0 {
            return Err(Error::invalid("sieve range must start at 1 or above"));
        }
        if lo > hi {
            return Err(Error::invalid(format!("empty range [{lo}, {hi}]")));
        }
        let len = hi - lo + 1;
        let root = hi.isqrt();
        if len > budget || root > budget {
            return Err(Error::ResourceLimit {
                requested: len.max(root),
                budget,
            });
        }

        let base_primes = primes_up_to(root);
        let mut spf = vec![0u32; len as usize];
        for &p in &base_primes {
            let first = (p * p).max(lo.div_ceil(p) * p);
            let mut m = first;
            while m <= hi {
                let slot = &mut spf[(m - lo) as usize];
                if *slot == 0 {
                    *slot = p as u32;
                }
                m = match m.checked_add(p) {
                    Some(next) => next,
                    None => break,
                };
            }
        }
        Ok(SieveTable {
            lo,
            hi,
            spf,
            base_primes,
        })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn contains(&self, n: u64) -> bool {
        (self.lo..=self.hi).contains(&n)
    }

    /// Smallest prime factor of `n`; `None` for `n = 1` or outside the table.
    pub fn spf(&self, n: u64) -> Option<u64> {
        if n < 2 || !self.contains(n) {
            return None;
        }
        match self.spf[(n - self.lo) as usize] {
            0 => Some(n),
            p => Some(p as u64),
        }
    }

    pub fn is_prime(&self, n: u64) -> Option<bool> {
        if n == 1 && self.contains(1) {
            return Some(false);
        }
        self.spf(n).map(|p| p == n)
    }

    fn factorize(&self, n: u64) -> Factorization {
        let mut pairs = Vec::new();
        let mut rest = n;
        let mut idx = 0;
        while rest > 1 {
            // Inside the table the next factor is a lookup; below it, fall back
            // to the base primes, all of which exceed the last factor found.
            let p = match self.spf(rest) {
                Some(p) => p,
                None => {
                    let mut found = rest;
                    while idx < self.base_primes.len() {
                        let q = self.base_primes[idx];
                        if q * q > rest {
                            break;
                        }
                        if rest.is_multiple_of(q) {
                            found = q;
                            break;
                        }
                        idx += 1;
                    }
                    found
                }
            };
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            pairs.push((p, e));
            while idx < self.base_primes.len() && self.base_primes[idx] <= p {
                idx += 1;
            }
        }
        Factorization { pairs }
    }
}

/// Factors `n >= 2`, through `table` when given.
pub fn factorize(n: u64, table: Option<&SieveTable>) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::invalid(format!("cannot factor {n}")));
    }
    match table {
        Some(t) if !t.contains(n) => Err(Error::invalid(format!(
            "{n} lies outside the sieve range [{}, {}]",
            t.lo, t.hi
        ))),
        Some(t) => Ok(t.factorize(n)),
        None => Ok(factorize_direct(n)),
    }
}

const TRIAL_LIMIT: u64 = 1 << 10;

fn factorize_direct(n: u64) -> Factorization {
    let mut pairs = Vec::new();
    let mut rest = n;
    let tz = rest.trailing_zeros();
    if tz > 0 {
        pairs.push((2, tz));
        rest >>= tz;
    }
    let mut q = 3;
    while q < TRIAL_LIMIT && q * q <= rest {
        if rest.is_multiple_of(q) {
            let mut e = 0;
            while rest.is_multiple_of(q) {
                rest /= q;
                e += 1;
            }
            pairs.push((q, e));
        }
        q += 2;
    }
    if rest > 1 {
        let mut large = Vec::new();
        split_large(rest, &mut large);
        large.sort_unstable();
        for p in large {
            match pairs.last_mut() {
                Some((last, e)) if *last == p => *e += 1,
                _ => pairs.push((p, 1)),
            }
        }
    }
    Factorization { pairs }
}

/// Splits an integer with no factor below `TRIAL_LIMIT` into primes.
fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A non-trivial factor of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1;
    loop {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut ys = y;
        let mut r = 1u64;
        let m = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Deterministic primality for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime exponents of one integer, packed six bits per exponent with the
/// first (smallest prime) exponent in the most significant occupied field.
///
/// Exponents of a 64-bit integer never exceed 63 and there are at most 15 of
/// them, so 21 fields of a `u128` always suffice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PackedExponents(pub(crate) u128);

impl PackedExponents {
    pub const FIELD_BITS: u32 = 6;
    pub const MAX_EXPONENT: u32 = 63;

    #[inline]
    pub(crate) fn push(self, e: u32) -> Self {
        debug_assert!((1..=Self::MAX_EXPONENT).contains(&e));
        PackedExponents((self.0 << Self::FIELD_BITS) | e as u128)
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = u32>) -> Option<Self> {
        let mut packed = PackedExponents(0);
        for (i, e) in exps.into_iter().enumerate() {
            if !(1..=Self::MAX_EXPONENT).contains(&e) || i >= 21 {
                return None;
            }
            packed = packed.push(e);
        }
        Some(packed)
    }

    pub fn len(self) -> usize {
        let bits = 128 - self.0.leading_zeros();
        bits.div_ceil(Self::FIELD_BITS) as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Exponents in increasing prime order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let len = self.len();
        (0..len)
            .rev()
            .map(move |i| ((self.0 >> (i as u32 * Self::FIELD_BITS)) & 0x3f) as u32)
    }
}

/// Segment engine that yields the exponent sequence of every integer in a
/// range.
#[derive(Debug, Clone)]
pub struct ExponentSieve {
    base_primes: Vec<u64>,
    limit: u64,
    rest: Vec<u64>,
}

impl ExponentSieve {
    /// An engine able to process any segment whose upper end is `<= limit`.
    pub fn new(limit: u64) -> Self {
        ExponentSieve {
            base_primes: primes_up_to(limit.isqrt()),
            limit,
            rest: Vec::new(),
        }
    }

    /// Fills `out[i]` with the exponents of `lo + i` for all of `[lo, hi]`.
    pub fn fill(&mut self, lo: u64, hi: u64, out: &mut Vec<PackedExponents>) {
        assert!(lo >= 1 && lo <= hi && hi <= self.limit);
        let len = (hi - lo + 1) as usize;
        out.clear();
        out.resize(len, PackedExponents(0));
        self.rest.clear();
        self.rest.extend(lo..=hi);

        for &p in &self.base_primes {
            if p * p > hi {
                break;
            }
            let mut m = lo.div_ceil(p) * p;
            while m <= hi {
                let i = (m - lo) as usize;
                let r = &mut self.rest[i];
                let e = if p == 2 {
                    let tz = r.trailing_zeros();
                    *r >>= tz;
                    tz
                } else {
                    let mut e = 0;
                    while (*r).is_multiple_of(p) {
                        *r /= p;
                        e += 1;
                    }
                    e
                };
                out[i] = out[i].push(e);
                m = match m.checked_add(p) {
                    Some(next) => next,
                    None => break,
                };
            }
        }
        // What remains above 1 is a single prime larger than sqrt(hi).
        for (slot, &r) in out.iter_mut().zip(&self.rest) {
            if r > 1 {
                *slot = slot.push(1);
            }
        }
    }
}
