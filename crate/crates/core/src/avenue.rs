//! Streaming the shape sequence over ranges of integers.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sieve::{ExponentSieve, PackedExponents, DEFAULT_MEMORY_BUDGET, DEFAULT_SEGMENT_SIZE};
use crate::tree::{CanonicalKey, PlanarShape, ShapeKey};

/// Environment variable overriding the sieve segment length.
pub const SEGMENT_SIZE_ENV: &str = "NATAVE_SEGMENT_SIZE";

/// How range scans are carried out. Results never depend on these settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub segment_size: usize,
    pub threads: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            segment_size: DEFAULT_SEGMENT_SIZE,
            threads: 1,
        }
    }
}

impl ScanConfig {
    /// Default settings with the segment size taken from
    /// `NATAVE_SEGMENT_SIZE` when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = ScanConfig::default();
        if let Ok(v) = std::env::var(SEGMENT_SIZE_ENV) {
            cfg.segment_size = v.trim().parse().ok().filter(|&s| s > 0).ok_or_else(|| {
                Error::invalid(format!(
                    "{SEGMENT_SIZE_ENV}={v:?} is not a positive integer"
                ))
            })?;
        }
        Ok(cfg)
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_segment_size(mut self, segment_size: usize) -> Self {
        self.segment_size = segment_size.max(1);
        self
    }
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo == 0 {
        return Err(Error::invalid("scans start at 1"));
    }
    if lo > hi {
        return Err(Error::invalid(format!("empty range [{lo}, {hi}]")));
    }
    if hi.isqrt() > DEFAULT_MEMORY_BUDGET {
        return Err(Error::ResourceLimit {
            requested: hi.isqrt(),
            budget: DEFAULT_MEMORY_BUDGET,
        });
    }
    Ok(())
}

/// Pull-based stream of `(n, key)` over `[lo, hi]`, sieving one segment at
/// a time.
#[derive(Debug)]
pub struct KeyScan {
    engine: ExponentSieve,
    segment_size: u64,
    hi: u64,
    seg_lo: u64,
    buf: Vec<PackedExponents>,
    pos: usize,
    done: bool,
}

impl KeyScan {
    pub fn new(lo: u64, hi: u64, segment_size: usize) -> Result<Self> {
        check_range(lo, hi)?;
        Ok(KeyScan {
            engine: ExponentSieve::new(hi),
            segment_size: segment_size.max(1) as u64,
            hi,
            seg_lo: lo,
            buf: Vec::new(),
            pos: 0,
            done: false,
        })
    }

    /// The integer the next call to `next` will yield.
    pub fn position(&self) -> u64 {
        self.seg_lo + self.pos as u64
    }
}

impl Iterator for KeyScan {
    type Item = (u64, ShapeKey);

    fn next(&mut self) -> Option<Self::Item> {
        if self.pos == self.buf.len() {
            if self.done {
                return None;
            }
            if !self.buf.is_empty() {
                self.seg_lo += self.buf.len() as u64;
            }
            let seg_hi = self
                .seg_lo
                .saturating_add(self.segment_size - 1)
                .min(self.hi);
            self.engine.fill(self.seg_lo, seg_hi, &mut self.buf);
            self.pos = 0;
            self.done = seg_hi == self.hi;
        }
        let n = self.seg_lo + self.pos as u64;
        let key = ShapeKey::from_exponents(self.buf[self.pos]);
        self.pos += 1;
        Some((n, key))
    }
}

/// Stream of `(n, tree_of(n))` for `n` in `[lo, hi]`.
#[derive(Debug)]
pub struct Scan {
    keys: KeyScan,
    cache: HashMap<ShapeKey, PlanarShape>,
}

impl Iterator for Scan {
    type Item = (u64, PlanarShape);

    fn next(&mut self) -> Option<Self::Item> {
        let (n, key) = self.keys.next()?;
        let shape = self
            .cache
            .entry(key)
            .or_insert_with(|| key.to_shape())
            .clone();
        Some((n, shape))
    }
}

/// Streams the shapes of `lo..=hi`.
pub fn scan(lo: u64, hi: u64) -> Result<Scan> {
    scan_with(lo, hi, &ScanConfig::default())
}

pub fn scan_with(lo: u64, hi: u64, cfg: &ScanConfig) -> Result<Scan> {
    Ok(Scan {
        keys: KeyScan::new(lo, hi, cfg.segment_size)?,
        cache: HashMap::new(),
    })
}

/// Splits `[lo, hi]` into contiguous chunks, runs `work` on each (in parallel
/// when `cfg.threads > 1`), and returns the results in range order.
pub fn map_chunks<T, F>(lo: u64, hi: u64, cfg: &ScanConfig, work: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64) -> Result<T> + Sync,
{
    check_range(lo, hi)?;
    let threads = cfg.threads.max(1) as u64;
    let len = hi - lo + 1;
    if threads == 1 || len < 2 * threads {
        return Ok(vec![work(lo, hi)?]);
    }
    let chunk = len.div_ceil(threads);
    let bounds: Vec<(u64, u64)> = (0..threads)
        .map(|i| (lo + i * chunk, (lo + (i + 1) * chunk - 1).min(hi)))
        .filter(|(a, b)| a <= b)
        .collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(a, b)| {
                let work = &work;
                s.spawn(move || work(a, b))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    })
}

/// Keys of every integer in `[lo, hi]`, in order.
pub fn collect_keys(lo: u64, hi: u64, cfg: &ScanConfig) -> Result<Vec<ShapeKey>> {
    let parts = map_chunks(lo, hi, cfg, |a, b| {
        Ok(KeyScan::new(a, b, cfg.segment_size)?
            .map(|(_, k)| k)
            .collect::<Vec<_>>())
    })?;
    Ok(parts.concat())
}

/// The shapes of `1..=bound` as small integer ids, with `dictionary[id]`
/// giving the key behind each id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdSequence {
    pub ids: Vec<u32>,
    pub dictionary: Vec<ShapeKey>,
}

impl IdSequence {
    /// Id of the shape of `n`, for `1 <= n <= bound`.
    #[inline]
    pub fn id(&self, n: u64) -> u32 {
        self.ids[(n - 1) as usize]
    }

    pub fn bound(&self) -> u64 {
        self.ids.len() as u64
    }
}

pub fn collect_ids(bound: u64, cfg: &ScanConfig) -> Result<IdSequence> {
    let parts = map_chunks(1, bound, cfg, |a, b| {
        let mut local: HashMap<ShapeKey, u32> = HashMap::new();
        let mut dict = Vec::new();
        let ids = KeyScan::new(a, b, cfg.segment_size)?
            .map(|(_, k)| {
                *local.entry(k).or_insert_with(|| {
                    dict.push(k);
                    dict.len() as u32 - 1
                })
            })
            .collect::<Vec<_>>();
        Ok((ids, dict))
    })?;

    let mut global: HashMap<ShapeKey, u32> = HashMap::new();
    let mut dictionary = Vec::new();
    let mut ids = Vec::with_capacity(bound as usize);
    for (local_ids, local_dict) in parts {
        let remap: Vec<u32> = local_dict
            .into_iter()
            .map(|k| {
                *global.entry(k).or_insert_with(|| {
                    dictionary.push(k);
                    dictionary.len() as u32 - 1
                })
            })
            .collect();
        ids.extend(local_ids.into_iter().map(|i| remap[i as usize]));
    }
    Ok(IdSequence { ids, dictionary })
}

/// A contiguous run of shapes starting at `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvenueWindow {
    pub start: u64,
    pub shapes: Vec<PlanarShape>,
}

impl AvenueWindow {
    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn end(&self) -> u64 {
        self.start + self.shapes.len() as u64 - 1
    }
}

/// Shapes of `n, n+1, ..., n+len-1`.
pub fn window(n: u64, len: u64) -> Result<AvenueWindow> {
    if n == 0 || len == 0 {
        return Err(Error::invalid("windows need n >= 1 and len >= 1"));
    }
    let end = n.checked_add(len - 1).ok_or(Error::Overflow)?;
    let shapes = scan(n, end)?.map(|(_, s)| s).collect();
    Ok(AvenueWindow { start: n, shapes })
}

/// Whether shapes are told apart as planar trees or only up to reordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Planar,
    Unordered,
}

impl FromStr for ShapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "planar" => Ok(ShapeKind::Planar),
            "unordered" => Ok(ShapeKind::Unordered),
            other => Err(Error::invalid(format!("unknown shape kind {other:?}"))),
        }
    }
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeKind::Planar => "planar",
            ShapeKind::Unordered => "unordered",
        })
    }
}

/// The integers `<= bound` whose shape differs from that of every smaller
/// integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOccurrenceList {
    pub kind: ShapeKind,
    pub bound: u64,
    pub entries: Vec<u64>,
}

pub fn first_occurrences(bound: u64, kind: ShapeKind) -> Result<FirstOccurrenceList> {
    first_occurrences_with(bound, kind, &ScanConfig::default())
}

pub fn first_occurrences_with(
    bound: u64,
    kind: ShapeKind,
    cfg: &ScanConfig,
) -> Result<FirstOccurrenceList> {
    if bound == 0 {
        return Err(Error::invalid("bound must be at least 1"));
    }
    // Each chunk reports its local first occurrences; a key is new globally
    // when no earlier chunk has seen it.
    let chunks = map_chunks(1, bound, cfg, |a, b| {
        let mut seen_planar = HashSet::new();
        let mut seen_canonical: HashSet<CanonicalKey> = HashSet::new();
        let mut local = Vec::new();
        for (n, key) in KeyScan::new(a, b, cfg.segment_size)? {
            let fresh = match kind {
                ShapeKind::Planar => seen_planar.insert(key),
                ShapeKind::Unordered => {
                    seen_planar.insert(key) && seen_canonical.insert(key.canonical())
                }
            };
            if fresh {
                local.push((n, key));
            }
        }
        Ok(local)
    })?;

    let mut seen_planar = HashSet::new();
    let mut seen_canonical = HashSet::new();
    let mut entries = Vec::new();
    for (n, key) in chunks.into_iter().flatten() {
        let fresh = match kind {
            ShapeKind::Planar => seen_planar.insert(key),
            ShapeKind::Unordered => seen_canonical.insert(key.canonical()),
        };
        if fresh {
            entries.push(n);
        }
    }
    Ok(FirstOccurrenceList {
        kind,
        bound,
        entries,
    })
}
