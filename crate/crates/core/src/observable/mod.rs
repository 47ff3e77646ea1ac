//! Words over the shape alphabet: matching, counting, uniqueness radii and
//! milestones.
//!
//! Counts are always relative to a scan bound. A word seen once below the
//! bound is reported as unique only up to that bound, unless the word
//! contains one of the windows in the [`Registry`], whose uniqueness over all
//! of the integers is known.

mod kappa;
mod milestone;
mod word;

use std::fmt;
use std::sync::OnceLock;

pub use kappa::{
    kappa, kappa_in, kappa_with, Direction, KappaResult, KappaStatus, DEFAULT_KAPPA_CAP,
};
pub use milestone::{milestones, milestones_with, Milestone};
pub use word::{make_word, transpose, word_of, Token, Word};

use crate::avenue::{map_chunks, KeyScan, ScanConfig};
use crate::error::{Error, Result};
use crate::tree::ShapeKey;

/// Windows `(anchor, length)` known to occur exactly once among all
/// integers.
pub const PROVED_UNIQUE_WINDOWS: [(u64, u64); 7] =
    [(1, 1), (2, 2), (4, 2), (8, 2), (5, 3), (11, 3), (17, 3)];

/// Words whose uniqueness is a theorem rather than an observation.
#[derive(Debug, Clone)]
pub struct Registry {
    entries: Vec<(u64, Word)>,
}

impl Registry {
    pub fn standard() -> &'static Registry {
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        REGISTRY.get_or_init(|| Registry {
            entries: PROVED_UNIQUE_WINDOWS
                .iter()
                .map(|&(n, len)| (n, word_of(n, len).expect("small window")))
                .collect(),
        })
    }

    /// `(position, word)` pairs.
    pub fn entries(&self) -> &[(u64, Word)] {
        &self.entries
    }

    /// True when every occurrence of `word` forces an occurrence of a
    /// registry word, so `word` occurs at most once.
    pub fn proves_at_most_once(&self, word: &Word) -> bool {
        self.entries.iter().any(|(_, r)| word.forces(r))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OccurrenceStatus {
    Empty,
    UniqueUpToBound,
    UniqueProved,
    Multiple,
}

impl OccurrenceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            OccurrenceStatus::Empty => "empty",
            OccurrenceStatus::UniqueUpToBound => "unique-up-to-bound",
            OccurrenceStatus::UniqueProved => "unique-proved",
            OccurrenceStatus::Multiple => "multiple",
        }
    }

    fn classify(found: usize, word: &Word) -> Self {
        match found {
            0 => OccurrenceStatus::Empty,
            1 if Registry::standard().proves_at_most_once(word) => OccurrenceStatus::UniqueProved,
            1 => OccurrenceStatus::UniqueUpToBound,
            _ => OccurrenceStatus::Multiple,
        }
    }
}

impl fmt::Display for OccurrenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a word occurs among the windows ending at or below `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceReport {
    pub word: Word,
    pub bound: u64,
    pub positions: Vec<u64>,
    pub status: OccurrenceStatus,
    pub gaps: Vec<u64>,
}

impl OccurrenceReport {
    fn new(word: Word, bound: u64, positions: Vec<u64>) -> Self {
        let gaps = positions.windows(2).map(|w| w[1] - w[0]).collect();
        let status = OccurrenceStatus::classify(positions.len(), &word);
        OccurrenceReport {
            word,
            bound,
            positions,
            status,
            gaps,
        }
    }

    pub fn count(&self) -> usize {
        self.positions.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pattern {
    Any,
    Key(ShapeKey),
}

/// A word lowered to shape keys. `None` when some letter is a shape no
/// 64-bit integer has, in which case the word cannot match.
fn compile(word: &Word) -> Option<Vec<Pattern>> {
    word.tokens()
        .iter()
        .map(|t| match t {
            Token::Wildcard => Some(Pattern::Any),
            Token::Shape(s) => ShapeKey::of_shape(s).map(Pattern::Key),
        })
        .collect()
}

/// Whether `word` matches the window starting at `n`.
pub fn matches_at(word: &Word, n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let Some(patterns) = compile(word) else {
        return false;
    };
    let Some(end) = n.checked_add(word.len() as u64 - 1) else {
        return false;
    };
    match KeyScan::new(n, end, word.len()) {
        Ok(scan) => scan.zip(&patterns).all(|((_, k), p)| match p {
            Pattern::Any => true,
            Pattern::Key(want) => *want == k,
        }),
        Err(_) => false,
    }
}

/// Start positions of every word in `[1, bound]` whose window also ends at or
/// below `bound`. One pass over the range serves all words.
pub(crate) fn match_positions(
    words: &[Word],
    bound: u64,
    cfg: &ScanConfig,
) -> Result<Vec<Vec<u64>>> {
    let compiled: Vec<Option<Vec<Pattern>>> = words.iter().map(compile).collect();
    let max_len = words.iter().map(Word::len).max().unwrap_or(1) as u64;

    // Chunks partition the start positions; each scans up to max_len - 1
    // integers past its end so windows straddling chunk edges are seen once.
    let per_chunk = map_chunks(1, bound, cfg, |a, b| {
        let scan_hi = b.saturating_add(max_len - 1).min(bound);
        let cap = max_len as usize;
        let mut ring = vec![None::<ShapeKey>; cap];
        let mut found: Vec<Vec<u64>> = vec![Vec::new(); words.len()];
        for (n, key) in KeyScan::new(a, scan_hi, cfg.segment_size)? {
            ring[(n % max_len) as usize] = Some(key);
            for (patterns, hits) in compiled.iter().zip(found.iter_mut()) {
                let Some(patterns) = patterns else { continue };
                let len = patterns.len() as u64;
                if n + 1 < a + len {
                    continue;
                }
                let start = n + 1 - len;
                if start > b {
                    continue;
                }
                let ok = patterns.iter().enumerate().all(|(i, p)| match p {
                    Pattern::Any => true,
                    Pattern::Key(want) => {
                        ring[((start + i as u64) % max_len) as usize] == Some(*want)
                    }
                });
                if ok {
                    hits.push(start);
                }
            }
        }
        Ok(found)
    })?;

    let mut merged: Vec<Vec<u64>> = vec![Vec::new(); words.len()];
    for chunk in per_chunk {
        for (all, part) in merged.iter_mut().zip(chunk) {
            all.extend(part);
        }
    }
    Ok(merged)
}

/// Occurrences of `word` up to `bound`, keeping at most `limit` positions.
pub fn occurrences(word: &Word, bound: u64, limit: Option<usize>) -> Result<OccurrenceReport> {
    occurrences_with(word, bound, limit, &ScanConfig::default())
}

pub fn occurrences_with(
    word: &Word,
    bound: u64,
    limit: Option<usize>,
    cfg: &ScanConfig,
) -> Result<OccurrenceReport> {
    Ok(
        occurrences_batch(std::slice::from_ref(word), bound, limit, cfg)?
            .pop()
            .expect("one report per word"),
    )
}

/// Occurrence reports for several words from a single scan.
pub fn occurrences_batch(
    words: &[Word],
    bound: u64,
    limit: Option<usize>,
    cfg: &ScanConfig,
) -> Result<Vec<OccurrenceReport>> {
    if words.is_empty() {
        return Ok(Vec::new());
    }
    if let Some(w) = words.iter().find(|w| w.len() as u64 > bound) {
        return Err(Error::invalid(format!(
            "bound {bound} is shorter than the word {w}"
        )));
    }
    let positions = match_positions(words, bound, cfg)?;
    Ok(words
        .iter()
        .zip(positions)
        .map(|(w, mut pos)| {
            if let Some(limit) = limit {
                pos.truncate(limit);
            }
            OccurrenceReport::new(w.clone(), bound, pos)
        })
        .collect())
}

/// Whether the windows of length `len` at `n` and `m` carry the same shapes.
pub fn window_equal(n: u64, m: u64, len: u64) -> Result<bool> {
    if n == 0 || m == 0 || len == 0 {
        return Err(Error::invalid("window_equal needs n, m, len >= 1"));
    }
    if n == m {
        return Ok(true);
    }
    let a = KeyScan::new(
        n,
        n.checked_add(len - 1).ok_or(Error::Overflow)?,
        len as usize,
    )?;
    let b = KeyScan::new(
        m,
        m.checked_add(len - 1).ok_or(Error::Overflow)?,
        len as usize,
    )?;
    Ok(a.zip(b).all(|((_, x), (_, y))| x == y))
}
