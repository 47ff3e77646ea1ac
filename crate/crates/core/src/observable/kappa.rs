use std::fmt;
use std::str::FromStr;

use super::{word_of, Registry};
use crate::avenue::{collect_ids, IdSequence, ScanConfig};
use crate::error::{Error, Result};

/// Largest window extension tried before giving up.
pub const DEFAULT_KAPPA_CAP: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "forward" | "+" => Ok(Direction::Forward),
            "minus" | "backward" | "-" => Ok(Direction::Backward),
            other => Err(Error::invalid(format!("unknown direction {other:?}"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KappaStatus {
    /// Unique among windows up to the bound only.
    UniqueUpToBound,
    /// The unique window contains a registry word.
    Proved,
    /// No extension up to the cap (or the edge of the range) was unique.
    Exhausted,
}

impl KappaStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            KappaStatus::UniqueUpToBound => "unique-up-to-bound",
            KappaStatus::Proved => "unique-proved",
            KappaStatus::Exhausted => "exhausted",
        }
    }
}

impl fmt::Display for KappaStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Least extension `k` making the window of `k + 1` shapes at `n` unique.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KappaResult {
    pub n: u64,
    pub direction: Direction,
    pub bound: u64,
    pub kappa: Option<u64>,
    pub status: KappaStatus,
}

pub fn kappa(n: u64, direction: Direction, bound: u64) -> Result<KappaResult> {
    kappa_with(
        n,
        direction,
        bound,
        DEFAULT_KAPPA_CAP,
        &ScanConfig::default(),
    )
}

pub fn kappa_with(
    n: u64,
    direction: Direction,
    bound: u64,
    cap: u64,
    cfg: &ScanConfig,
) -> Result<KappaResult> {
    if n == 0 {
        return Err(Error::invalid("kappa needs n >= 1"));
    }
    if n > bound {
        return Err(Error::invalid(format!(
            "anchor {n} lies beyond the bound {bound}"
        )));
    }
    let ids = collect_ids(bound, cfg)?;
    kappa_in(&ids, n, direction, cap)
}

/// κ over a precomputed id sequence.
pub fn kappa_in(ids: &IdSequence, n: u64, direction: Direction, cap: u64) -> Result<KappaResult> {
    let bound = ids.bound();
    if n == 0 || n > bound {
        return Err(Error::invalid(format!("anchor {n} outside [1, {bound}]")));
    }
    let target = ids.id(n);
    // Other anchors whose window still agrees with the window at n.
    let mut rivals: Vec<u64> = (1..=bound)
        .filter(|&q| q != n && ids.id(q) == target)
        .collect();

    let mut found = None;
    for k in 0..=cap {
        if k > 0 {
            let probe = match direction {
                Direction::Forward if n + k <= bound => n + k,
                Direction::Backward if k < n => n - k,
                _ => break,
            };
            let want = ids.id(probe);
            rivals.retain(|&q| match direction {
                Direction::Forward => q + k <= bound && ids.id(q + k) == want,
                Direction::Backward => q > k && ids.id(q - k) == want,
            });
        }
        if rivals.is_empty() {
            found = Some(k);
            break;
        }
    }

    let status = match found {
        None => KappaStatus::Exhausted,
        Some(k) => {
            let start = match direction {
                Direction::Forward => n,
                Direction::Backward => n - k,
            };
            if Registry::standard().proves_at_most_once(&word_of(start, k + 1)?) {
                KappaStatus::Proved
            } else {
                KappaStatus::UniqueUpToBound
            }
        }
    };
    Ok(KappaResult {
        n,
        direction,
        bound,
        kappa: found,
        status,
    })
}
