//! Counting shapes and words against the classical density models, and the
//! spacing between consecutive occurrences.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::avenue::{map_chunks, KeyScan, ScanConfig};
use crate::error::{Error, Result};
use crate::observable::{self, Word};
use crate::tree::{CanonicalKey, CanonicalShape, PlanarShape, ShapeKey};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Principal-value logarithmic integral for `x >= 2`.
///
/// Uses Ramanujan's series
/// `li(x) = γ + ln ln x + √x Σ (-1)^(n-1) (ln x)^n / (n! 2^(n-1)) Σ_{k<=(n-1)/2} 1/(2k+1)`,
/// which converges for every `x > 1` without cancellation trouble in the
/// range of interest.
pub fn li(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 2.0 {
        return Err(Error::invalid(format!(
            "li is evaluated for finite x >= 2, got {x}"
        )));
    }
    let u = x.ln();
    let mut term = u; // (-1)^(n-1) u^n / (n! 2^(n-1)) at n = 1
    let mut inner = 1.0;
    let mut sum = term * inner;
    for n in 2..500u32 {
        term *= -u / (2.0 * n as f64);
        if n % 2 == 1 {
            inner += 1.0 / n as f64;
        }
        let add = term * inner;
        sum += add;
        if add.abs() < 1e-17 * sum.abs() && (n as f64) > u {
            break;
        }
    }
    Ok(EULER_GAMMA + u.ln() + x.sqrt() * sum)
}

/// Analytic comparison curve for a count of matches up to `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityModel {
    /// `x / ln x`
    PrimeNumberTheorem,
    /// `li(x)`
    LogIntegral,
    /// `x ln ln x / ln x`
    Semiprime,
    /// `c x`
    Constant(f64),
}

impl DensityModel {
    /// Smallest admissible checkpoint.
    pub fn min_x(self) -> u64 {
        match self {
            DensityModel::PrimeNumberTheorem | DensityModel::LogIntegral => 2,
            DensityModel::Semiprime => 16,
            DensityModel::Constant(_) => 1,
        }
    }

    pub fn eval(self, x: u64) -> Result<f64> {
        if x < self.min_x() {
            return Err(Error::invalid(format!(
                "model {self} is not evaluated below x = {}",
                self.min_x()
            )));
        }
        let xf = x as f64;
        Ok(match self {
            DensityModel::PrimeNumberTheorem => xf / xf.ln(),
            DensityModel::LogIntegral => li(xf)?,
            DensityModel::Semiprime => xf * xf.ln().ln() / xf.ln(),
            DensityModel::Constant(c) => c * xf,
        })
    }
}

impl fmt::Display for DensityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityModel::PrimeNumberTheorem => f.write_str("pnt"),
            DensityModel::LogIntegral => f.write_str("li"),
            DensityModel::Semiprime => f.write_str("semiprime"),
            DensityModel::Constant(c) => write!(f, "const:{c}"),
        }
    }
}

impl FromStr for DensityModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pnt" => Ok(DensityModel::PrimeNumberTheorem),
            "li" => Ok(DensityModel::LogIntegral),
            "semiprime" => Ok(DensityModel::Semiprime),
            _ => s
                .strip_prefix("const:")
                .and_then(|c| c.parse::<f64>().ok())
                .filter(|c| c.is_finite())
                .map(DensityModel::Constant)
                .ok_or_else(|| Error::invalid(format!("unknown model {s:?}"))),
        }
    }
}

/// What is being counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DensityTarget {
    /// Windows matching a word, counted by where they end.
    Word(Word),
    Shape(PlanarShape),
    Canonical(CanonicalShape),
    /// Integers whose root children are all leaves, 1 included.
    Squarefree,
}

impl fmt::Display for DensityTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityTarget::Word(w) => write!(f, "word:{w}"),
            DensityTarget::Shape(s) => write!(f, "shape:{s}"),
            DensityTarget::Canonical(c) => write!(f, "unordered:{c}"),
            DensityTarget::Squarefree => f.write_str("squarefree"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checkpoint {
    pub x: u64,
    pub count: u64,
    pub model_value: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub target: DensityTarget,
    pub model: DensityModel,
    pub checkpoints: Vec<Checkpoint>,
}

pub fn count_matches(
    target: &DensityTarget,
    bound: u64,
    checkpoints: &[u64],
    model: DensityModel,
) -> Result<DensityReport> {
    count_matches_with(target, bound, checkpoints, model, &ScanConfig::default())
}

pub fn count_matches_with(
    target: &DensityTarget,
    bound: u64,
    checkpoints: &[u64],
    model: DensityModel,
    cfg: &ScanConfig,
) -> Result<DensityReport> {
    let Some(&last) = checkpoints.last() else {
        return Err(Error::invalid("at least one checkpoint is required"));
    };
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("checkpoints must be strictly increasing"));
    }
    if last > bound {
        return Err(Error::invalid(format!(
            "checkpoint {last} exceeds the bound {bound}"
        )));
    }
    if checkpoints[0] < model.min_x() {
        return Err(Error::invalid(format!(
            "checkpoint {} is below the smallest x = {} accepted by model {model}",
            checkpoints[0],
            model.min_x()
        )));
    }

    let counts = match target {
        DensityTarget::Word(word) => {
            let positions = observable::match_positions(std::slice::from_ref(word), last, cfg)?
                .pop()
                .unwrap_or_default();
            let span = word.len() as u64 - 1;
            // positions are increasing, so their end points are too
            checkpoints
                .iter()
                .map(|&x| positions.partition_point(|&p| p + span <= x) as u64)
                .collect()
        }
        DensityTarget::Shape(s) => match ShapeKey::of_shape(s) {
            Some(want) => count_keys(last, checkpoints, cfg, |k| k == want)?,
            None => vec![0; checkpoints.len()],
        },
        DensityTarget::Canonical(c) => match CanonicalKey::of_shape(c) {
            Some(want) => count_keys(last, checkpoints, cfg, |k| k.canonical() == want)?,
            None => vec![0; checkpoints.len()],
        },
        DensityTarget::Squarefree => count_keys(last, checkpoints, cfg, ShapeKey::is_bush)?,
    };

    let checkpoints = checkpoints
        .iter()
        .zip(counts)
        .map(|(&x, count)| {
            let model_value = model.eval(x)?;
            Ok(Checkpoint {
                x,
                count,
                model_value,
                ratio: count as f64 / model_value,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DensityReport {
        target: target.clone(),
        model,
        checkpoints,
    })
}

/// Number of `n <= x` satisfying `pred`, for each checkpoint `x`, in one pass.
fn count_keys(
    last: u64,
    checkpoints: &[u64],
    cfg: &ScanConfig,
    pred: impl Fn(ShapeKey) -> bool + Sync,
) -> Result<Vec<u64>> {
    let per_chunk = map_chunks(1, last, cfg, |a, b| {
        let mut counts = vec![0u64; checkpoints.len()];
        let mut next = checkpoints.partition_point(|&x| x < a);
        let mut running = 0u64;
        for (n, key) in KeyScan::new(a, b, cfg.segment_size)? {
            if pred(key) {
                running += 1;
            }
            while next < checkpoints.len() && checkpoints[next] == n {
                counts[next] = running;
                next += 1;
            }
        }
        for c in &mut counts[next..] {
            *c = running;
        }
        Ok(counts)
    })?;
    let mut total = vec![0u64; checkpoints.len()];
    for chunk in per_chunk {
        for (t, c) in total.iter_mut().zip(chunk) {
            *t += c;
        }
    }
    Ok(total)
}

/// Spacing between consecutive occurrences of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub word: Word,
    pub bound: u64,
    pub occurrences: usize,
    /// Zero when there are fewer than two occurrences.
    pub max_gap: u64,
    pub gap_histogram: BTreeMap<u64, u64>,
}

pub fn gap_stats(word: &Word, bound: u64) -> Result<GapReport> {
    gap_stats_with(word, bound, &ScanConfig::default())
}

pub fn gap_stats_with(word: &Word, bound: u64, cfg: &ScanConfig) -> Result<GapReport> {
    let report = observable::occurrences_with(word, bound, None, cfg)?;
    let mut gap_histogram = BTreeMap::new();
    for &g in &report.gaps {
        *gap_histogram.entry(g).or_insert(0) += 1;
    }
    Ok(GapReport {
        word: word.clone(),
        bound,
        occurrences: report.positions.len(),
        max_gap: report.gaps.iter().copied().max().unwrap_or(0),
        gap_histogram,
    })
}
