use std::collections::HashMap;

use super::{word_of, Registry, Word};
use crate::avenue::{collect_ids, ScanConfig};
use crate::error::{Error, Result};

/// A wildcard-free word seen exactly once up to the bound whose proper
/// subwords are all seen at least twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Milestone {
    pub word: Word,
    pub position: u64,
    /// Uniqueness follows from the registry rather than from the scan alone.
    pub proved: bool,
}

pub fn milestones(bound: u64, max_len: u64) -> Result<Vec<Milestone>> {
    milestones_with(bound, max_len, &ScanConfig::default())
}

pub fn milestones_with(bound: u64, max_len: u64, cfg: &ScanConfig) -> Result<Vec<Milestone>> {
    if bound < 2 || max_len == 0 {
        return Err(Error::invalid(
            "milestones need bound >= 2 and max_len >= 1",
        ));
    }
    let seq = collect_ids(bound, cfg)?;
    let ids = &seq.ids;
    let max_len = max_len.min(bound) as usize;

    // counts[l - 1] maps each window of length l to (occurrences capped at 2,
    // first start index).
    let mut counts: Vec<HashMap<&[u32], (u8, usize)>> = Vec::with_capacity(max_len);
    let mut found = Vec::new();
    for len in 1..=max_len {
        let mut table: HashMap<&[u32], (u8, usize)> = HashMap::new();
        for (start, win) in ids.windows(len).enumerate() {
            table
                .entry(win)
                .and_modify(|(c, _)| *c = (*c + 1).min(2))
                .or_insert((1, start));
        }
        for (&win, &(c, start)) in &table {
            if c != 1 {
                continue;
            }
            // A unique proper subword would make the prefix or the suffix of
            // length len - 1 unique too, so checking those two suffices.
            let irreducible = len == 1 || {
                let shorter = &counts[len - 2];
                shorter[&win[..len - 1]].0 >= 2 && shorter[&win[1..]].0 >= 2
            };
            if irreducible {
                found.push((start as u64 + 1, len as u64));
            }
        }
        counts.push(table);
    }

    found.sort_unstable();
    let registry = Registry::standard();
    found
        .into_iter()
        .map(|(position, len)| {
            let word = word_of(position, len)?;
            let proved = registry.proves_at_most_once(&word);
            Ok(Milestone {
                word,
                position,
                proved,
            })
        })
        .collect()
}
