// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::stats::{compute_stats, DistributionStats};
use crate::error::{Error, Result};
use crate::keyed::stable_hash;
use crate::time::ClockTime;

pub const DEFAULT_CAP_MULTIPLIER: f64 = 3.0;

/// Per-cell limit used by [`rebalance`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapRule {
    /// `max(floor(k * median of the nonzero cell counts), 1)`.
    MedianMultiple(f64),
    Fixed(u64),
}

impl Default for CapRule {
    fn default() -> Self {
        CapRule::MedianMultiple(DEFAULT_CAP_MULTIPLIER)
    }
}

impl CapRule {
    pub fn cap(self, stats: &DistributionStats) -> Result<u64> {
        match self {
            CapRule::Fixed(0) => Err(Error::out_of_range("cap", "a fixed cap must be at least 1")),
            CapRule::Fixed(c) => Ok(c),
            CapRule::MedianMultiple(k) => {
                if !(k.is_finite() && k > 0.0) {
                    return Err(Error::out_of_range(
                        "cap multiplier",
                        format!("{k} must be positive"),
                    ));
                }
                let mut nz: Vec<u64> = stats
                    .cell_counts
                    .iter()
                    .flatten()
                    .copied()
                    .filter(|&c| c > 0)
                    .collect();
                nz.sort_unstable();
                let mid = nz.len() / 2;
                let median = if nz.len() % 2 == 1 {
                    nz[mid] as f64
                } else {
                    (nz[mid - 1] + nz[mid]) as f64 / 2.0
                };
                Ok(((k * median).floor() as u64).max(1))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rebalanced {
    /// Indices into the input, ascending.
    pub kept: Vec<usize>,
    pub cap: u64,
    pub before: DistributionStats,
    pub after: DistributionStats,
}

/// Caps every time cell at the rule's limit. Inside an over-full cell the
/// records with the smallest [`stable_hash`] of their id survive (ties by id),
/// so the kept set does not depend on input order.
pub fn rebalance(records: &[(&str, ClockTime)], rule: CapRule) -> Result<Rebalanced> {
    let before = compute_stats(records.iter().map(|r| r.1))?;
    let cap = rule.cap(&before)?;
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); 720];
    for (i, (_, t)) in records.iter().enumerate() {
        cells[t.index() as usize].push(i);
    }
    let mut kept = Vec::with_capacity(records.len());
    for mut members in cells {
        if members.len() as u64 > cap {
            members.sort_by_key(|&i| (stable_hash(records[i].0), records[i].0));
            members.truncate(cap as usize);
        }
        kept.extend(members);
    }
    kept.sort_unstable();
    let after = compute_stats(kept.iter().map(|&i| records[i].1))?;
    Ok(Rebalanced {
        kept,
        cap,
        before,
        after,
    })
}
