// SPDX-License-Identifier: Apache-2.0

//! Distribution of baseline errors, as plot-ready tables.

use serde::Serialize;

use super::judge::Judgment;
use crate::error::{Error, Result};

pub const DEFAULT_BIN_WIDTH: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Bin {
    pub start: u32,
    /// Exclusive, except for the last bin which also holds `max`.
    pub end: u32,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorProfile {
    pub bin_width: u32,
    pub max: u32,
    pub n: u64,
    pub bins: Vec<Bin>,
    /// `cdf[k]` is the fraction of distances `<= k`, for `k` in `0..=max`.
    pub cdf: Vec<f64>,
}

impl ErrorProfile {
    pub fn cdf_at(&self, threshold: u32) -> f64 {
        self.cdf[threshold.min(self.max) as usize]
    }

    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("bin_start,bin_end,count,fraction\n");
        for b in &self.bins {
            out.push_str(&format!(
                "{},{},{},{:.6}\n",
                b.start,
                b.end,
                b.count,
                b.count as f64 / self.n as f64
            ));
        }
        out
    }

    pub fn cdf_csv(&self) -> String {
        let mut out = String::from("threshold,cdf\n");
        for (k, p) in self.cdf.iter().enumerate() {
            out.push_str(&format!("{k},{p:.6}\n"));
        }
        out
    }
}

/// Histogram and empirical CDF of the baseline total distances.
pub fn emit_error_profile(
    judgments: &[Judgment],
    bin_width: u32,
    max: u32,
) -> Result<ErrorProfile> {
    let distances: Vec<u32> = judgments.iter().map(|j| j.baseline.dist).collect();
    profile_of_distances(&distances, bin_width, max)
}

pub fn profile_of_distances(distances: &[u32], bin_width: u32, max: u32) -> Result<ErrorProfile> {
    if distances.is_empty() {
        return Err(Error::EmptyInput("error profile"));
    }
    if bin_width == 0 || max == 0 {
        return Err(Error::out_of_range("bin width", "must be positive"));
    }
    let mut counts = vec![0u64; max as usize + 1];
    for &d in distances {
        if d > max {
            return Err(Error::out_of_range(
                "distance",
                format!("{d} exceeds the kernel maximum {max}"),
            ));
        }
        counts[d as usize] += 1;
    }

    let n_bins = max.div_ceil(bin_width);
    let bins = (0..n_bins)
        .map(|i| {
            let start = i * bin_width;
            let end = (start + bin_width).min(max);
            let hi = if i + 1 == n_bins { max } else { end - 1 };
            Bin {
                start,
                end,
                count: counts[start as usize..=hi as usize].iter().sum(),
            }
        })
        .collect();

    let n = distances.len() as u64;
    let mut running = 0u64;
    let cdf = counts
        .iter()
        .map(|c| {
            running += c;
            running as f64 / n as f64
        })
        .collect();
    Ok(ErrorProfile {
        bin_width,
        max,
        n,
        bins,
        cdf,
    })
}
