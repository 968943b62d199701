// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::time::ClockTime;

/// Label counts over the 12x60 grid of clock times. Row `h` is the internal
/// hour (0 shows as 12), column `m` the minute.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionStats {
    pub n: u64,
    pub cell_counts: Vec<Vec<u64>>,
    pub hour_marginal: Vec<u64>,
    pub minute_marginal: Vec<u64>,
    /// `100 * population std / mean` of the hour marginal.
    pub hour_cv: f64,
    /// `ln(1 + count)` per cell.
    pub heat_values: Vec<Vec<f64>>,
    /// Display hours (1..=12) with the fewest and most labels; ties go to
    /// the earlier display hour.
    pub argmin_hour: u32,
    pub min_hour_count: u64,
    pub argmax_hour: u32,
    pub max_hour_count: u64,
}

fn display(h: usize) -> u32 {
    if h == 0 {
        12
    } else {
        h as u32
    }
}

pub fn compute_stats(times: impl IntoIterator<Item = ClockTime>) -> Result<DistributionStats> {
    let mut cells = vec![vec![0u64; 60]; 12];
    for t in times {
        cells[t.hour() as usize][t.minute() as usize] += 1;
    }
    from_counts(cells)
}

impl DistributionStats {
    pub fn from_counts(cells: Vec<Vec<u64>>) -> Result<Self> {
        from_counts(cells)
    }

    pub fn count(&self, t: ClockTime) -> u64 {
        self.cell_counts[t.hour() as usize][t.minute() as usize]
    }

    /// Rows ordered 12, 1, ..., 11 with the display hour first, then one
    /// column per minute.
    pub fn counts_csv(&self) -> String {
        grid_csv(&self.cell_counts, |v| v.to_string())
    }

    pub fn heat_csv(&self) -> String {
        grid_csv(&self.heat_values, |v| format!("{v:.6}"))
    }

    pub fn hour_marginal_csv(&self) -> String {
        let mut out = String::from("hour,count\n");
        for (h, c) in self.hour_marginal.iter().enumerate() {
            out.push_str(&format!("{},{c}\n", display(h)));
        }
        out
    }

    pub fn minute_marginal_csv(&self) -> String {
        let mut out = String::from("minute,count\n");
        for (m, c) in self.minute_marginal.iter().enumerate() {
            out.push_str(&format!("{m},{c}\n"));
        }
        out
    }
}

fn grid_csv<T>(grid: &[Vec<T>], fmt: impl Fn(&T) -> String) -> String {
    let mut out = String::from("hour");
    for m in 0..60 {
        out.push_str(&format!(",m{m:02}"));
    }
    out.push('\n');
    for (h, row) in grid.iter().enumerate() {
        out.push_str(&display(h).to_string());
        for v in row {
            out.push(',');
            out.push_str(&fmt(v));
        }
        out.push('\n');
    }
    out
}

fn from_counts(cells: Vec<Vec<u64>>) -> Result<DistributionStats> {
    if cells.len() != 12 || cells.iter().any(|r| r.len() != 60) {
        return Err(Error::out_of_range("cell_counts", "expected a 12x60 grid"));
    }
    let hour_marginal: Vec<u64> = cells.iter().map(|r| r.iter().sum()).collect();
    let n: u64 = hour_marginal.iter().sum();
    if n == 0 {
        return Err(Error::EmptyInput("temporal statistics"));
    }
    let minute_marginal: Vec<u64> = (0..60).map(|m| cells.iter().map(|r| r[m]).sum()).collect();
    let mean = n as f64 / 12.0;
    let var = hour_marginal
        .iter()
        .map(|&c| (c as f64 - mean).powi(2))
        .sum::<f64>()
        / 12.0;
    let heat_values = cells
        .iter()
        .map(|r| r.iter().map(|&c| (c as f64).ln_1p()).collect())
        .collect();

    let display_order = (1..12).chain(std::iter::once(0));
    let (mut lo, mut hi) = (1usize, 1usize);
    for h in display_order {
        if hour_marginal[h] < hour_marginal[lo] {
            lo = h;
        }
        if hour_marginal[h] > hour_marginal[hi] {
            hi = h;
        }
    }
    Ok(DistributionStats {
        n,
        hour_cv: 100.0 * var.sqrt() / mean,
        argmin_hour: display(lo),
        min_hour_count: hour_marginal[lo],
        argmax_hour: display(hi),
        max_hour_count: hour_marginal[hi],
        cell_counts: cells,
        hour_marginal,
        minute_marginal,
        heat_values,
    })
}
