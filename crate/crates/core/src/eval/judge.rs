// SPDX-License-Identifier: Apache-2.0

//! Per-record scoring under the baseline (B) and swap-equivalence (S)
//! settings.

use serde::{Deserialize, Serialize};

use crate::time::{swap_hands, ClockTime, DistanceKernel, ParsedAnswer};

/// Default minute tolerance for minute and full-time correctness.
pub const DEFAULT_MINUTE_TOLERANCE: u32 = 2;

/// How S combines the truth and its hand-swapped reading.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SwapMode {
    /// Each metric takes its own best of the two targets.
    #[default]
    PerMetric,
    /// One target is chosen per record and every S metric uses it.
    WholeRecord,
}

/// What "full time correct" requires of the minute field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FullTimeRule {
    /// Exact hour and minute within the tolerance.
    #[default]
    Tolerant,
    /// Exact hour and exact minute.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default)]
pub struct JudgeConfig {
    pub minute_tolerance: u32,
    pub swap_mode: SwapMode,
    pub full_time_rule: FullTimeRule,
    pub kernel: DistanceKernel,
}

impl Default for JudgeConfig {
    fn default() -> Self {
        Self {
            minute_tolerance: DEFAULT_MINUTE_TOLERANCE,
            swap_mode: SwapMode::default(),
            full_time_rule: FullTimeRule::default(),
            kernel: DistanceKernel::default(),
        }
    }
}

/// Scores of one prediction against one target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub hour_ok: bool,
    pub minute_ok: bool,
    pub full_ok: bool,
    /// Total distance in minutes.
    pub dist: u32,
    pub minute_comp: u32,
    pub hour_comp: u32,
}

impl Outcome {
    fn against(target: ClockTime, pred: ClockTime, cfg: &JudgeConfig) -> Self {
        let minute_comp = cfg.kernel.minute_component(pred, target);
        let hour_ok = pred.hour() == target.hour();
        // Tolerance is always measured on the wrapping minute cycle, so
        // 12:59 vs 01:01 is within +-2 whatever the reporting kernel is.
        let minute_ok =
            DistanceKernel::Circular.minute_component(pred, target) <= cfg.minute_tolerance;
        let full_ok = hour_ok
            && match cfg.full_time_rule {
                FullTimeRule::Tolerant => minute_ok,
                FullTimeRule::Exact => pred.minute() == target.minute(),
            };
        Self {
            hour_ok,
            minute_ok,
            full_ok,
            dist: cfg.kernel.total(pred, target),
            minute_comp,
            hour_comp: cfg.kernel.hour_component(pred, target),
        }
    }

    /// Score for a missing, unparseable or NO CLOCK answer.
    pub fn worst(kernel: DistanceKernel) -> Self {
        Self {
            hour_ok: false,
            minute_ok: false,
            full_ok: false,
            dist: kernel.max_total(),
            minute_comp: kernel.max_minute(),
            hour_comp: kernel.max_hour(),
        }
    }

    fn best_of(a: Self, b: Self) -> Self {
        Self {
            hour_ok: a.hour_ok || b.hour_ok,
            minute_ok: a.minute_ok || b.minute_ok,
            full_ok: a.full_ok || b.full_ok,
            dist: a.dist.min(b.dist),
            minute_comp: a.minute_comp.min(b.minute_comp),
            hour_comp: a.hour_comp.min(b.hour_comp),
        }
    }
}

/// B and S outcomes for one record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Judgment {
    pub baseline: Outcome,
    pub swap: Outcome,
}

pub fn judge_record(truth: ClockTime, pred: &ParsedAnswer, cfg: &JudgeConfig) -> Judgment {
    let Some(pred) = pred.time() else {
        let worst = Outcome::worst(cfg.kernel);
        return Judgment {
            baseline: worst,
            swap: worst,
        };
    };
    let baseline = Outcome::against(truth, pred, cfg);
    let swapped = Outcome::against(swap_hands(truth), pred, cfg);
    let swap = match cfg.swap_mode {
        SwapMode::PerMetric => Outcome::best_of(baseline, swapped),
        SwapMode::WholeRecord => {
            let prefer_swap = if baseline.full_ok != swapped.full_ok {
                swapped.full_ok
            } else {
                swapped.dist < baseline.dist
            };
            if prefer_swap {
                swapped
            } else {
                baseline
            }
        }
    };
    Judgment { baseline, swap }
}
