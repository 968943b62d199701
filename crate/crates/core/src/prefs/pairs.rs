// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{join_predictions, AnnotationRecord, PredictionRecord, DEFAULT_MINUTE_TOLERANCE};
use crate::keyed::keyed_rng;
use crate::time::{
    circular_distance_minutes, circular_minute_component, format_time, hands_from_time,
    parse_answer, swap_hands, time_from_hands, ClockTime, ParseMode, ParsedAnswer,
};

/// Pairs closer than this many minutes (inclusive) carry no useful signal.
pub const MIN_PAIR_DISTANCE: u32 = 5;

/// `(x, y_w, y_l)`: image, preferred answer, dispreferred answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferencePair {
    pub image_path: String,
    pub chosen: ClockTime,
    pub rejected: ClockTime,
}

/// Where the rejected answer comes from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMode {
    /// The model's own answer when wrong, the hand-swapped truth when right.
    #[default]
    Hybrid,
    /// A uniformly drawn time more than five minutes from the truth.
    Random,
    /// The hand-swapped truth, always.
    PureSwap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DropReason {
    /// No prediction for the record.
    Missing,
    /// The model answer was needed but is not a time.
    Unparseable,
    Format,
    Distinctness,
    GeometricPlausibility,
    TemporalDistance,
}

impl DropReason {
    pub fn as_str(self) -> &'static str {
        match self {
            DropReason::Missing => "missing",
            DropReason::Unparseable => "unparseable",
            DropReason::Format => "format",
            DropReason::Distinctness => "distinctness",
            DropReason::GeometricPlausibility => "geometric_plausibility",
            DropReason::TemporalDistance => "temporal_distance",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    Pair(PreferencePair),
    Dropped(DropReason),
}

/// Exact hour and minute within `minute_tolerance` on the wrapping cycle.
pub fn is_correct_within(pred: &ParsedAnswer, truth: ClockTime, minute_tolerance: u32) -> bool {
    pred.time().is_some_and(|p| {
        p.hour() == truth.hour() && circular_minute_component(p, truth) <= minute_tolerance
    })
}

pub fn is_correct(pred: &ParsedAnswer, truth: ClockTime) -> bool {
    is_correct_within(pred, truth, DEFAULT_MINUTE_TOLERANCE)
}

/// Runs the four pair checks in order; the first failure is returned.
///
/// 1. format: both render to `HH:MM` text that parses back to themselves;
/// 2. distinctness: chosen differs from rejected;
/// 3. geometric plausibility: the rejected time's hand angles invert back to
///    exactly that time;
/// 4. temporal distance: more than five minutes apart on the dial.
pub fn validate_pair(chosen: ClockTime, rejected: ClockTime) -> Result<(), DropReason> {
    let well_formed =
        |t: ClockTime| parse_answer(&format_time(t), ParseMode::Strict) == ParsedAnswer::Time(t);
    if !well_formed(chosen) || !well_formed(rejected) {
        return Err(DropReason::Format);
    }
    if chosen == rejected {
        return Err(DropReason::Distinctness);
    }
    if time_from_hands(hands_from_time(rejected)) != Some(rejected) {
        return Err(DropReason::GeometricPlausibility);
    }
    if circular_distance_minutes(chosen, rejected) <= MIN_PAIR_DISTANCE {
        return Err(DropReason::TemporalDistance);
    }
    Ok(())
}

fn check_image_path(path: &str) -> Result<()> {
    let b = path.as_bytes();
    let absolute = path.starts_with('/')
        || path.starts_with('\\')
        || (b.len() >= 2 && b[0].is_ascii_alphabetic() && b[1] == b':');
    if path.trim().is_empty() || absolute {
        return Err(Error::InvalidImagePath(path.to_string()));
    }
    Ok(())
}

/// A uniform draw from the times more than [`MIN_PAIR_DISTANCE`] minutes
/// from `truth`, keyed on `(seed, key)`.
pub fn random_rejected(truth: ClockTime, seed: u64, key: &str) -> ClockTime {
    let allowed = || {
        ClockTime::all().filter(move |&t| circular_distance_minutes(t, truth) > MIN_PAIR_DISTANCE)
    };
    let k = keyed_rng(seed, key).random_range(0..allowed().count());
    allowed().nth(k).expect("index within allowed set")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default)]
pub struct ForgeConfig {
    pub mode: PairMode,
    pub seed: u64,
    /// Tolerance of the correctness test deciding the hybrid branch.
    pub minute_tolerance: u32,
}

impl Default for ForgeConfig {
    fn default() -> Self {
        Self {
            mode: PairMode::Hybrid,
            seed: 0,
            minute_tolerance: DEFAULT_MINUTE_TOLERANCE,
        }
    }
}

pub fn make_pair(
    truth: ClockTime,
    pred: &ParsedAnswer,
    image_path: &str,
    cfg: &ForgeConfig,
) -> Result<PairOutcome> {
    check_image_path(image_path)?;
    let rejected = match cfg.mode {
        PairMode::PureSwap => swap_hands(truth),
        PairMode::Random => random_rejected(truth, cfg.seed, image_path),
        PairMode::Hybrid if is_correct_within(pred, truth, cfg.minute_tolerance) => {
            swap_hands(truth)
        }
        PairMode::Hybrid => match pred.time() {
            Some(t) => t,
            None => return Ok(PairOutcome::Dropped(DropReason::Unparseable)),
        },
    };
    Ok(match validate_pair(truth, rejected) {
        Ok(()) => PairOutcome::Pair(PreferencePair {
            image_path: image_path.to_string(),
            chosen: truth,
            rejected,
        }),
        Err(reason) => PairOutcome::Dropped(reason),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DroppedRecord {
    pub id: String,
    pub image_path: String,
    pub reason: DropReason,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RetentionReport {
    pub config: ForgeConfig,
    pub n_in: usize,
    pub n_out: usize,
    pub retention_pct: f64,
    pub drops_by_reason: BTreeMap<String, usize>,
    pub dropped: Vec<DroppedRecord>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Forged {
    pub pairs: Vec<PreferencePair>,
    pub report: RetentionReport,
}

/// Builds one pair per annotation. Output follows annotation order, and is
/// the same for any thread count.
pub fn forge_dataset(
    annotations: &[AnnotationRecord],
    predictions: &[PredictionRecord],
    cfg: &ForgeConfig,
) -> Result<Forged> {
    let by_id: HashMap<&str, &PredictionRecord> = join_predictions(annotations, predictions)?;
    let outcomes: Vec<PairOutcome> = annotations
        .par_iter()
        .map(|a| match by_id.get(a.id.as_str()) {
            None => Ok(PairOutcome::Dropped(DropReason::Missing)),
            Some(p) => make_pair(a.truth, &p.parsed, &a.image_path, cfg),
        })
        .collect::<Result<_>>()?;

    let mut pairs = Vec::new();
    let mut dropped = Vec::new();
    let mut drops_by_reason = BTreeMap::new();
    for (a, outcome) in annotations.iter().zip(outcomes) {
        match outcome {
            PairOutcome::Pair(p) => pairs.push(p),
            PairOutcome::Dropped(reason) => {
                *drops_by_reason
                    .entry(reason.as_str().to_string())
                    .or_insert(0) += 1;
                dropped.push(DroppedRecord {
                    id: a.id.clone(),
                    image_path: a.image_path.clone(),
                    reason,
                });
            }
        }
    }
    let n_in = annotations.len();
    let n_out = pairs.len();
    let report = RetentionReport {
        config: *cfg,
        n_in,
        n_out,
        retention_pct: if n_in == 0 {
            0.0
        } else {
            100.0 * n_out as f64 / n_in as f64
        },
        drops_by_reason,
        dropped,
    };
    Ok(Forged { pairs, report })
}
