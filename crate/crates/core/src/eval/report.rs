// SPDX-License-Identifier: Apache-2.0

//! Corpus-level aggregation of per-record judgments.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::judge::{judge_record, JudgeConfig, Judgment, Outcome};
use super::records::{AnnotationRecord, PredictionRecord};
use crate::error::{Error, Result};
use crate::time::ParsedAnswer;

fn two_places<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64((x * 100.0).round() / 100.0)
}

/// Integer sums over a set of outcomes. Merging is associative and
/// commutative, so any reduction order gives the same report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub n: u64,
    pub hour_ok: u64,
    pub minute_ok: u64,
    pub full_ok: u64,
    pub dist: u64,
    pub minute_comp: u64,
    pub hour_comp: u64,
}

impl Tally {
    pub fn add(&mut self, o: &Outcome) {
        self.n += 1;
        self.hour_ok += o.hour_ok as u64;
        self.minute_ok += o.minute_ok as u64;
        self.full_ok += o.full_ok as u64;
        self.dist += o.dist as u64;
        self.minute_comp += o.minute_comp as u64;
        self.hour_comp += o.hour_comp as u64;
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.n += other.n;
        self.hour_ok += other.hour_ok;
        self.minute_ok += other.minute_ok;
        self.full_ok += other.full_ok;
        self.dist += other.dist;
        self.minute_comp += other.minute_comp;
        self.hour_comp += other.hour_comp;
        self
    }

    pub fn metrics(&self) -> ModeMetrics {
        let n = self.n.max(1) as f64;
        let pct = |k: u64| 100.0 * k as f64 / n;
        let mean = |k: u64| k as f64 / n;
        ModeMetrics {
            hour_acc: pct(self.hour_ok),
            minute_acc: pct(self.minute_ok),
            full_acc: pct(self.full_ok),
            mae_hour: mean(self.hour_comp),
            mae_minute: mean(self.minute_comp),
            mae_total: mean(self.dist),
        }
    }
}

/// Accuracies in percent; MAEs in hours, minutes and minutes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModeMetrics {
    #[serde(serialize_with = "two_places")]
    pub hour_acc: f64,
    #[serde(serialize_with = "two_places")]
    pub minute_acc: f64,
    #[serde(serialize_with = "two_places")]
    pub full_acc: f64,
    #[serde(serialize_with = "two_places")]
    pub mae_hour: f64,
    #[serde(serialize_with = "two_places")]
    pub mae_minute: f64,
    #[serde(serialize_with = "two_places")]
    pub mae_total: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SubReport {
    pub n_records: u64,
    pub baseline: ModeMetrics,
    pub swap: ModeMetrics,
    /// S minus B full-time accuracy, in percentage points.
    #[serde(serialize_with = "two_places")]
    pub delta_full: f64,
}

#[derive(Clone, Copy, Debug, Default)]
struct PairTally {
    baseline: Tally,
    swap: Tally,
}

impl PairTally {
    fn add(&mut self, j: &Judgment) {
        self.baseline.add(&j.baseline);
        self.swap.add(&j.swap);
    }

    fn report(&self) -> SubReport {
        let baseline = self.baseline.metrics();
        let swap = self.swap.metrics();
        SubReport {
            n_records: self.baseline.n,
            baseline,
            swap,
            delta_full: swap.full_acc - baseline.full_acc,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricsReport {
    pub config: JudgeConfig,
    pub n_records: u64,
    /// Answers that parsed to neither a time nor NO CLOCK.
    pub n_unparseable: u64,
    pub n_no_clock: u64,
    /// Annotations without a prediction, scored worst-case.
    pub n_missing: u64,
    pub missing_ids: Vec<String>,
    pub baseline: ModeMetrics,
    pub swap: ModeMetrics,
    #[serde(serialize_with = "two_places")]
    pub delta_hour: f64,
    #[serde(serialize_with = "two_places")]
    pub delta_minute: f64,
    #[serde(serialize_with = "two_places")]
    pub delta_full: f64,
    /// dimension -> label -> metrics over the records carrying that label.
    pub breakdowns: BTreeMap<String, BTreeMap<String, SubReport>>,
}

/// One annotation, its answer (if any) and the resulting judgment.
#[derive(Clone, Debug, PartialEq)]
pub struct JudgedRecord {
    pub annotation: AnnotationRecord,
    pub answer: Option<ParsedAnswer>,
    pub judgment: Judgment,
}

/// Joins predictions onto annotations and judges every annotation. The
/// result is sorted by annotation id, whatever the input order.
pub fn judge_corpus(
    annotations: &[AnnotationRecord],
    predictions: &[PredictionRecord],
    cfg: &JudgeConfig,
) -> Result<Vec<JudgedRecord>> {
    let by_id = join_predictions(annotations, predictions)?;
    let mut sorted: Vec<&AnnotationRecord> = annotations.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let missing = ParsedAnswer::Unparseable(String::new());
    Ok(sorted
        .par_iter()
        .map(|a| {
            let answer = by_id.get(a.id.as_str()).map(|p| p.parsed.clone());
            let judgment = judge_record(a.truth, answer.as_ref().unwrap_or(&missing), cfg);
            JudgedRecord {
                annotation: (*a).clone(),
                answer,
                judgment,
            }
        })
        .collect())
}

/// Validates the join: annotation ids unique, prediction ids unique and each
/// matching an annotation.
pub fn join_predictions<'a>(
    annotations: &[AnnotationRecord],
    predictions: &'a [PredictionRecord],
) -> Result<HashMap<&'a str, &'a PredictionRecord>> {
    let mut known = HashMap::with_capacity(annotations.len());
    for a in annotations {
        if known.insert(a.id.as_str(), ()).is_some() {
            return Err(Error::DuplicateAnnotation(a.id.clone()));
        }
    }
    let mut by_id = HashMap::with_capacity(predictions.len());
    for p in predictions {
        if !known.contains_key(p.id.as_str()) {
            return Err(Error::UnknownPrediction(p.id.clone()));
        }
        if by_id.insert(p.id.as_str(), p).is_some() {
            return Err(Error::DuplicatePrediction(p.id.clone()));
        }
    }
    Ok(by_id)
}

pub fn aggregate(
    annotations: &[AnnotationRecord],
    predictions: &[PredictionRecord],
    cfg: &JudgeConfig,
) -> Result<MetricsReport> {
    let judged = judge_corpus(annotations, predictions, cfg)?;
    Ok(report_from_judged(&judged, cfg))
}

pub fn report_from_judged(judged: &[JudgedRecord], cfg: &JudgeConfig) -> MetricsReport {
    let mut overall = PairTally::default();
    let mut dims: BTreeMap<&'static str, BTreeMap<&'static str, PairTally>> = BTreeMap::new();
    let (mut n_unparseable, mut n_no_clock) = (0, 0);
    let mut missing_ids = Vec::new();

    for r in judged {
        let j = &r.judgment;
        overall.add(j);
        match &r.answer {
            None => missing_ids.push(r.annotation.id.clone()),
            Some(ParsedAnswer::Unparseable(_)) => n_unparseable += 1,
            Some(ParsedAnswer::NoClock) => n_no_clock += 1,
            Some(ParsedAnswer::Time(_)) => {}
        }
        let a = &r.annotation;
        let mut bump = |dim: &'static str, label: &'static str| {
            dims.entry(dim)
                .or_default()
                .entry(label)
                .or_default()
                .add(j);
        };
        bump("clock_type", a.clock_type.label());
        bump("environment", a.environment.label());
        bump("transformation", a.transformation.label());
        for d in &a.design {
            bump("design", d.label());
        }
    }
    missing_ids.sort();

    let top = overall.report();
    MetricsReport {
        config: *cfg,
        n_records: top.n_records,
        n_unparseable,
        n_no_clock,
        n_missing: missing_ids.len() as u64,
        missing_ids,
        baseline: top.baseline,
        swap: top.swap,
        delta_hour: top.swap.hour_acc - top.baseline.hour_acc,
        delta_minute: top.swap.minute_acc - top.baseline.minute_acc,
        delta_full: top.delta_full,
        breakdowns: dims
            .into_iter()
            .map(|(dim, labels)| {
                let labels = labels
                    .into_iter()
                    .map(|(label, t)| (label.to_string(), t.report()))
                    .collect();
                (dim.to_string(), labels)
            })
            .collect(),
    }
}

/// Per-category breakdown as a CSV table, percentages and MAEs to two places.
pub fn breakdown_csv(report: &MetricsReport) -> String {
    let mut out = String::from(
        "dimension,label,n_records,\
         hour_acc_b,minute_acc_b,full_acc_b,mae_hour_b,mae_minute_b,mae_total_b,\
         hour_acc_s,minute_acc_s,full_acc_s,mae_hour_s,mae_minute_s,mae_total_s,delta_full\n",
    );
    let cells = |m: &ModeMetrics| {
        format!(
            "{:.2},{:.2},{:.2},{:.2},{:.2},{:.2}",
            m.hour_acc, m.minute_acc, m.full_acc, m.mae_hour, m.mae_minute, m.mae_total
        )
    };
    for (dim, labels) in &report.breakdowns {
        for (label, sub) in labels {
            out.push_str(&format!(
                "{dim},{label},{},{},{},{:.2}\n",
                sub.n_records,
                cells(&sub.baseline),
                cells(&sub.swap),
                sub.delta_full
            ));
        }
    }
    out
}
