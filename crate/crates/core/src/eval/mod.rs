// SPDX-License-Identifier: Apache-2.0

//! Evaluation of clock-reading answers.
//!
//! Every annotation is judged twice: against the ground truth (baseline, B)
//! and against the better of the truth and its hand-swapped reading
//! (swap-equivalence, S). The S minus B gap isolates hand-role confusion.
//! Missing and unparseable answers are scored worst-case, never dropped.

mod judge;
mod profile;
mod records;
mod report;

pub use judge::{
    judge_record, FullTimeRule, JudgeConfig, Judgment, Outcome, SwapMode, DEFAULT_MINUTE_TOLERANCE,
};
pub use profile::{emit_error_profile, profile_of_distances, Bin, ErrorProfile, DEFAULT_BIN_WIDTH};
pub use records::{
    AmPm, AnnotationRecord, ClockType, Design, Environment, PredictionRecord, RawPrediction, Split,
    Transformation,
};
pub use report::{
    aggregate, breakdown_csv, join_predictions, judge_corpus, report_from_judged, JudgedRecord,
    MetricsReport, ModeMetrics, SubReport, Tally,
};

/// Every one of the 720 times once, answered correctly: ids `t000`..`t719`
/// in time order, graphic clocks, predictions in canonical text.
pub fn self_test_fixture() -> (Vec<AnnotationRecord>, Vec<RawPrediction>) {
    crate::time::ClockTime::all()
        .map(|t| {
            let id = format!("t{:03}", t.index());
            let annotation = AnnotationRecord {
                image_path: format!("selftest/{id}.png"),
                id: id.clone(),
                truth: t,
                ampm: None,
                clock_type: ClockType::Graphic,
                environment: Environment::Unknown,
                transformation: Transformation::Normal,
                design: [Design::Arabic].into(),
                source: "selftest".into(),
                split: Split::Test,
            };
            let prediction = RawPrediction {
                id,
                raw_output: crate::time::format_time(t),
            };
            (annotation, prediction)
        })
        .unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::{format_time, swap_hands, ClockTime, ParseMode};

    fn annotation(id: &str, truth: ClockTime) -> AnnotationRecord {
        AnnotationRecord {
            id: id.to_string(),
            image_path: format!("{id}.png"),
            truth,
            ampm: None,
            clock_type: ClockType::Wall,
            environment: Environment::Indoor,
            transformation: Transformation::Normal,
            design: [Design::Arabic].into(),
            source: "test".into(),
            split: Split::Test,
        }
    }

    fn prediction(id: &str, raw: &str) -> PredictionRecord {
        PredictionRecord::parse(
            RawPrediction {
                id: id.into(),
                raw_output: raw.into(),
            },
            ParseMode::Strict,
        )
    }

    #[test]
    fn perfect_predictions() {
        let anns: Vec<_> = ClockTime::all()
            .map(|t| annotation(&t.index().to_string(), t))
            .collect();
        let preds: Vec<_> = anns
            .iter()
            .map(|a| prediction(&a.id, &format_time(a.truth)))
            .collect();
        let r = aggregate(&anns, &preds, &JudgeConfig::default()).unwrap();
        for m in [r.baseline, r.swap] {
            assert_eq!(
                (m.hour_acc, m.minute_acc, m.full_acc),
                (100.0, 100.0, 100.0)
            );
            assert_eq!((m.mae_hour, m.mae_minute, m.mae_total), (0.0, 0.0, 0.0));
        }
        assert_eq!(r.delta_full, 0.0);
        assert_eq!(r.breakdowns["clock_type"]["wall"].n_records, 720);
    }

    #[test]
    fn swapped_predictions_only_count_under_s() {
        // times whose swap is not itself within tolerance of the truth
        // (same hour, minute within 2 on the wrapping cycle, e.g. 11:59 -> 11:00)
        let within_tolerance = |t: ClockTime| {
            let s = swap_hands(t);
            s.hour() == t.hour() && crate::time::circular_minute_component(s, t) <= 2
        };
        assert!(within_tolerance(ClockTime::new(11, 59).unwrap()));
        let anns: Vec<_> = ClockTime::all()
            .filter(|&t| !within_tolerance(t))
            .map(|t| annotation(&t.index().to_string(), t))
            .collect();
        let preds: Vec<_> = anns
            .iter()
            .map(|a| prediction(&a.id, &format_time(swap_hands(a.truth))))
            .collect();
        let r = aggregate(&anns, &preds, &JudgeConfig::default()).unwrap();
        assert_eq!(r.baseline.full_acc, 0.0);
        assert_eq!(r.swap.full_acc, 100.0);
        assert_eq!(r.swap.mae_total, 0.0);
        assert_eq!(r.delta_full, 100.0);
    }

    #[test]
    fn missing_and_no_clock_score_worst_case() {
        let t = ClockTime::new(3, 30).unwrap();
        let anns = vec![annotation("a", t), annotation("b", t), annotation("c", t)];
        let preds = vec![prediction("a", "NO CLOCK"), prediction("b", "three thirty")];
        let r = aggregate(&anns, &preds, &JudgeConfig::default()).unwrap();
        assert_eq!(r.n_missing, 1);
        assert_eq!(r.missing_ids, vec!["c".to_string()]);
        assert_eq!(r.n_no_clock, 1);
        assert_eq!(r.n_unparseable, 1);
        assert_eq!(r.baseline.full_acc, 0.0);
        assert_eq!(r.baseline.mae_total, 360.0);
        assert_eq!(r.swap.mae_minute, 30.0);
        assert_eq!(r.swap.mae_hour, 6.0);
    }

    #[test]
    fn join_errors() {
        let t = ClockTime::new(3, 30).unwrap();
        let anns = vec![annotation("a", t)];
        let dup = vec![prediction("a", "03:30"), prediction("a", "03:31")];
        let err = aggregate(&anns, &dup, &JudgeConfig::default()).unwrap_err();
        assert!(err.to_string().contains("\"a\""), "{err}");
        assert!(matches!(err, crate::Error::DuplicatePrediction(_)));
        let stray = vec![prediction("zz", "03:30")];
        assert!(matches!(
            aggregate(&anns, &stray, &JudgeConfig::default()),
            Err(crate::Error::UnknownPrediction(id)) if id == "zz"
        ));
    }

    #[test]
    fn design_is_multi_label() {
        let t = ClockTime::new(3, 30).unwrap();
        let mut a = annotation("a", t);
        a.design = [Design::Arabic, Design::Roman].into();
        let mut b = annotation("b", t);
        b.design.clear();
        let r = aggregate(
            &[a, b],
            &[prediction("a", "03:30")],
            &JudgeConfig::default(),
        )
        .unwrap();
        let design = &r.breakdowns["design"];
        assert_eq!(design["arabic"].n_records, 1);
        assert_eq!(design["roman"].n_records, 1);
        assert!(!design.contains_key("no_numerals"));
        assert_eq!(design["roman"].baseline.full_acc, 100.0);
        assert_eq!(r.baseline.full_acc, 50.0);
    }

    #[test]
    fn annotation_schema() {
        let line = r#"{"id":"x1","image_path":"img/x1.jpg","truth":"10:10","ampm":"PM","clock_type":"alarm_desk","environment":"unknown","transformation":"partial","design":["roman","no_numerals"],"source":"COCO","split":"test"}"#;
        let a: AnnotationRecord = serde_json::from_str(line).unwrap();
        assert_eq!(a.truth, ClockTime::new(10, 10).unwrap());
        assert_eq!(a.clock_type, ClockType::AlarmDesk);
        assert_eq!(a.ampm, Some(AmPm::Pm));
        assert!(serde_json::from_str::<AnnotationRecord>(&line.replace("10:10", "13:10")).is_err());
        assert!(
            serde_json::from_str::<AnnotationRecord>(&line.replace("test\"}", "val\"}")).is_err()
        );
    }
}
