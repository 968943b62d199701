// SPDX-License-Identifier: Apache-2.0

//! Scores a tiny hand-written prediction set under the baseline and the
//! swap-equivalence protocols.
//!
//! `cargo run --example evaluate_predictions`

use handswap::eval::{aggregate, JudgeConfig, PredictionRecord, RawPrediction};
use handswap::{format_time, swap_hands, ParseMode};

fn main() -> handswap::Result<()> {
    let (annotations, _) = handswap::eval::self_test_fixture();
    let annotations: Vec<_> = annotations.into_iter().step_by(60).collect();
    // half read correctly, half with the hands confused, one unreadable
    let predictions: Vec<PredictionRecord> = annotations
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let raw_output = match i % 4 {
                0 | 1 => format_time(a.truth),
                2 => format_time(swap_hands(a.truth)),
                _ if i == 11 => "I cannot tell".into(),
                _ => format_time(swap_hands(a.truth)),
            };
            PredictionRecord::parse(
                RawPrediction {
                    id: a.id.clone(),
                    raw_output,
                },
                ParseMode::Strict,
            )
        })
        .collect();
    let report = aggregate(&annotations, &predictions, &JudgeConfig::default())?;
    for (name, m) in [("B", &report.baseline), ("S", &report.swap)] {
        println!(
            "{name}: full {:.2}% hour {:.2}% minute {:.2}% mae {:.1} min",
            m.full_acc, m.hour_acc, m.minute_acc, m.mae_total
        );
    }
    println!("delta full {:+.2} points", report.delta_full);
    Ok(())
}
