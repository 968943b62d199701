// SPDX-License-Identifier: Apache-2.0

//! Builds preference pairs from the all-correct fixture and prints what the
//! validation checks dropped.
//!
//! `cargo run --example forge_preferences -- [hybrid|random|pure-swap]`

use handswap::eval::PredictionRecord;
use handswap::prefs::{forge_dataset, ForgeConfig, PairMode};
use handswap::{format_time, ParseMode};

fn main() -> handswap::Result<()> {
    let mode = match std::env::args().nth(1).as_deref() {
        Some("random") => PairMode::Random,
        Some("pure-swap") => PairMode::PureSwap,
        _ => PairMode::Hybrid,
    };
    let (annotations, raw) = handswap::eval::self_test_fixture();
    let predictions: Vec<PredictionRecord> = raw
        .into_iter()
        .map(|r| PredictionRecord::parse(r, ParseMode::Strict))
        .collect();
    let forged = forge_dataset(
        &annotations,
        &predictions,
        &ForgeConfig {
            mode,
            ..ForgeConfig::default()
        },
    )?;
    for p in forged.pairs.iter().step_by(97) {
        println!(
            "{}: chosen {} rejected {}",
            p.image_path,
            format_time(p.chosen),
            format_time(p.rejected)
        );
    }
    println!(
        "kept {} of {} ({:.1}%), drops {:?}",
        forged.report.n_out,
        forged.report.n_in,
        forged.report.retention_pct,
        forged.report.drops_by_reason
    );
    Ok(())
}
