// SPDX-License-Identifier: Apache-2.0

//! Time-distribution statistics for a skewed label set, before and after
//! capping over-represented cells; also filters a few captions.
//!
//! `cargo run --example temporal_stats`

use handswap::qc::{keyword_filter, rebalance, CapRule};
use handswap::ClockTime;

fn main() -> handswap::Result<()> {
    // product-photo style skew: a pile of 10:10 on a thin uniform base
    let mut labels: Vec<(String, ClockTime)> = ClockTime::all()
        .flat_map(|t| (0..2).map(move |k| (format!("{}-{k}", t.index()), t)))
        .collect();
    let ten_ten: ClockTime = "10:10".parse()?;
    labels.extend((0..500).map(|k| (format!("spike-{k}"), ten_ten)));
    let records: Vec<(&str, ClockTime)> = labels.iter().map(|(id, t)| (id.as_str(), *t)).collect();

    let r = rebalance(&records, CapRule::default())?;
    println!(
        "cap {} per cell, kept {} of {}",
        r.cap,
        r.kept.len(),
        records.len()
    );
    println!(
        "hour CV {:.2}% -> {:.2}%, busiest hour {} ({}) -> {} ({})",
        r.before.hour_cv,
        r.after.hour_cv,
        r.before.argmax_hour,
        r.before.max_hour_count,
        r.after.argmax_hour,
        r.after.max_hour_count
    );

    for caption in [
        "a wall clock above the door",
        "people watching a parade",
        "two watches on a tray",
    ] {
        println!("{caption:?}: {:?}", keyword_filter(caption));
    }
    Ok(())
}
