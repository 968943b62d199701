// SPDX-License-Identifier: Apache-2.0

//! Fingerprints a few renders plus a byte copy and a downscaled copy, then
//! clusters them.
//!
//! `cargo run --example dedup_corpus`

use handswap::qc::{dedup, fingerprint, DedupConfig, ImageRecord};
use handswap::render::{encode_png, render, ClockStyle};
use handswap::ClockTime;
use image::imageops::FilterType;

fn main() -> handswap::Result<()> {
    let style = ClockStyle::default();
    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    for (i, t) in ["01:50", "04:20", "07:35", "10:05"].iter().enumerate() {
        files.push((
            format!("clock{i}"),
            render(t.parse::<ClockTime>()?, &style, 0)?.to_png(),
        ));
    }
    files.push(("clock0_copy".into(), files[0].1.clone()));
    let small = image::load_from_memory(&files[1].1)
        .expect("own PNG decodes")
        .resize_exact(108, 108, FilterType::Triangle)
        .to_rgb8();
    files.push(("clock1_small".into(), encode_png(&small)));

    let items = files
        .iter()
        .map(|(id, bytes)| {
            let record = ImageRecord {
                id: id.clone(),
                image_path: format!("{id}.png"),
                source: None,
            };
            Ok((record, fingerprint(bytes, id)?))
        })
        .collect::<handswap::Result<Vec<_>>>()?;
    let result = dedup(&items, &DedupConfig::default())?;
    for e in &result.entries {
        println!(
            "{:<13} phash {} whash {} cluster {} kept {}",
            e.id, e.phash, e.whash, e.cluster_id, e.kept
        );
    }
    println!(
        "{} clusters, {} removed",
        result.n_clusters, result.n_removed
    );
    // distinct times can still land in one cluster through the coarse wHash
    let first = &items[0].1;
    for (record, fp) in &items[1..] {
        println!(
            "clock0 vs {:<13} phash distance {:2}, whash distance {:2}",
            record.id,
            first.phash.hamming(fp.phash),
            first.whash.hamming(fp.whash)
        );
    }
    Ok(())
}
