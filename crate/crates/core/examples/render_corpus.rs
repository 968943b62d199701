// SPDX-License-Identifier: Apache-2.0

//! Renders a small labelled corpus of synthetic clocks.
//!
//! `cargo run --example render_corpus -- <out_dir> [n]`

use std::path::PathBuf;

use handswap::render::{generate_corpus, CorpusConfig, TimeDistribution};

fn main() -> handswap::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "synthetic_clocks".into()));
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(24);
    let cfg = CorpusConfig {
        n,
        distribution: TimeDistribution::Stratified,
        time_seed: 7,
        style_seed: 7,
        flip_fraction: 0.1,
        occlude_fraction: 0.1,
        edges: Some((50.0, 150.0)),
        ..CorpusConfig::default()
    };
    let manifest = generate_corpus(&cfg, &out)?;
    for r in manifest.records.iter().take(5) {
        println!("{} {} {}", r.id, r.truth, r.transformation.label());
    }
    println!(
        "wrote {} images to {}",
        manifest.images.len(),
        out.display()
    );
    Ok(())
}
