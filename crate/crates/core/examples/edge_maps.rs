// SPDX-License-Identifier: Apache-2.0

//! Renders one clock and writes it next to its Canny edge map.
//!
//! `cargo run --example edge_maps -- [HH:MM] [out_dir]`

use std::path::PathBuf;

use handswap::render::{encode_gray_png, export_edge_map, render, ClockStyle};
use handswap::ClockTime;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: ClockTime = args.next().unwrap_or_else(|| "10:10".into()).parse()?;
    let out = PathBuf::from(args.next().unwrap_or_else(|| "edge_demo".into()));
    std::fs::create_dir_all(&out)?;
    let sample = render(t, &ClockStyle::default(), 0)?;
    let edges = export_edge_map(&sample, 50.0, 150.0)?;
    let lit = edges.pixels().filter(|p| p.0[0] > 0).count();
    let (clock, edge) = (out.join("clock.png"), out.join("edges.png"));
    std::fs::write(&clock, sample.to_png())?;
    std::fs::write(&edge, encode_gray_png(&edges))?;
    println!(
        "{}: {lit} edge pixels ({:.2}%), written to {}",
        t,
        100.0 * lit as f64 / (edges.width() * edges.height()) as f64,
        out.display()
    );
    Ok(())
}
