// SPDX-License-Identifier: Apache-2.0

//! Keyed rotation over the three training prompts.
//!
//! `cargo run --example prompt_rotation -- [seed]`

use handswap::prefs::{rotate_prompt, rotation_index, PromptCorpus};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let corpus = PromptCorpus::default();
    let mut counts = [0; 3];
    for i in 0..30_000 {
        counts[rotation_index(&format!("images/{i:05}.png"), seed)] += 1;
    }
    println!("seed {seed}: prompt counts over 30000 keys {counts:?}");
    let first = rotate_prompt(&corpus, "images/00000.png", seed);
    println!(
        "images/00000.png gets: {}",
        first.lines().next().unwrap_or("")
    );
}
