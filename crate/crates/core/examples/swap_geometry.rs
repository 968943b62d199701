// SPDX-License-Identifier: Apache-2.0

//! Hand angles and the hand-swapped reading for a few times.
//!
//! `cargo run --example swap_geometry -- [HH:MM ...]`

use handswap::{circular_distance_minutes, format_time, hands_from_time, swap_hands, ClockTime};

fn main() -> handswap::Result<()> {
    let mut inputs: Vec<String> = std::env::args().skip(1).collect();
    if inputs.is_empty() {
        inputs = ["03:30", "12:00", "01:05", "10:10"]
            .map(String::from)
            .to_vec();
    }
    for text in inputs {
        let t: ClockTime = text.parse()?;
        let s = swap_hands(t);
        let a = hands_from_time(t);
        println!(
            "{} hour {:6.1} deg minute {:6.1} deg -> swapped {} ({} min away)",
            format_time(t),
            a.hour,
            a.minute,
            format_time(s),
            circular_distance_minutes(t, s)
        );
    }
    Ok(())
}
