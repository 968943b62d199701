// SPDX-License-Identifier: Apache-2.0

//! Tooling for analog clock reading.
//!
//! * [`time`]: the twelve-hour time model, hand angles, the hand-swap
//!   transform, circular distances and the `HH:MM` answer codec.
//! * [`eval`]: baseline and swap-equivalence scoring, corpus reports and
//!   error profiles.
//! * [`prefs`]: preference pairs for DPO (hybrid, pure-swap and random
//!   rejected answers), pair validation, the DPO loss and the prompt corpus.
//! * [`render`]: deterministic synthetic clock images, style sampling and
//!   Canny edge maps.
//! * [`qc`]: caption keyword filtering, SHA-1 / pHash / wHash deduplication,
//!   rebalancing and time-distribution statistics.
//! * [`cli`]: the `handswap` command line.
//!
//! Runnable walkthroughs for each area live in `examples/`.

pub mod cli;
pub mod error;
pub mod eval;
pub mod jsonl;
pub mod keyed;
pub mod prefs;
pub mod qc;
pub mod render;
pub mod time;

pub use error::{Error, Result};
pub use time::{
    circular_distance_minutes, circular_hour_component, circular_minute_component, format_time,
    hands_from_time, parse_answer, swap_angles, swap_hands, ClockTime, HandAngles, ParseMode,
    ParsedAnswer,
};
