// SPDX-License-Identifier: Apache-2.0

//! Preference data for DPO.
//!
//! The chosen answer is always the ground truth. The rejected answer depends
//! on [`PairMode`]: in hybrid mode a wrong model answer is used as-is and a
//! correct one is replaced by the hand-swapped truth, which is a hard
//! negative that matches the picture geometrically. Every candidate passes
//! [`validate_pair`] before it is emitted.

mod dpo;
mod pairs;
mod prompts;

pub use dpo::{dpo_loss, DpoInputs, DpoLoss};
pub use pairs::{
    forge_dataset, is_correct, is_correct_within, make_pair, random_rejected, validate_pair,
    DropReason, DroppedRecord, ForgeConfig, Forged, PairMode, PairOutcome, PreferencePair,
    RetentionReport, MIN_PAIR_DISTANCE,
};
pub use prompts::{rotate_prompt, rotation_index, PromptCorpus, PROMPT_FILES};
