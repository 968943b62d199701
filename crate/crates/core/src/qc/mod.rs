// SPDX-License-Identifier: Apache-2.0

//! Collection-pipeline tooling: caption keyword filtering, exact and
//! perceptual deduplication, time-cell rebalancing and label statistics.

mod dedup;
mod fingerprint;
mod keywords;
mod rebalance;
mod stats;

pub use dedup::{
    dedup, fingerprint_records, DedupConfig, DedupEntry, DedupResult, ImageRecord,
    DEFAULT_HAMMING_THRESHOLD,
};
pub use fingerprint::{
    fingerprint, fingerprint_file, fingerprint_image, luma_grid, phash_of_grid, sha1_hex,
    whash_of_grid, Hash64, ImageFingerprint, GRID,
};
pub use keywords::{keyword_filter, KeywordDecision, KeywordFilter, DEFAULT_KEYWORDS};
pub use rebalance::{rebalance, CapRule, Rebalanced, DEFAULT_CAP_MULTIPLIER};
pub use stats::{compute_stats, DistributionStats};
