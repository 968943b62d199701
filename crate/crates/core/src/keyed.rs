// SPDX-License-Identifier: Apache-2.0

//! Counter-based randomness: every draw is a pure function of a seed and a
//! record key, so results do not depend on iteration or thread order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Generator for one `(seed, key)` pair. The ChaCha seed is
/// `SHA-256(seed as little-endian u64 || key bytes)`.
pub fn keyed_rng(seed: u64, key: &str) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(key.as_bytes());
    ChaCha8Rng::from_seed(hasher.finalize().into())
}

/// Same as [`keyed_rng`] for integer keys such as corpus indices.
pub fn indexed_rng(seed: u64, index: u64) -> ChaCha8Rng {
    keyed_rng(seed, &index.to_string())
}

/// Stable 64-bit hash of a string (first eight bytes of its SHA-256).
pub fn stable_hash(key: &str) -> u64 {
    let digest = Sha256::digest(key.as_bytes());
    u64::from_be_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}
