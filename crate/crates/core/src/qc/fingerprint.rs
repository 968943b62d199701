// SPDX-License-Identifier: Apache-2.0

//! Exact and perceptual image fingerprints.
//!
//! Both perceptual hashes start from the same 32x32 luma grid: the decoded
//! image is converted to `0.299 R + 0.587 G + 0.114 B` and box-filtered with
//! exact fractional pixel coverage, so any input size maps to 32x32.
//!
//! **pHash.** The 2-D DCT-II of the grid is taken and the 8x8 block of lowest
//! frequencies kept. Coefficient `(v, u)` (vertical frequency `v`, horizontal
//! `u`) owns bit index `k = 8 v + u`, and bit `k` is written at position
//! `63 - k` of the `u64`, so the hex string reads in row-major order. A bit is
//! set iff its coefficient is strictly positive. Bit 0 would hold the DC
//! term, which carries only mean brightness; it is always 0 instead.
//!
//! **wHash.** Two levels of the Haar approximation band (each level averages
//! 2x2 blocks) reduce the grid to 8x8. A bit is set iff its value is strictly
//! above the median of the 64 values (mean of the two middle ones); bits are
//! row-major, first bit at position 63.

use std::fmt;
use std::path::Path;

use image::DynamicImage;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha1::{Digest, Sha1};

use crate::error::{Error, Result};

pub const GRID: usize = 32;

/// A 64-bit perceptual hash, written as 16 lowercase hex digits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Hash64(pub u64);

impl Hash64 {
    pub fn hamming(self, other: Hash64) -> u32 {
        (self.0 ^ other.0).count_ones()
    }
}

impl fmt::Display for Hash64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl fmt::Debug for Hash64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hash64({self})")
    }
}

impl std::str::FromStr for Hash64 {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.len() != 16 {
            return Err(format!("expected 16 hex digits, got {s:?}"));
        }
        u64::from_str_radix(s, 16)
            .map(Hash64)
            .map_err(|e| format!("{s:?}: {e}"))
    }
}

impl Serialize for Hash64 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Hash64 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ImageFingerprint {
    /// Lowercase hex SHA-1 of the file bytes.
    pub sha1: String,
    pub phash: Hash64,
    pub whash: Hash64,
}

pub fn sha1_hex(bytes: &[u8]) -> String {
    hex::encode(Sha1::digest(bytes))
}

/// Area-averaged 32x32 luma grid, row-major.
pub fn luma_grid(img: &DynamicImage) -> Vec<f64> {
    let rgb = img.to_rgb8();
    let (w, h) = (rgb.width() as usize, rgb.height() as usize);
    let luma: Vec<f64> = rgb
        .pixels()
        .map(|p| 0.299 * p[0] as f64 + 0.587 * p[1] as f64 + 0.114 * p[2] as f64)
        .collect();
    // coverage weights of source columns/rows for each output cell
    let weights = |n: usize| -> Vec<Vec<(usize, f64)>> {
        let scale = n as f64 / GRID as f64;
        (0..GRID)
            .map(|i| {
                let (a, b) = (i as f64 * scale, (i + 1) as f64 * scale);
                (a.floor() as usize..(b.ceil() as usize).min(n))
                    .map(|s| (s, (b.min(s as f64 + 1.0) - a.max(s as f64)) / scale))
                    .filter(|&(_, wgt)| wgt > 0.0)
                    .collect()
            })
            .collect()
    };
    let (wx, wy) = (weights(w), weights(h));
    let mut grid = vec![0.0; GRID * GRID];
    for (gy, rows) in wy.iter().enumerate() {
        for (gx, cols) in wx.iter().enumerate() {
            let mut acc = 0.0;
            for &(sy, ay) in rows {
                for &(sx, ax) in cols {
                    acc += ay * ax * luma[sy * w + sx];
                }
            }
            grid[gy * GRID + gx] = acc;
        }
    }
    grid
}

pub fn phash_of_grid(grid: &[f64]) -> Hash64 {
    assert_eq!(grid.len(), GRID * GRID);
    let n = GRID as f64;
    let basis: Vec<Vec<f64>> = (0..8)
        .map(|k| {
            (0..GRID)
                .map(|x| (std::f64::consts::PI * (2 * x + 1) as f64 * k as f64 / (2.0 * n)).cos())
                .collect()
        })
        .collect();
    let mut bits = 0u64;
    for v in 0..8 {
        for u in 0..8 {
            let k = 8 * v + u;
            if k == 0 {
                continue;
            }
            let mut c = 0.0;
            for y in 0..GRID {
                let by = basis[v][y];
                for x in 0..GRID {
                    c += grid[y * GRID + x] * by * basis[u][x];
                }
            }
            if c > 0.0 {
                bits |= 1 << (63 - k);
            }
        }
    }
    Hash64(bits)
}

pub fn whash_of_grid(grid: &[f64]) -> Hash64 {
    assert_eq!(grid.len(), GRID * GRID);
    let haar = |src: &[f64], n: usize| -> Vec<f64> {
        let m = n / 2;
        let mut out = vec![0.0; m * m];
        for y in 0..m {
            for x in 0..m {
                let at = |dy: usize, dx: usize| src[(2 * y + dy) * n + 2 * x + dx];
                out[y * m + x] = (at(0, 0) + at(0, 1) + at(1, 0) + at(1, 1)) / 4.0;
            }
        }
        out
    };
    let approx = haar(&haar(grid, GRID), GRID / 2);
    let mut sorted = approx.clone();
    sorted.sort_by(f64::total_cmp);
    let median = (sorted[31] + sorted[32]) / 2.0;
    let bits = approx
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v > median)
        .fold(0u64, |acc, (i, _)| acc | 1 << (63 - i));
    Hash64(bits)
}

pub fn fingerprint_image(img: &DynamicImage) -> (Hash64, Hash64) {
    let grid = luma_grid(img);
    (phash_of_grid(&grid), whash_of_grid(&grid))
}

/// Fingerprint of encoded image bytes; `origin` names the source in errors.
pub fn fingerprint(bytes: &[u8], origin: &str) -> Result<ImageFingerprint> {
    let img = image::load_from_memory(bytes).map_err(|e| Error::Decode {
        path: origin.to_string(),
        message: e.to_string(),
    })?;
    let (phash, whash) = fingerprint_image(&img);
    Ok(ImageFingerprint {
        sha1: sha1_hex(bytes),
        phash,
        whash,
    })
}

pub fn fingerprint_file(path: &Path) -> Result<ImageFingerprint> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    fingerprint(&bytes, &path.display().to_string())
}
