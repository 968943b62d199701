// SPDX-License-Identifier: Apache-2.0

//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's geometry; each helper works from the defining formulas or
//! from raw pixels.

#![allow(dead_code)]

use handswap::render::ClockStyle;
use handswap::ClockTime;
use image::RgbImage;

/// Hand angles in degrees, straight from the clock formulas.
pub fn oracle_angles(h: u32, m: u32) -> (f64, f64) {
    ((30.0 * h as f64 + m as f64 / 2.0) % 360.0, 6.0 * m as f64)
}

/// The hand-swapped reading: the minute hand read as an hour hand (floored)
/// and the hour hand read as a minute hand (nearest, halves up).
pub fn oracle_swap(h: u32, m: u32) -> (u32, u32) {
    let (th, tm) = oracle_angles(h, m);
    let new_h = (tm / 30.0).floor() as u32 % 12;
    let new_m = (th / 6.0 + 0.5).floor() as u32 % 60;
    (new_h, new_m)
}

/// Minutes between two times on the 12-hour dial, the short way round.
pub fn oracle_distance(a: (u32, u32), b: (u32, u32)) -> u32 {
    let d = (60 * a.0 as i64 + a.1 as i64 - 60 * b.0 as i64 - b.1 as i64).rem_euclid(720) as u32;
    d.min(720 - d)
}

pub fn oracle_cyclic(a: u32, b: u32, n: u32) -> u32 {
    let d = (a as i64 - b as i64).rem_euclid(n as i64) as u32;
    d.min(n - d)
}

/// Signed angular difference folded into (-180, 180].
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

pub fn all_times() -> impl Iterator<Item = (u32, u32)> {
    (0..12).flat_map(|h| (0..60).map(move |m| (h, m)))
}

pub fn ct((h, m): (u32, u32)) -> ClockTime {
    ClockTime::new(h, m).unwrap()
}

/// Reads the time off a rendered clock.
///
/// Only pixels of the hands colour are used. The minute direction is the
/// centroid direction of the farthest such pixels (the minute hand reaches
/// furthest). Given the minute, the hour is the candidate direction
/// `30 h + m / 2` whose hour-hand-sized strip holds the most hand pixels;
/// the strip is wider than the minute hand, so only the thick hand fills it.
pub fn extract_time(img: &RgbImage, style: &ClockStyle) -> Option<(u32, u32)> {
    let c = img.width() as f64 / 2.0;
    let r = style.face_radius_px as f64;
    let hands = style.palette.hands;
    // (radius, clock angle in the unrotated, unmirrored frame)
    let polar: Vec<(f64, f64)> = img
        .enumerate_pixels()
        .filter(|(_, _, p)| p.0 == hands)
        .map(|(x, y, _)| {
            let (dx, dy) = (x as f64 + 0.5 - c, y as f64 + 0.5 - c);
            let phi = dx.atan2(-dy).to_degrees();
            let phi = if style.mirror { -phi } else { phi };
            (dx.hypot(dy), (phi - style.rotation_deg).rem_euclid(360.0))
        })
        .collect();
    let r_max = polar.iter().map(|p| p.0).fold(0.0, f64::max);
    if r_max == 0.0 {
        return None;
    }
    let (sx, sy) = polar
        .iter()
        .filter(|p| p.0 >= r_max - 2.0)
        .fold((0.0, 0.0), |(sx, sy), &(_, a)| {
            (sx + a.to_radians().sin(), sy + a.to_radians().cos())
        });
    let minute_angle = sx.atan2(sy).to_degrees().rem_euclid(360.0);
    let m = (minute_angle / 6.0).round() as u32 % 60;

    let hour_len = style.hour_hand.length_fraction * r;
    let half_w = style.hour_hand.width_px as f64 / 2.0;
    let (lo, hi) = ((2.0 * half_w * 2.0).max(0.25 * hour_len), hour_len - half_w);
    let score = |h: u32| {
        let dir = 30.0 * h as f64 + m as f64 / 2.0;
        polar
            .iter()
            .filter(|&&(rad, a)| {
                let d = angle_diff(a, dir).to_radians();
                let (along, lateral) = (rad * d.cos(), rad * d.sin());
                (lo..=hi).contains(&along) && lateral.abs() <= half_w
            })
            .count()
    };
    let h = (0..12).max_by_key(|&h| (score(h), std::cmp::Reverse(h)))?;
    Some((h, m))
}

/// Minimal SplitMix64 stream for test-side sampling that must not share
/// code with the library's keyed generators.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (the modulo bias is below 1e-15 for small n).
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}
