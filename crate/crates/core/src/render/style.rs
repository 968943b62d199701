// SPDX-License-Identifier: Apache-2.0

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::keyed::keyed_rng;

/// Smallest face any style may use.
pub const MIN_FACE_RADIUS: u32 = 32;
/// Smallest face that leaves room for a numeral ring.
pub const MIN_NUMERAL_RADIUS: u32 = 48;
/// Total border around the face: the image side is `2 * radius + MARGIN`.
pub const MARGIN: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NumeralStyle {
    Arabic,
    Roman,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TickStyle {
    All60,
    HoursOnly,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HandStyle {
    /// Length as a fraction of the face radius, in `(0, 1)`.
    pub length_fraction: f64,
    pub width_px: u32,
}

pub type Rgb = [u8; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Palette {
    pub face: Rgb,
    pub hands: Rgb,
    /// Numerals, ticks and rim.
    pub numerals: Rgb,
    pub background: Rgb,
}

/// Axis-aligned rectangle painted over the finished image, in pixels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occluder {
    pub x0: u32,
    pub y0: u32,
    pub x1: u32,
    pub y1: u32,
    pub color: Rgb,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClockStyle {
    pub face_radius_px: u32,
    pub numeral_style: NumeralStyle,
    pub tick_style: TickStyle,
    pub hour_hand: HandStyle,
    pub minute_hand: HandStyle,
    pub palette: Palette,
    /// Whole-face rotation, degrees clockwise.
    pub rotation_deg: f64,
    /// Horizontal flip of the finished face.
    pub mirror: bool,
    pub occluder: Option<Occluder>,
}

impl Default for ClockStyle {
    /// The reference style: black hands on an off-white face, arabic
    /// numerals, 60 ticks.
    fn default() -> Self {
        Self {
            face_radius_px: 100,
            numeral_style: NumeralStyle::Arabic,
            tick_style: TickStyle::All60,
            hour_hand: HandStyle {
                length_fraction: 0.5,
                width_px: 8,
            },
            minute_hand: HandStyle {
                length_fraction: 0.8,
                width_px: 3,
            },
            palette: Palette {
                face: [250, 250, 245],
                hands: [20, 20, 20],
                numerals: [70, 70, 110],
                background: [190, 200, 210],
            },
            rotation_deg: 0.0,
            mirror: false,
            occluder: None,
        }
    }
}

impl ClockStyle {
    /// Side length of the square image.
    pub fn image_size(&self) -> u32 {
        2 * self.face_radius_px + MARGIN
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.face_radius_px;
        if r < MIN_FACE_RADIUS {
            return Err(Error::FaceTooSmall {
                radius: r,
                min: MIN_FACE_RADIUS,
                what: "a clock face",
            });
        }
        if self.numeral_style != NumeralStyle::None && r < MIN_NUMERAL_RADIUS {
            return Err(Error::FaceTooSmall {
                radius: r,
                min: MIN_NUMERAL_RADIUS,
                what: "numerals",
            });
        }
        for (name, hand) in [
            ("hour_hand", self.hour_hand),
            ("minute_hand", self.minute_hand),
        ] {
            if !(hand.length_fraction > 0.0 && hand.length_fraction < 1.0) {
                return Err(Error::out_of_range(
                    name,
                    "length fraction must be in (0, 1)",
                ));
            }
            if hand.width_px == 0 {
                return Err(Error::out_of_range(name, "width must be positive"));
            }
        }
        if self.minute_hand.length_fraction <= self.hour_hand.length_fraction {
            return Err(Error::out_of_range(
                "minute_hand",
                "minute hand must be longer than the hour hand",
            ));
        }
        if self.hour_hand.width_px < self.minute_hand.width_px {
            return Err(Error::out_of_range(
                "hour_hand",
                "hour hand must be at least as thick as the minute hand",
            ));
        }
        if !self.rotation_deg.is_finite() {
            return Err(Error::NonFinite {
                name: "rotation_deg",
                value: self.rotation_deg,
            });
        }
        if let Some(o) = self.occluder {
            let c = self.image_size() / 2;
            if o.x0 >= o.x1 || o.y0 >= o.y1 || o.x1 > self.image_size() || o.y1 > self.image_size()
            {
                return Err(Error::out_of_range(
                    "occluder",
                    "empty or outside the image",
                ));
            }
            if (o.x0..o.x1).contains(&c) && (o.y0..o.y1).contains(&c) {
                return Err(Error::out_of_range(
                    "occluder",
                    "must not cover the face center",
                ));
            }
        }
        Ok(())
    }
}

/// Relative luminance in `[0, 1]` (sRGB primaries, no gamma correction).
pub fn luminance(c: Rgb) -> f64 {
    (0.2126 * c[0] as f64 + 0.7152 * c[1] as f64 + 0.0722 * c[2] as f64) / 255.0
}

/// Minimum luminance difference between hands and face in sampled styles.
pub const MIN_HAND_CONTRAST: f64 = 0.3;

/// Draws a random style; the same seed always gives the same style.
///
/// Ranges: radius 64..=128 px; numerals and ticks uniform over their three
/// options; hour hand length 0.35..0.55 and minute hand 0.65..0.9 of the
/// radius; minute width 2..=4 px and hour width 2..=6 px thicker; a tilt of
/// up to 15 degrees either way; palettes with hands at least 0.3 luminance
/// away from the face.
pub fn sample_style(seed: u64) -> ClockStyle {
    let mut rng = keyed_rng(seed, "clock-style");
    let face_radius_px = rng.random_range(64..=128);
    let numeral_style = [
        NumeralStyle::Arabic,
        NumeralStyle::Roman,
        NumeralStyle::None,
    ][rng.random_range(0..3)];
    let tick_style =
        [TickStyle::All60, TickStyle::HoursOnly, TickStyle::None][rng.random_range(0..3)];
    let minute_width = rng.random_range(2..=4);
    let hour_hand = HandStyle {
        length_fraction: rng.random_range(0.35..0.55),
        width_px: minute_width + rng.random_range(2..=6),
    };
    let minute_hand = HandStyle {
        length_fraction: rng.random_range(0.65..0.9),
        width_px: minute_width,
    };
    let palette = loop {
        let mut color = || -> Rgb { [rng.random(), rng.random(), rng.random()] };
        let p = Palette {
            face: color(),
            hands: color(),
            numerals: color(),
            background: color(),
        };
        let (face, hands) = (luminance(p.face), luminance(p.hands));
        if (face - hands).abs() >= MIN_HAND_CONTRAST
            && (face - luminance(p.numerals)).abs() >= 0.15
            && (face - luminance(p.background)).abs() >= 0.1
            && p.numerals != p.hands
        {
            break p;
        }
    };
    ClockStyle {
        face_radius_px,
        numeral_style,
        tick_style,
        hour_hand,
        minute_hand,
        palette,
        rotation_deg: rng.random_range(-15.0..=15.0),
        mirror: false,
        occluder: None,
    }
}
