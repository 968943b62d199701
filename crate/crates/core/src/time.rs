// SPDX-License-Identifier: Apache-2.0

//! The twelve-hour time model.
//!
//! [`ClockTime`] stores the hour in `0..=11` so the hand-angle formulas apply
//! verbatim; the text form prints hour 0 as `12`. Everything here is pure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Minutes in one revolution of the hour hand.
pub const CYCLE_MINUTES: u32 = 720;

/// Sentinel answer for images without an analog clock.
pub const NO_CLOCK: &str = "NO CLOCK";

/// A time on a twelve-hour analog dial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClockTime {
    hour: u8,
    minute: u8,
}

impl ClockTime {
    pub fn new(hour: u32, minute: u32) -> Result<Self> {
        if hour > 11 || minute > 59 {
            return Err(Error::InvalidTime { hour, minute });
        }
        Ok(Self {
            hour: hour as u8,
            minute: minute as u8,
        })
    }

    /// Builds a time from a display hour (`1..=12`, with `0` accepted as 12).
    pub fn from_display(hour: u32, minute: u32) -> Result<Self> {
        match hour {
            0 | 12 => Self::new(0, minute),
            1..=11 => Self::new(hour, minute),
            _ => Err(Error::InvalidTime { hour, minute }),
        }
    }

    /// Time at `index` minutes past 12:00, wrapping on the 720-minute cycle.
    pub fn from_index(index: u32) -> Self {
        let index = index % CYCLE_MINUTES;
        Self {
            hour: (index / 60) as u8,
            minute: (index % 60) as u8,
        }
    }

    /// Minutes past 12:00, in `0..720`.
    pub fn index(self) -> u32 {
        60 * self.hour as u32 + self.minute as u32
    }

    pub fn hour(self) -> u32 {
        self.hour as u32
    }

    pub fn minute(self) -> u32 {
        self.minute as u32
    }

    /// Hour as printed on a dial, `1..=12`.
    pub fn display_hour(self) -> u32 {
        if self.hour == 0 {
            12
        } else {
            self.hour as u32
        }
    }

    /// All 720 times in index order.
    pub fn all() -> impl Iterator<Item = ClockTime> + Clone {
        (0..CYCLE_MINUTES).map(ClockTime::from_index)
    }
}

impl fmt::Display for ClockTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02}:{:02}", self.display_hour(), self.minute)
    }
}

impl FromStr for ClockTime {
    type Err = Error;

    /// Strict canonical form only: exactly `HH:MM`.
    fn from_str(s: &str) -> Result<Self> {
        parse_canonical(s).ok_or_else(|| Error::TimeSyntax(s.to_string()))
    }
}

impl Serialize for ClockTime {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClockTime {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonical text form, e.g. `08:05` or `12:00`.
pub fn format_time(t: ClockTime) -> String {
    t.to_string()
}

fn parse_canonical(s: &str) -> Option<ClockTime> {
    let b = s.as_bytes();
    if b.len() != 5 || b[2] != b':' || ![b[0], b[1], b[3], b[4]].iter().all(u8::is_ascii_digit) {
        return None;
    }
    let hour = ((b[0] - b'0') * 10 + (b[1] - b'0')) as u32;
    let minute = ((b[3] - b'0') * 10 + (b[4] - b'0')) as u32;
    if !(1..=12).contains(&hour) {
        return None;
    }
    ClockTime::from_display(hour, minute).ok()
}

/// Angular positions of the two hands, in degrees clockwise from 12.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HandAngles {
    pub hour: f64,
    pub minute: f64,
}

/// `hour = 30h + m/2`, `minute = 6m`.
pub fn hands_from_time(t: ClockTime) -> HandAngles {
    HandAngles {
        hour: (30.0 * t.hour() as f64 + t.minute() as f64 / 2.0).rem_euclid(360.0),
        minute: 6.0 * t.minute() as f64,
    }
}

/// Exchanges the two hands.
pub fn swap_angles(a: HandAngles) -> HandAngles {
    HandAngles {
        hour: a.minute,
        minute: a.hour,
    }
}

/// Exact inverse of [`hands_from_time`]. Returns `None` unless the angles are
/// a configuration some time actually produces (minute hand on a minute mark,
/// hour hand at the matching offset within its hour sector).
pub fn time_from_hands(a: HandAngles) -> Option<ClockTime> {
    const EPS: f64 = 1e-9;
    if !a.hour.is_finite() || !a.minute.is_finite() {
        return None;
    }
    let minute = a.minute.rem_euclid(360.0) / 6.0;
    let minute_r = minute.round();
    if (minute - minute_r).abs() > EPS {
        return None;
    }
    let minute = minute_r as u32 % 60;
    let hour = (a.hour.rem_euclid(360.0) - minute as f64 / 2.0) / 30.0;
    let hour_r = hour.round();
    if (hour - hour_r).abs() > EPS || !(0.0..12.0).contains(&hour_r) {
        return None;
    }
    ClockTime::new(hour_r as u32, minute).ok()
}

/// The time read when the hour and minute hands exchange roles.
///
/// New hour is `floor(minute_angle / 30)`; new minute is
/// `round(hour_angle / 6) mod 60` with halves rounded up (so 03:30 becomes
/// 06:18). Computed on half-degree integers, so no float rounding enters.
pub fn swap_hands(t: ClockTime) -> ClockTime {
    // hour angle in half degrees: 2 * (30h + m/2)
    let hour_half_deg = 60 * t.hour() + t.minute();
    let minute = ((hour_half_deg + 6) / 12) % 60;
    // 6m / 30
    let hour = t.minute() / 5;
    ClockTime::from_index(60 * hour + minute)
}

/// How distances between two times are measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceKernel {
    /// Shortest way around the dial.
    #[default]
    Circular,
    /// Plain difference on `0..720`, `0..60` and `0..12`.
    Linear,
}

impl DistanceKernel {
    pub fn total(self, a: ClockTime, b: ClockTime) -> u32 {
        wrap(self, a.index(), b.index(), CYCLE_MINUTES)
    }

    pub fn minute_component(self, a: ClockTime, b: ClockTime) -> u32 {
        wrap(self, a.minute(), b.minute(), 60)
    }

    pub fn hour_component(self, a: ClockTime, b: ClockTime) -> u32 {
        wrap(self, a.hour(), b.hour(), 12)
    }

    /// Largest value [`DistanceKernel::total`] can return.
    pub fn max_total(self) -> u32 {
        self.max_for(CYCLE_MINUTES)
    }

    pub fn max_minute(self) -> u32 {
        self.max_for(60)
    }

    pub fn max_hour(self) -> u32 {
        self.max_for(12)
    }

    fn max_for(self, period: u32) -> u32 {
        match self {
            DistanceKernel::Circular => period / 2,
            DistanceKernel::Linear => period - 1,
        }
    }
}

fn wrap(kernel: DistanceKernel, a: u32, b: u32, period: u32) -> u32 {
    let d = a.abs_diff(b);
    match kernel {
        DistanceKernel::Circular => d.min(period - d),
        DistanceKernel::Linear => d,
    }
}

/// Minutes between two times on the 12-hour cycle, in `0..=360`.
pub fn circular_distance_minutes(a: ClockTime, b: ClockTime) -> u32 {
    DistanceKernel::Circular.total(a, b)
}

/// Minute-field distance on the 60-minute cycle, in `0..=30`.
pub fn circular_minute_component(a: ClockTime, b: ClockTime) -> u32 {
    DistanceKernel::Circular.minute_component(a, b)
}

/// Hour-field distance on the 12-hour cycle, in `0..=6`.
pub fn circular_hour_component(a: ClockTime, b: ClockTime) -> u32 {
    DistanceKernel::Circular.hour_component(a, b)
}

/// Outcome of reading a model answer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ParsedAnswer {
    Time(ClockTime),
    NoClock,
    /// Raw input, untouched.
    Unparseable(String),
}

impl ParsedAnswer {
    pub fn time(&self) -> Option<ClockTime> {
        match self {
            ParsedAnswer::Time(t) => Some(*t),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParseMode {
    /// Exactly `HH:MM` or `NO CLOCK` after trimming.
    #[default]
    Strict,
    /// First `H:M`-shaped time or "no clock" phrase anywhere in the text.
    Lenient,
}

pub fn parse_answer(raw: &str, mode: ParseMode) -> ParsedAnswer {
    let parsed = match mode {
        ParseMode::Strict => {
            let trimmed = raw.trim();
            if trimmed == NO_CLOCK {
                Some(ParsedAnswer::NoClock)
            } else {
                parse_canonical(trimmed).map(ParsedAnswer::Time)
            }
        }
        ParseMode::Lenient => scan_lenient(raw),
    };
    parsed.unwrap_or_else(|| ParsedAnswer::Unparseable(raw.to_string()))
}

fn scan_lenient(raw: &str) -> Option<ParsedAnswer> {
    let bytes = raw.as_bytes();
    let lower = raw.to_ascii_lowercase();
    let no_clock_at = lower.find("no clock");
    let time_at = find_loose_time(bytes);
    match (time_at, no_clock_at) {
        (Some((pos, t)), Some(nc)) if pos < nc => Some(ParsedAnswer::Time(t)),
        (_, Some(_)) => Some(ParsedAnswer::NoClock),
        (Some((_, t)), None) => Some(ParsedAnswer::Time(t)),
        (None, None) => None,
    }
}

/// First `H{1,2}:M{1,2}` token (digit runs bounded by non-digits) whose fields
/// are in range. Returns its byte offset.
fn find_loose_time(bytes: &[u8]) -> Option<(usize, ClockTime)> {
    let digits_before = |colon: usize| {
        let mut start = colon;
        while start > 0 && bytes[start - 1].is_ascii_digit() {
            start -= 1;
        }
        start
    };
    let digits_after = |colon: usize| {
        let mut end = colon + 1;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        end
    };
    let number = |s: &[u8]| s.iter().fold(0u32, |acc, d| acc * 10 + (d - b'0') as u32);

    for (colon, _) in bytes.iter().enumerate().filter(|(_, &b)| b == b':') {
        let start = digits_before(colon);
        let end = digits_after(colon);
        let (hour_digits, minute_digits) = (&bytes[start..colon], &bytes[colon + 1..end]);
        if !(1..=2).contains(&hour_digits.len()) || !(1..=2).contains(&minute_digits.len()) {
            continue;
        }
        if let Ok(t) = ClockTime::from_display(number(hour_digits), number(minute_digits)) {
            return Some((start, t));
        }
    }
    None
}
