// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::time::{parse_answer, ClockTime, ParseMode, ParsedAnswer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AmPm {
    #[serde(rename = "AM")]
    Am,
    #[serde(rename = "PM")]
    Pm,
}

macro_rules! label_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $label:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $label)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn label(self) -> &'static str {
                match self {
                    $($name::$variant => $label),+
                }
            }
        }
    };
}

label_enum!(ClockType {
    Wall => "wall",
    Tower => "tower",
    Wrist => "wrist",
    Post => "post",
    AlarmDesk => "alarm_desk",
    Graphic => "graphic",
    Etc => "etc",
});

label_enum!(Environment {
    Indoor => "indoor",
    Outdoor => "outdoor",
    Unknown => "unknown",
});

label_enum!(Transformation {
    Normal => "normal",
    Flipped => "flipped",
    Partial => "partial",
});

label_enum!(
    /// Face design; a record may carry several.
    Design {
        Arabic => "arabic",
        Roman => "roman",
        NoNumerals => "no_numerals",
    }
);

label_enum!(Split {
    Train => "train",
    Test => "test",
});

/// One labelled image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub id: String,
    pub image_path: String,
    pub truth: ClockTime,
    /// Carried through; no metric reads it.
    #[serde(default)]
    pub ampm: Option<AmPm>,
    pub clock_type: ClockType,
    pub environment: Environment,
    pub transformation: Transformation,
    #[serde(default)]
    pub design: BTreeSet<Design>,
    pub source: String,
    pub split: Split,
}

/// A model answer as it appears in a predictions file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPrediction {
    pub id: String,
    pub raw_output: String,
}

/// A model answer together with its parsed reading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictionRecord {
    pub id: String,
    pub raw_output: String,
    pub parsed: ParsedAnswer,
}

impl PredictionRecord {
    pub fn parse(raw: RawPrediction, mode: ParseMode) -> Self {
        let parsed = parse_answer(&raw.raw_output, mode);
        Self {
            id: raw.id,
            raw_output: raw.raw_output,
            parsed,
        }
    }
}
