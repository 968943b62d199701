// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Tokens that make a caption relevant by default.
pub const DEFAULT_KEYWORDS: [&str; 4] = ["watch", "watches", "clock", "clocks"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "lowercase")]
pub enum KeywordDecision {
    Keep {
        keyword: String,
    },
    /// `near_miss` is the first token that contains a keyword stem without
    /// being on the allowlist ("watching", "wristwatch").
    Drop {
        reason: String,
        near_miss: Option<String>,
    },
}

impl KeywordDecision {
    pub fn is_keep(&self) -> bool {
        matches!(self, KeywordDecision::Keep { .. })
    }
}

/// Whole-token caption filter. Tokens are maximal runs of alphanumeric
/// characters in the lowercased caption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeywordFilter {
    allow: BTreeSet<String>,
}

impl Default for KeywordFilter {
    fn default() -> Self {
        Self::new(DEFAULT_KEYWORDS)
    }
}

impl KeywordFilter {
    pub fn new<S: AsRef<str>>(allow: impl IntoIterator<Item = S>) -> Self {
        Self {
            allow: allow
                .into_iter()
                .map(|s| s.as_ref().to_lowercase())
                .collect(),
        }
    }

    pub fn allowlist(&self) -> impl Iterator<Item = &str> {
        self.allow.iter().map(String::as_str)
    }

    pub fn check(&self, caption: &str) -> KeywordDecision {
        let lower = caption.to_lowercase();
        let mut near_miss = None;
        for token in lower
            .split(|c: char| !c.is_alphanumeric())
            .filter(|t| !t.is_empty())
        {
            if self.allow.contains(token) {
                return KeywordDecision::Keep {
                    keyword: token.to_string(),
                };
            }
            if near_miss.is_none() && self.allow.iter().any(|k| token.contains(k.as_str())) {
                near_miss = Some(token.to_string());
            }
        }
        let reason = match &near_miss {
            Some(t) => format!("excluded variant \"{t}\""),
            None => "no keyword".to_string(),
        };
        KeywordDecision::Drop { reason, near_miss }
    }
}

/// [`KeywordFilter::check`] with the default allowlist.
pub fn keyword_filter(caption: &str) -> KeywordDecision {
    KeywordFilter::default().check(caption)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_words_only() {
        assert!(keyword_filter("a wall clock above the door").is_keep());
        assert!(keyword_filter("Two WATCHES, one gold").is_keep());
        assert!(keyword_filter("clock-tower at dusk").is_keep());
        assert!(keyword_filter("(clocks)").is_keep());
        for caption in [
            "people watching a parade",
            "wristwatches on display",
            "he watched",
            "a watcher",
            "",
        ] {
            assert!(!keyword_filter(caption).is_keep(), "{caption}");
        }
    }

    #[test]
    fn drop_reasons() {
        match keyword_filter("people watching a parade") {
            KeywordDecision::Drop { near_miss, reason } => {
                assert_eq!(near_miss.as_deref(), Some("watching"));
                assert!(reason.contains("watching"));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            keyword_filter("a red bus"),
            KeywordDecision::Drop {
                reason: "no keyword".into(),
                near_miss: None
            }
        );
    }

    #[test]
    fn configurable_allowlist() {
        let f = KeywordFilter::new(["wristwatch", "wristwatches", "clock"]);
        assert!(f.check("wristwatches on display").is_keep());
        assert!(!f.check("a watch").is_keep());
    }
}
