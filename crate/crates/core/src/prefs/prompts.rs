// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;

use crate::error::{Error, Result};
use crate::keyed::keyed_rng;

const PROMPT_A: &str = include_str!("../../assets/prompts/prompt_a.txt");
const PROMPT_B: &str = include_str!("../../assets/prompts/prompt_b.txt");
const PROMPT_C: &str = include_str!("../../assets/prompts/prompt_c.txt");
const INFERENCE: &str = include_str!("../../assets/prompts/inference.txt");

/// File names used by [`PromptCorpus::emit`].
pub const PROMPT_FILES: [&str; 4] = [
    "prompt_a.txt",
    "prompt_b.txt",
    "prompt_c.txt",
    "inference.txt",
];

/// Three interchangeable training instructions and the evaluation prompt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PromptCorpus {
    training: [String; 3],
    inference: String,
}

impl Default for PromptCorpus {
    fn default() -> Self {
        Self {
            training: [PROMPT_A.into(), PROMPT_B.into(), PROMPT_C.into()],
            inference: INFERENCE.into(),
        }
    }
}

impl PromptCorpus {
    pub fn new(training: [String; 3], inference: String) -> Result<Self> {
        let [a, b, c] = &training;
        if a == b || b == c || a == c {
            return Err(Error::Config(
                "training prompts must be pairwise distinct".into(),
            ));
        }
        Ok(Self {
            training,
            inference,
        })
    }

    pub fn training(&self) -> &[String; 3] {
        &self.training
    }

    pub fn inference(&self) -> &str {
        &self.inference
    }

    /// Writes the four prompts verbatim into `dir`.
    pub fn emit(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let texts = self
            .training
            .iter()
            .map(String::as_str)
            .chain([self.inference.as_str()]);
        PROMPT_FILES
            .iter()
            .zip(texts)
            .map(|(name, text)| {
                let path = dir.join(name);
                fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
                Ok(path)
            })
            .collect()
    }
}

/// Index (0, 1 or 2) of the training prompt assigned to `record_key`.
pub fn rotation_index(record_key: &str, seed: u64) -> usize {
    keyed_rng(seed, record_key).random_range(0..3)
}

/// Uniform, keyed choice among the three training prompts.
pub fn rotate_prompt<'a>(corpus: &'a PromptCorpus, record_key: &str, seed: u64) -> &'a str {
    &corpus.training[rotation_index(record_key, seed)]
}
