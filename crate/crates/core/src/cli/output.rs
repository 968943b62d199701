// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const META_FILE: &str = "meta.json";

/// Files written by one run, so a failed run can take them back.
pub struct Outputs {
    dir: PathBuf,
    dir_existed: bool,
    written: Vec<PathBuf>,
}

impl Outputs {
    pub fn create(dir: &Path) -> Result<Self> {
        let dir_existed = dir.exists();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            dir_existed,
            written: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn write(&mut self, name: &str, bytes: impl AsRef<[u8]>) -> Result<PathBuf> {
        let path = self.dir.join(name);
        self.written.push(path.clone());
        fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<PathBuf> {
        let mut text = serde_json::to_string_pretty(value).expect("outputs serialize");
        text.push('\n');
        self.write(name, text)
    }

    /// Registers files written by library code.
    pub fn adopt(&mut self, paths: impl IntoIterator<Item = PathBuf>) {
        self.written.extend(paths);
    }

    /// Removes everything this run created.
    pub fn discard(self) {
        if !self.dir_existed {
            let _ = fs::remove_dir_all(&self.dir);
            return;
        }
        for p in &self.written {
            let _ = fs::remove_file(p);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

pub fn digest_file(path: &Path) -> Result<InputDigest> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

/// Provenance header written next to every run's outputs.
#[derive(Clone, Debug, Serialize)]
pub struct RunMeta<'a, C: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'a str,
    pub config: &'a C,
    pub inputs: BTreeMap<String, InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
}

impl<'a, C: Serialize> RunMeta<'a, C> {
    pub fn new(subcommand: &'a str, config: &'a C, reproducible: bool) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            config,
            inputs: BTreeMap::new(),
            generated_at_unix: (!reproducible).then(|| {
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0)
            }),
        }
    }

    pub fn input(mut self, name: &str, path: &Path) -> Result<Self> {
        self.inputs.insert(name.to_string(), digest_file(path)?);
        Ok(self)
    }
}
