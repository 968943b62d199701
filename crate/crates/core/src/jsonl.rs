// SPDX-License-Identifier: Apache-2.0

//! Line-oriented JSON input and output with line-numbered schema errors.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// Parses every non-blank line of `reader` as one `T`.
pub fn read_jsonl<T: DeserializeOwned>(reader: impl BufRead, origin: &str) -> Result<Vec<T>> {
    Ok(read_jsonl_numbered(reader, origin)?
        .into_iter()
        .map(|(_, v)| v)
        .collect())
}

/// Like [`read_jsonl`], keeping each record's 1-based line number.
pub fn read_jsonl_numbered<T: DeserializeOwned>(
    reader: impl BufRead,
    origin: &str,
) -> Result<Vec<(usize, T)>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let schema = |message: String| Error::Schema {
            path: origin.to_string(),
            line: i + 1,
            message,
        };
        let line = line.map_err(|e| schema(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let value = serde_json::from_str(&line).map_err(|e| schema(e.to_string()))?;
        out.push((i + 1, value));
    }
    Ok(out)
}

pub fn read_jsonl_file<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_jsonl(BufReader::new(file), &path.display().to_string())
}

pub fn read_jsonl_numbered_file<T: DeserializeOwned>(path: &Path) -> Result<Vec<(usize, T)>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_jsonl_numbered(BufReader::new(file), &path.display().to_string())
}

/// One compact JSON object per line, `\n` terminated.
pub fn to_jsonl_string<T: Serialize>(items: &[T]) -> String {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn write_jsonl<T: Serialize>(mut writer: impl Write, items: &[T]) -> std::io::Result<()> {
    writer.write_all(to_jsonl_string(items).as_bytes())
}
