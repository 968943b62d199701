// SPDX-License-Identifier: Apache-2.0

//! Layered run configuration: defaults, then the flat TOML file, then
//! environment variables and flags (clap already ranks flags over env).

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Keys every config file may carry besides the subcommand's own.
pub const GLOBAL_KEYS: [&str; 2] = ["jobs", "reproducible"];

/// Reads a flat TOML document (no tables) into a JSON object.
pub fn read_config_file(path: &Path) -> Result<Map<String, Value>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let table: toml::Table =
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let mut out = Map::new();
    for (key, value) in table {
        if value.is_table() {
            return Err(Error::Config(format!(
                "{}: key {key:?} is a table; the config file must be flat",
                path.display()
            )));
        }
        let json = serde_json::to_value(&value).map_err(|e| Error::Config(e.to_string()))?;
        out.insert(key, json);
    }
    Ok(out)
}

/// Parses a flag value through the type's serde name, so flags, env vars
/// and config files all accept the same spellings.
pub fn serde_name<T: DeserializeOwned>(s: &str) -> std::result::Result<T, String> {
    serde_json::from_value(Value::String(s.to_string())).map_err(|e| e.to_string())
}

/// Builds the effective config `C` from its defaults, the config file keys
/// and the command-line layer (`None` fields count as not given).
pub fn layered<C, A>(file: Option<&Map<String, Value>>, cli: &A) -> Result<C>
where
    C: Serialize + DeserializeOwned + Default,
    A: Serialize,
{
    let Value::Object(mut merged) = serde_json::to_value(C::default()).expect("config serializes")
    else {
        unreachable!("config structs serialize to objects")
    };
    if let Some(file) = file {
        for (key, value) in file {
            if merged.contains_key(key) {
                merged.insert(key.clone(), value.clone());
            } else if !GLOBAL_KEYS.contains(&key.as_str()) {
                let mut known: Vec<&str> = merged.keys().map(String::as_str).collect();
                known.extend(GLOBAL_KEYS);
                return Err(Error::Config(format!(
                    "unknown config key {key:?} (expected one of: {})",
                    known.join(", ")
                )));
            }
        }
    }
    let Value::Object(given) = serde_json::to_value(cli).expect("flags serialize") else {
        unreachable!("flag structs serialize to objects")
    };
    for (key, value) in given {
        if !value.is_null() {
            merged.insert(key, value);
        }
    }
    serde_json::from_value(Value::Object(merged)).map_err(|e| Error::Config(e.to_string()))
}
