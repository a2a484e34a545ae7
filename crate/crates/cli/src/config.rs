//! Optional JSON config file; keys mirror the long flag names with `_`
//! for `-`, and flags win over file values.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::exit::CliError;

#[derive(Debug, Default)]
pub struct FileConfig {
    values: Map<String, Value>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>, allowed: &[&str]) -> Result<FileConfig, CliError> {
        let Some(path) = path else { return Ok(FileConfig::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("config {} is not JSON: {e}", path.display())))?;
        let Value::Object(values) = value else {
            return Err(CliError::usage(format!("config {} must be a JSON object", path.display())));
        };
        if let Some(bad) = values.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(CliError::usage(format!("unknown config key {bad:?}; allowed: {}", allowed.join(", "))));
        }
        Ok(FileConfig { values })
    }

    /// `flag`, else the file value under `key`.
    pub fn pick<T: DeserializeOwned>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.values.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| CliError::usage(format!("config key {key:?}: {e}"))),
        }
    }

    pub fn flag(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        Ok(flag || self.pick::<bool>(None, key)?.unwrap_or(false))
    }
}

pub fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("{name} must be positive, got {v}")))
    }
}
