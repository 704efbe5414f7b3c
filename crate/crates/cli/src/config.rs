//! Flat `key = value` run configuration.
//!
//! Keys are the long flag names (`input`, `beta-start`, `measure`, ...).
//! Blank lines and lines starting with `#` are ignored. A value given on
//! the command line always wins over the file.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::UsageError;

pub const KEYS: &[&str] = &[
    "input",
    "format",
    "manifest",
    "measure",
    "beta-start",
    "beta-stop",
    "beta-step",
    "runs",
    "horizon",
    "seed",
    "output",
    "output-format",
    "denominator",
    "repetitions",
    "threads",
    "timing-repetitions",
];

#[derive(Debug, Default, Clone, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| UsageError(format!("config line {}: expected `key = value`", i + 1)))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(UsageError(format!("config line {}: unknown key {key:?}", i + 1)));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config file {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// The flag value if present, else the parsed file value.
    pub fn pick<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, UsageError>
    where
        T: FromStr,
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.raw(key).map(|v| v.parse::<T>().map_err(|e| UsageError(format!("config key {key}: {e}")))).transpose()
    }

    /// Like [`pick`](Self::pick) for a comma-separated list.
    pub fn pick_list<T>(&self, flag: Vec<T>, key: &str) -> Result<Vec<T>, UsageError>
    where
        T: FromStr,
        T::Err: Display,
    {
        if !flag.is_empty() {
            return Ok(flag);
        }
        let Some(raw) = self.raw(key) else { return Ok(Vec::new()) };
        raw.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|v| v.parse::<T>().map_err(|e| UsageError(format!("config key {key}: {e}"))))
            .collect()
    }
}
