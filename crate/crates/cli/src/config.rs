//! Plain `key=value` configuration files. Flags always take precedence over
//! file values; the file path comes from `--config` or the
//! `CONOLLY_KIT_CONFIG` environment variable.

use std::collections::HashMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};

/// Environment variable naming the default config file.
pub const CONFIG_ENV_VAR: &str = "CONOLLY_KIT_CONFIG";

/// Parsed configuration file contents.
#[derive(Debug, Default)]
pub struct ConfigMap {
    entries: HashMap<String, String>,
}

impl ConfigMap {
    /// Loads the explicit path, or the environment-variable path, or an
    /// empty map when neither is set.
    pub fn load(explicit: Option<&Path>) -> Result<Self> {
        let path = match explicit {
            Some(path) => Some(path.to_path_buf()),
            None => std::env::var_os(CONFIG_ENV_VAR).map(Into::into),
        };
        match path {
            None => Ok(ConfigMap::default()),
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading config file {}", path.display()))?;
                Self::parse(&text).with_context(|| format!("config file {}", path.display()))
            }
        }
    }

    /// Parses `key=value` lines; `#` lines are comments, blank lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key=value", line_no + 1);
            };
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ConfigMap { entries })
    }

    /// Typed lookup of one key.
    pub fn get<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => match raw.parse() {
                Ok(value) => Ok(Some(value)),
                Err(err) => bail!("config key {key}={raw}: {err}"),
            },
        }
    }

    /// Flag value if given, else the config value, else `None`.
    pub fn pick<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match flag {
            Some(value) => Ok(Some(value)),
            None => self.get(key),
        }
    }

    /// Flag value if given, else the config value, else the default.
    pub fn pick_or<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.pick(flag, key)?.unwrap_or(default))
    }

    /// Boolean switch: a passed flag wins, otherwise the config value.
    pub fn pick_switch(&self, flag: bool, key: &str) -> Result<bool> {
        if flag {
            return Ok(true);
        }
        Ok(self.get(key)?.unwrap_or(false))
    }
}
