use std::path::{Path, PathBuf};

use serde::Deserialize;

/// Environment variable naming a default config file.
pub const CONFIG_ENV: &str = "JOHNSON_CONFIG";

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Truncation degree for Magnus expansions.
    pub cap: usize,
    /// Entry bound for the perturbation part of Lagrangian scans.
    pub height: usize,
    /// Default output format for `region`.
    pub format: Option<String>,
    pub verbosity: u8,
}

impl Default for Config {
    fn default() -> Self {
        Config { cap: 8, height: 2, format: None, verbosity: 0 }
    }
}

impl Config {
    pub fn load(explicit: Option<&Path>) -> Result<Config, String> {
        let path: Option<PathBuf> = match explicit {
            Some(p) => Some(p.to_path_buf()),
            None => std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from),
        };
        let cfg = match path {
            None => Config::default(),
            Some(p) => {
                let text = std::fs::read_to_string(&p).map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
                serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", p.display()))?
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.cap < 2 {
            return Err(format!("cap must be at least 2, got {}", self.cap));
        }
        Ok(())
    }
}
