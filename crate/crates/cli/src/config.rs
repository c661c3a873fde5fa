//! Run configuration read from JSON.

use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// Grid sizes used by the acceptance criteria.
    #[default]
    Full,
    /// Smaller grids for quick runs. Tolerances are unchanged.
    Light,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub profile: Profile,
    /// Replaces every default tolerance.
    pub tolerance: Option<f64>,
    /// Per check id, takes precedence over `tolerance`.
    pub tolerances: BTreeMap<String, f64>,
    /// Random pairs per algebra in the BCH oracle check.
    pub bch_pairs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 20240, profile: Profile::Full, tolerance: None, tolerances: BTreeMap::new(), bch_pairs: 1000 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("config error: {0}")]
    Invalid(String),
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| {
            let (line, column) = (e.line(), e.column());
            let full = e.to_string();
            let msg = full.strip_suffix(&format!(" at line {line} column {column}")).unwrap_or(&full).to_string();
            ConfigError::Parse { line, column, msg }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let bad = |t: f64| !(t >= 0.0 && t.is_finite());
        if self.tolerance.is_some_and(bad) {
            return Err(ConfigError::Invalid("tolerance must be finite and non-negative".into()));
        }
        if let Some((k, _)) = self.tolerances.iter().find(|(_, t)| bad(**t)) {
            return Err(ConfigError::Invalid(format!("tolerance for {k} must be finite and non-negative")));
        }
        if self.bch_pairs == 0 {
            return Err(ConfigError::Invalid("bch_pairs must be positive".into()));
        }
        Ok(())
    }

    pub fn tolerance_for(&self, id: &str, default: f64) -> f64 {
        self.tolerances.get(id).copied().or(self.tolerance).unwrap_or(default)
    }

    pub fn light(&self) -> bool {
        self.profile == Profile::Light
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let c = Config::parse("{}").unwrap();
        assert_eq!(c.seed, 20240);
        assert_eq!(c.tolerance_for("x", 1e-3), 1e-3);
        let c = Config::parse(r#"{"tolerance": 1e-20, "tolerances": {"x": 0.5}, "profile": "light"}"#).unwrap();
        assert_eq!(c.tolerance_for("x", 1e-3), 0.5);
        assert_eq!(c.tolerance_for("y", 1e-3), 1e-20);
        assert!(c.light());
    }

    #[test]
    fn parse_errors_carry_line() {
        let e = Config::parse("{\n  \"seed\": 3,\n  \"bogus\": 1\n}").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
        let e = Config::parse("{\n\"seed\": }").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        assert!(Config::parse(r#"{"tolerance": -1}"#).is_err());
    }
}
