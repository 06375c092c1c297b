use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Verify,
    Toy,
    Kinship,
    Scoring,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Verify => "verify",
            Kind::Toy => "toy",
            Kind::Kinship => "kinship",
            Kind::Scoring => "scoring",
        }
    }

    fn default_cases(self) -> u64 {
        match self {
            Kind::Verify => 1000,
            Kind::Toy | Kind::Kinship => 10_000,
            Kind::Scoring => 200,
        }
    }
}

/// Keys accepted in a config file. Everything is optional; command-line
/// flags win over file values.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub cases: Option<u64>,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub workers: Option<usize>,
    pub freq_table: Option<PathBuf>,
    pub canned: Option<String>,
    pub mu: Option<f64>,
    pub var_d: Option<f64>,
    pub var_u: Option<f64>,
    pub var_s: Option<f64>,
    pub mu_d: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Fills unset fields of `self` from `base`.
    fn or(self, base: FileConfig) -> FileConfig {
        FileConfig {
            seed: self.seed.or(base.seed),
            cases: self.cases.or(base.cases),
            out: self.out.or(base.out),
            report: self.report.or(base.report),
            workers: self.workers.or(base.workers),
            freq_table: self.freq_table.or(base.freq_table),
            canned: self.canned.or(base.canned),
            mu: self.mu.or(base.mu),
            var_d: self.var_d.or(base.var_d),
            var_u: self.var_u.or(base.var_u),
            var_s: self.var_s.or(base.var_s),
            mu_d: self.mu_d.or(base.mu_d),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub kind: Kind,
    pub seed: u64,
    pub cases: u64,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub workers: Option<usize>,
    pub freq_table: Option<PathBuf>,
    pub canned: Option<String>,
    pub mu: f64,
    pub var_d: f64,
    pub var_u: f64,
    pub var_s: f64,
    pub mu_d: Option<f64>,
    /// Test hook: name of a check whose inequality is negated.
    pub corrupt_check: Option<String>,
}

impl Config {
    /// Defaults for `kind`, the model of the toy study and seed 1.
    pub fn new(kind: Kind) -> Self {
        Self {
            kind,
            seed: 1,
            cases: kind.default_cases(),
            out: None,
            report: None,
            workers: None,
            freq_table: None,
            canned: None,
            mu: 10.0,
            var_d: 10.0,
            var_u: 2.0,
            var_s: 1.0,
            mu_d: None,
            corrupt_check: None,
        }
    }

    /// Merges `flags` over the optional config file and validates.
    pub fn resolve(kind: Kind, file: Option<&Path>, flags: FileConfig, corrupt_check: Option<String>) -> Result<Self> {
        let merged = match file {
            Some(p) => flags.or(FileConfig::load(p)?),
            None => flags,
        };
        let d = Config::new(kind);
        let cfg = Config {
            kind,
            seed: merged.seed.unwrap_or(d.seed),
            cases: merged.cases.unwrap_or(d.cases),
            out: merged.out,
            report: merged.report,
            workers: merged.workers,
            freq_table: merged.freq_table,
            canned: merged.canned,
            mu: merged.mu.unwrap_or(d.mu),
            var_d: merged.var_d.unwrap_or(d.var_d),
            var_u: merged.var_u.unwrap_or(d.var_u),
            var_s: merged.var_s.unwrap_or(d.var_s),
            mu_d: merged.mu_d,
            corrupt_check,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cases == 0 {
            return Err(CliError::Config("cases must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(CliError::Config("workers must be at least 1".into()));
        }
        if self.freq_table.is_some() && self.kind != Kind::Kinship {
            return Err(CliError::Config("freq_table applies to kinship only".into()));
        }
        if self.canned.is_some() && self.kind != Kind::Toy {
            return Err(CliError::Config("canned applies to toy only".into()));
        }
        if let Some(c) = &self.canned {
            if crate::toy::canned(c).is_none() {
                return Err(CliError::Config(format!(
                    "unknown canned config {c:?}; expected one of {}",
                    crate::toy::CANNED.join(", ")
                )));
            }
        }
        if let Some(p) = &self.freq_table {
            if !p.exists() {
                return Err(CliError::Config(format!("frequency table {} does not exist", p.display())));
            }
        }
        Ok(())
    }
}
