//! Command-line driver for the verification suites and the two simulation
//! studies.

pub mod config;
pub mod error;
pub mod generate;
pub mod kinship;
pub mod report;
pub mod scoring;
pub mod stats;
pub mod suite;
pub mod toy;
pub mod verify;

use std::path::Path;
use std::time::Instant;

use serde_json::json;

use crate::config::{Config, Kind};
use crate::error::{CliError, Result};
use crate::report::RunReport;
use crate::suite::Suite;

/// Report and CSV of one run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: RunReport,
    pub csv: String,
}

pub fn run_verify(cfg: &Config) -> infolr::Result<RunOutput> {
    let n = cfg.cases as usize;
    let decisions = verify::decision_cases(cfg.seed, n)?;
    let lrs = verify::lr_cases(cfg.seed, n)?;
    let scoring = verify::scoring_cases(cfg.seed, (n / 5).max(1))?;
    let mut suite = Suite::new(cfg.corrupt_check.as_deref());
    verify::decision_checks(&mut suite, &decisions);
    verify::lr_checks(&mut suite, &lrs);
    verify::scoring_checks(&mut suite, &scoring);
    let mut report = RunReport::new("verify", cfg.seed, cfg.cases);
    report.checks = suite.checks;
    report.summary.insert("decision".into(), verify::summary_value(&decisions));
    report.summary.insert("lr_distributions".into(), json!(lrs.len()));
    report.summary.insert("scoring_triples".into(), json!(scoring.len()));
    Ok(RunOutput {
        report,
        csv: verify::decision_csv(&decisions),
    })
}

/// Runs the configured subcommand on a pool of `cfg.workers` threads (all
/// cores when unset).
pub fn run(cfg: &Config) -> Result<RunOutput> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let start = Instant::now();
    log::info!("{} seed={} cases={}", cfg.kind.name(), cfg.seed, cfg.cases);
    let mut out = pool.install(|| -> infolr::Result<RunOutput> {
        Ok(match cfg.kind {
            Kind::Verify => run_verify(cfg)?,
            Kind::Toy => {
                let o = toy::run_toy(cfg)?;
                RunOutput { report: o.report, csv: o.csv }
            }
            Kind::Kinship => {
                let o = kinship::run_kinship(cfg)?;
                RunOutput { report: o.report, csv: o.csv }
            }
            Kind::Scoring => {
                let o = scoring::run_scoring(cfg)?;
                RunOutput { report: o.report, csv: o.csv }
            }
        })
    })?;
    out.report.duration_secs = start.elapsed().as_secs_f64();
    Ok(out)
}

/// Runs and writes the CSV and JSON report where configured.
pub fn execute(cfg: &Config) -> Result<RunOutput> {
    let out = run(cfg)?;
    if let Some(path) = &cfg.out {
        write(path, out.csv.as_bytes())?;
    }
    if let Some(path) = &cfg.report {
        let text = serde_json::to_string_pretty(&out.report).expect("report serializes");
        write(path, text.as_bytes())?;
    }
    Ok(out)
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    log::info!("wrote {}", path.display());
    Ok(())
}
