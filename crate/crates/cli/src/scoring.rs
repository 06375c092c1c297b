//! The scoring-rule suite on its own.

use crate::config::Config;
use crate::report::{num, RunReport};
use crate::stats;
use crate::suite::Suite;
use crate::verify::{scoring_cases, scoring_checks, scoring_csv};

pub struct ScoringOutput {
    pub report: RunReport,
    pub csv: String,
}

pub fn run_scoring(cfg: &Config) -> Result<ScoringOutput, infolr::Error> {
    let cases = scoring_cases(cfg.seed, cfg.cases as usize)?;
    let mut suite = Suite::new(cfg.corrupt_check.as_deref());
    scoring_checks(&mut suite, &cases);
    let mut report = RunReport::new("scoring", cfg.seed, cfg.cases);
    report.checks = suite.checks;
    let bits: Vec<f64> = cases.iter().map(|c| c.cllr_bits).collect();
    report.summary.insert("mean_cllr_bits".into(), num(stats::mean(&bits)));
    Ok(ScoringOutput {
        report,
        csv: scoring_csv(&cases),
    })
}
