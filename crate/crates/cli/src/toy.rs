//! The Gaussian toy study.

use infolr::gaussian::{
    figure_experiment, lr_cs_feature, lr_ss_feature, GaussianSourceModel, SourceDraw, SourceHypothesis, ToyExperiment,
    ToyRow,
};
use serde_json::json;

use crate::config::Config;
use crate::report::{num, Check, RunReport};
use crate::stats::{self, LN_10};
use crate::verify::finish;

/// Fixed source and reference variance of a canned configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Canned {
    pub source: SourceDraw,
    pub var_s: f64,
}

pub const CANNED: &[&str] = &["corrected", "neumann-case-1", "neumann-case-2", "neumann-case-3"];

pub fn canned(name: &str) -> Option<Canned> {
    let (source, var_s) = match name {
        "corrected" => (SourceDraw::Population, 1.0),
        "neumann-case-1" => (SourceDraw::Fixed(9.0), 1.0),
        "neumann-case-2" => (SourceDraw::Fixed(0.0), 1.0),
        "neumann-case-3" => (SourceDraw::Fixed(9.0), 1e-5),
        _ => return None,
    };
    Some(Canned { source, var_s })
}

const SPOT_MU_D: f64 = 0.0;
const SPOT_E: f64 = 5.0;
const SPOT_SS: f64 = 0.0134;
const SPOT_CS: f64 = 5.555;
const SPOT_TOL: f64 = 0.01;
pub const TAIL_THRESHOLDS: [f64; 2] = [10.0, 100.0];

pub const VARIANTS: [&str; 4] = ["lr_ss_feature", "lr_cs_feature", "lr_ss_score", "lr_cs_score"];

/// Base-10 log LRs of one row in [`VARIANTS`] order.
pub fn log10_lrs(row: &ToyRow) -> [f64; 4] {
    [row.ln_lr_ss_feature, row.ln_lr_cs_feature, row.ln_lr_ss_score, row.ln_lr_cs_score].map(|l| l / LN_10)
}

pub struct ToyOutput {
    pub report: RunReport,
    pub csv: String,
}

pub fn run_toy(cfg: &Config) -> Result<ToyOutput, infolr::Error> {
    let preset = cfg.canned.as_deref().and_then(canned);
    let (source, var_s) = match preset {
        Some(c) => (c.source, c.var_s),
        None => (cfg.mu_d.map_or(SourceDraw::Population, SourceDraw::Fixed), cfg.var_s),
    };
    let model = GaussianSourceModel::new(cfg.mu, cfg.var_d, cfg.var_u, var_s)?;
    let run = |hypothesis| {
        figure_experiment(
            &model,
            &ToyExperiment {
                n_cases: cfg.cases,
                hypothesis,
                source,
                seed: cfg.seed,
            },
        )
    };
    let same = run(SourceHypothesis::SameSource)?;
    let different = run(SourceHypothesis::DifferentSource)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "case_id",
        "hypothesis",
        "mu_d",
        "e_u",
        "e_s",
        "log10_lr_ss_feature",
        "log10_lr_cs_feature",
        "log10_lr_ss_score",
        "log10_lr_cs_score",
    ])
    .expect("in-memory write");
    let labelled = same
        .iter()
        .map(|r| (SourceHypothesis::SameSource, r))
        .chain(different.iter().map(|r| (SourceHypothesis::DifferentSource, r)));
    for (case_id, (h, r)) in labelled.enumerate() {
        let mut rec = vec![case_id.to_string(), h.label().to_string()];
        rec.extend([r.mu_d, r.e_u, r.e_s].iter().map(f64::to_string));
        rec.extend(log10_lrs(r).iter().map(f64::to_string));
        w.write_record(&rec).expect("in-memory write");
    }
    let csv = finish(w);

    let mut report = RunReport::new("toy", cfg.seed, cfg.cases);
    let population = source == SourceDraw::Population;
    let logs = |rows: &[ToyRow], v: usize| -> Vec<f64> { rows.iter().map(|r| log10_lrs(r)[v]).collect() };

    // worked example, always on the reference parameters
    let reference = GaussianSourceModel::new(10.0, 10.0, 2.0, 1.0)?;
    let spot_ss = lr_ss_feature(&reference, SPOT_MU_D, SPOT_E);
    let spot_cs = lr_cs_feature(&reference, SPOT_E, SPOT_E, 2.0, 1.0)?;
    report.checks.push(Check::relative("spot_lr_ss_feature", spot_ss, SPOT_SS, SPOT_TOL));
    report.checks.push(Check::relative("spot_lr_cs_feature", spot_cs, SPOT_CS, SPOT_TOL));
    report.summary.insert(
        "spot_pair".into(),
        json!({"mu_d": SPOT_MU_D, "e_u": SPOT_E, "e_s": SPOT_E, "lr_ss_feature": spot_ss, "lr_cs_feature": spot_cs}),
    );

    // Only the specific-source LRs are true LRs when the source is fixed.
    let n = cfg.cases as usize;
    let mut tails = serde_json::Map::new();
    for (v, name) in VARIANTS.iter().enumerate() {
        let applies = population || name.starts_with("lr_ss");
        let h1 = logs(&same, v);
        let h2 = logs(&different, v);
        for t in TAIL_THRESHOLDS {
            let lt = t.log10();
            let low = stats::fraction(&h1, |l| l <= -lt);
            let high = stats::fraction(&h2, |l| l >= lt);
            tails.insert(format!("{name}_h1_at_most_1/{t}"), num(low));
            tails.insert(format!("{name}_h2_at_least_{t}"), num(high));
            if applies {
                let bound = stats::tail_allowance(t, n);
                report.checks.push(Check::at_most(format!("tail_{name}_h1_at_most_1/{t}"), low, bound, 0.0));
                report.checks.push(Check::at_most(format!("tail_{name}_h2_at_least_{t}"), high, bound, 0.0));
            }
        }
    }
    report.summary.insert("tail_fractions".into(), tails.into());

    let mut cllr = serde_json::Map::new();
    for (v, name) in VARIANTS.iter().enumerate() {
        cllr.insert(name.to_string(), num(stats::empirical_cllr(&logs(&same, v), &logs(&different, v))));
    }
    report.summary.insert("cllr_bits".into(), cllr.into());
    if population {
        let (diff, se) = stats::paired_cllr_difference((&logs(&same, 0), &logs(&different, 0)), (&logs(&same, 1), &logs(&different, 1)));
        report
            .summary
            .insert("cllr_ss_minus_cs_feature".into(), json!({"difference": num(diff), "standard_error": num(se)}));
        report.checks.push(Check::at_most("cllr_ss_feature_at_most_cs_feature", diff, 0.0, 3.0 * se));
    }

    let mu_d: Vec<f64> = same.iter().chain(&different).map(|r| r.mu_d).collect();
    let var = stats::variance(&mu_d);
    report.summary.insert("mu_d".into(), json!({"mean": num(stats::mean(&mu_d)), "variance": num(var)}));
    if population {
        // four standard errors of a normal sample variance
        let tol = 4.0 * (2.0 / (mu_d.len() as f64 - 1.0)).sqrt();
        report.checks.push(Check::relative("mu_d_variance", var, model.var_d(), tol));
    }

    Ok(ToyOutput { report, csv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Kind;

    #[test]
    fn every_canned_name_resolves() {
        for name in CANNED {
            assert!(canned(name).is_some());
        }
        assert!(canned("corrected ").is_none());
    }

    #[test]
    fn fixed_source_fills_the_column() {
        let mut cfg = Config::new(Kind::Toy);
        cfg.cases = 50;
        cfg.canned = Some("neumann-case-1".into());
        let out = run_toy(&cfg).unwrap();
        let mut r = csv::Reader::from_reader(out.csv.as_bytes());
        let mut rows = 0;
        for rec in r.records() {
            assert_eq!(&rec.unwrap()[2], "9");
            rows += 1;
        }
        assert_eq!(rows, 100);
        assert!(out.report.check("cllr_ss_feature_at_most_cs_feature").is_none());
    }
}
