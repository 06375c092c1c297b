//! The sibling study on a frequency table.

use infolr::kinship::{kinship_experiment, FrequencyTable, KinshipExperiment, KinshipHypothesis, KinshipRow, SiblingScoreModel};
use serde_json::json;

use crate::config::Config;
use crate::report::{num, Check, RunReport};
use crate::stats;
use crate::verify::finish;

pub const LOCI_FULL: usize = 15;
pub const LOCI_REDUCED: usize = 10;
pub const TAIL_THRESHOLDS: [f64; 2] = [10.0, 100.0];
const IDENTITY_TOL: f64 = 1e-9;

/// Base-10 logs of `(score_10, feature_10, feature_15, parentage_10)`.
pub fn log10_lrs(row: &KinshipRow) -> [f64; 4] {
    [row.lr_score_reduced, row.lr_feature_reduced, row.lr_feature_full, row.lr_parentage_reduced].map(f64::log10)
}

/// The three log-LR differences shown as histograms, as functions of
/// [`log10_lrs`].
pub const DIFFERENCES: [(&str, usize, usize); 3] = [
    ("feature_10_minus_score_10", 1, 0),
    ("feature_15_minus_feature_10", 2, 1),
    ("parentage_10_minus_feature_10", 3, 1),
];

pub struct KinshipOutput {
    pub report: RunReport,
    pub csv: String,
}

pub fn run_kinship(cfg: &Config) -> Result<KinshipOutput, infolr::Error> {
    let table = match &cfg.freq_table {
        Some(p) => FrequencyTable::from_path(p)?,
        None => FrequencyTable::bundled(),
    };
    let run = |hypothesis| {
        kinship_experiment(
            &table,
            &KinshipExperiment {
                n_cases: cfg.cases,
                hypothesis,
                loci_full: LOCI_FULL,
                loci_reduced: LOCI_REDUCED,
                seed: cfg.seed,
            },
        )
    };
    let siblings = run(KinshipHypothesis::Siblings)?;
    let unrelated = run(KinshipHypothesis::Unrelated)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "case_id",
        "hypothesis",
        "ibs_10",
        "log10_lr_score_10",
        "log10_lr_feature_10",
        "log10_lr_feature_15",
        "log10_lr_parentage_10",
    ])
    .expect("in-memory write");
    let labelled = siblings
        .iter()
        .map(|r| (KinshipHypothesis::Siblings, r))
        .chain(unrelated.iter().map(|r| (KinshipHypothesis::Unrelated, r)));
    for (case_id, (h, r)) in labelled.enumerate() {
        let mut rec = vec![case_id.to_string(), h.label().to_string(), r.ibs_reduced.to_string()];
        rec.extend(log10_lrs(r).iter().map(f64::to_string));
        w.write_record(&rec).expect("in-memory write");
    }
    let csv = finish(w);

    let mut report = RunReport::new("kinship", cfg.seed, cfg.cases);
    let n = cfg.cases as usize;
    for (label, rows) in [("siblings", &siblings), ("unrelated", &unrelated)] {
        report.checks.push(Check::at_most(format!("rows_{label}"), (rows.len() as f64 - n as f64).abs(), 0.0, 0.0));
    }

    let diffs = |rows: &[KinshipRow], d: usize| -> Vec<f64> {
        let (_, a, b) = DIFFERENCES[d];
        rows.iter().map(|r| {
            let l = log10_lrs(r);
            l[a] - l[b]
        })
        .collect()
    };

    // Residual LRs of extra data are LRs in their own right, so their tails
    // obey the same bounds. Parentage is only an LR against unrelated.
    let mut tails = serde_json::Map::new();
    for t in TAIL_THRESHOLDS {
        let lt = t.log10();
        let bound = stats::tail_allowance(t, n);
        for (d, (name, _, _)) in DIFFERENCES.iter().enumerate().take(2) {
            let low = stats::fraction(&diffs(&siblings, d), |x| x <= -lt);
            let high = stats::fraction(&diffs(&unrelated, d), |x| x >= lt);
            tails.insert(format!("{name}_siblings_at_most_-{lt}"), num(low));
            tails.insert(format!("{name}_unrelated_at_least_{lt}"), num(high));
            report.checks.push(Check::at_most(format!("tail_{name}_siblings_at_most_1/{t}"), low, bound, 0.0));
            report.checks.push(Check::at_most(format!("tail_{name}_unrelated_at_least_{t}"), high, bound, 0.0));
        }
        let parentage: Vec<f64> = unrelated.iter().map(|r| log10_lrs(r)[3]).collect();
        let high = stats::fraction(&parentage, |x| x >= lt);
        tails.insert(format!("parentage_10_unrelated_at_least_{lt}"), num(high));
        report.checks.push(Check::at_most(format!("tail_parentage_10_unrelated_at_least_{t}"), high, bound, 0.0));
    }
    report.summary.insert("tail_fractions".into(), tails.into());

    let reduced: Vec<usize> = (0..LOCI_REDUCED).collect();
    let scores = SiblingScoreModel::exact(&table.prefix(LOCI_FULL)?, &reduced)?;
    let mut total = 0.0;
    for s in 0..=scores.max_score() {
        let p = scores.unrelated.prob(s);
        if p > 0.0 {
            total += p * scores.lr(s)?;
        }
    }
    report.checks.push(Check::at_most("score_lr_mean_under_unrelated", (total - 1.0).abs(), 0.0, IDENTITY_TOL));

    let mut histograms = serde_json::Map::new();
    for (d, (name, _, _)) in DIFFERENCES.iter().enumerate() {
        histograms.insert(
            name.to_string(),
            json!({
                "siblings": stats::histogram(diffs(&siblings, d)),
                "unrelated": stats::histogram(diffs(&unrelated, d)),
            }),
        );
    }
    report.summary.insert("histograms".into(), histograms.into());
    let exclusions = unrelated.iter().filter(|r| r.lr_parentage_reduced == 0.0).count();
    report.summary.insert("parentage_exclusions_unrelated".into(), json!(exclusions));
    Ok(KinshipOutput { report, csv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Kind;

    #[test]
    fn small_run_passes_and_counts_rows() {
        let mut cfg = Config::new(Kind::Kinship);
        cfg.cases = 200;
        let out = run_kinship(&cfg).unwrap();
        assert_eq!(out.csv.lines().count(), 401);
        assert!(out.report.check("score_lr_mean_under_unrelated").unwrap().passed);
    }
}
