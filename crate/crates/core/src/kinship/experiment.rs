use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{domain, stream_rng};

use super::genotype::{ParentPair, ibs_score, sample_child, sample_founder};
use super::lr::{SiblingMethod, parentage_locus_lrs, sibling_locus_lrs};
use super::score::{KinshipHypothesis, SiblingScoreModel};
use super::table::FrequencyTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KinshipExperiment {
    pub n_cases: u64,
    pub hypothesis: KinshipHypothesis,
    pub loci_full: usize,
    pub loci_reduced: usize,
    pub seed: u64,
}

impl KinshipExperiment {
    pub fn new(n_cases: u64, hypothesis: KinshipHypothesis, seed: u64) -> Self {
        Self { n_cases, hypothesis, loci_full: 15, loci_reduced: 10, seed }
    }
}

/// One simulated pair `(X, Y)`. Reduced quantities use the first
/// `loci_reduced` loci; the parentage LR compares Y with X's parents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinshipRow {
    pub case_id: u64,
    pub ibs_reduced: u32,
    pub lr_score_reduced: f64,
    pub lr_feature_reduced: f64,
    pub lr_feature_full: f64,
    pub lr_parentage_reduced: f64,
}

/// Simulates `n_cases` pairs under one hypothesis. Under siblings X and Y are
/// children of the same parents; otherwise Y has its own, independent parents.
pub fn kinship_experiment(table: &FrequencyTable, cfg: &KinshipExperiment) -> Result<Vec<KinshipRow>> {
    if cfg.n_cases == 0 {
        return Err(Error::InvalidParameter {
            name: "n_cases",
            value: 0.0,
            reason: "need at least one case",
        });
    }
    if cfg.loci_reduced == 0 || cfg.loci_reduced > cfg.loci_full {
        return Err(Error::InvalidParameter {
            name: "loci_reduced",
            value: cfg.loci_reduced as f64,
            reason: "must lie in 1..=loci_full",
        });
    }
    let full = table.prefix(cfg.loci_full)?;
    let reduced: Vec<usize> = (0..cfg.loci_reduced).collect();
    let score_model = SiblingScoreModel::exact(&full, &reduced)?;
    let stream = match cfg.hypothesis {
        KinshipHypothesis::Siblings => domain::KINSHIP_SIBLINGS,
        KinshipHypothesis::Unrelated => domain::KINSHIP_UNRELATED,
    };
    (0..cfg.n_cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, stream, i);
            let parents = ParentPair::new(sample_founder(&full, &mut rng), sample_founder(&full, &mut rng))?;
            let x = sample_child(&parents, &mut rng);
            let y = match cfg.hypothesis {
                KinshipHypothesis::Siblings => sample_child(&parents, &mut rng),
                KinshipHypothesis::Unrelated => {
                    let own = ParentPair::new(sample_founder(&full, &mut rng), sample_founder(&full, &mut rng))?;
                    sample_child(&own, &mut rng)
                }
            };
            let per_locus = sibling_locus_lrs(&full, &x, &y, SiblingMethod::Ibd)?;
            let k = cfg.loci_reduced;
            let (x_r, y_r) = (x.prefix(k), y.prefix(k));
            let ibs = ibs_score(&x_r, &y_r)?;
            Ok(KinshipRow {
                case_id: i,
                ibs_reduced: ibs,
                lr_score_reduced: score_model.lr(ibs as usize)?,
                lr_feature_reduced: per_locus[..k].iter().product(),
                lr_feature_full: per_locus.iter().product(),
                lr_parentage_reduced: parentage_locus_lrs(&full, &parents.prefix(k), &y_r)?.iter().product(),
            })
        })
        .collect()
}
