use crate::error::{Error, Result};
use crate::tolerance::TOL;

use super::genotype::{Genotype, hwe_probability, ibs_locus};
use super::lr::sibling_conditional_ibd;
use super::table::{FrequencyTable, Locus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KinshipHypothesis {
    Siblings,
    Unrelated,
}

impl KinshipHypothesis {
    pub fn label(self) -> &'static str {
        match self {
            Self::Siblings => "siblings",
            Self::Unrelated => "unrelated",
        }
    }
}

/// Distribution of the total shared-allele count; index is the score.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreDistribution {
    probs: Vec<f64>,
}

impl ScoreDistribution {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn max_score(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn prob(&self, score: usize) -> f64 {
        self.probs.get(score).copied().unwrap_or(0.0)
    }

    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(s, p)| s as f64 * p).sum()
    }

    /// Relative frequencies of observed scores on `0..=max_score`.
    pub fn empirical(scores: &[u32], max_score: usize) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::InvalidParameter {
                name: "scores",
                value: 0.0,
                reason: "need at least one observation",
            });
        }
        let mut probs = vec![0.0; max_score + 1];
        for &s in scores {
            let slot = probs.get_mut(s as usize).ok_or(Error::IndexOutOfRange {
                context: "empirical score",
                index: s as usize,
                len: max_score + 1,
            })?;
            *slot += 1.0;
        }
        let n = scores.len() as f64;
        probs.iter_mut().for_each(|p| *p /= n);
        Ok(Self { probs })
    }

    fn convolve(&self, locus: [f64; 3]) -> Self {
        let mut probs = vec![0.0; self.probs.len() + 2];
        for (s, p) in self.probs.iter().enumerate() {
            for (k, q) in locus.iter().enumerate() {
                probs[s + k] += p * q;
            }
        }
        Self { probs }
    }
}

/// Exact P(IBS = 0, 1, 2) at one locus.
pub fn locus_ibs_distribution(locus: &Locus, hypothesis: KinshipHypothesis) -> [f64; 3] {
    let n = locus.n_alleles();
    let mut out = [0.0; 3];
    for x in Genotype::all(n) {
        let px = hwe_probability(locus, x);
        for y in Genotype::all(n) {
            let py = match hypothesis {
                KinshipHypothesis::Unrelated => hwe_probability(locus, y),
                KinshipHypothesis::Siblings => sibling_conditional_ibd(locus, x, y),
            };
            out[ibs_locus(x, y) as usize] += px * py;
        }
    }
    out
}

/// Exact total-score distribution over the loci in `loci`, assuming linkage equilibrium.
pub fn score_count_distribution(
    table: &FrequencyTable,
    hypothesis: KinshipHypothesis,
    loci: &[usize],
) -> Result<ScoreDistribution> {
    check_loci(table, loci)?;
    let dist = loci.iter().fold(ScoreDistribution { probs: vec![1.0] }, |d, &i| {
        d.convolve(locus_ibs_distribution(table.locus(i), hypothesis))
    });
    let total: f64 = dist.probs.iter().sum();
    debug_assert!((total - 1.0).abs() < TOL.sum_reject, "score mass {total}");
    Ok(dist)
}

/// Score distributions under both hypotheses for a fixed set of loci.
#[derive(Debug, Clone, PartialEq)]
pub struct SiblingScoreModel {
    pub siblings: ScoreDistribution,
    pub unrelated: ScoreDistribution,
}

impl SiblingScoreModel {
    pub fn exact(table: &FrequencyTable, loci: &[usize]) -> Result<Self> {
        Ok(Self {
            siblings: score_count_distribution(table, KinshipHypothesis::Siblings, loci)?,
            unrelated: score_count_distribution(table, KinshipHypothesis::Unrelated, loci)?,
        })
    }

    /// Built from simulated score counts instead of exact enumeration.
    pub fn empirical(siblings: &[u32], unrelated: &[u32], max_score: usize) -> Result<Self> {
        Ok(Self {
            siblings: ScoreDistribution::empirical(siblings, max_score)?,
            unrelated: ScoreDistribution::empirical(unrelated, max_score)?,
        })
    }

    pub fn max_score(&self) -> usize {
        self.siblings.max_score()
    }

    /// Siblings versus unrelated LR of a total score. Zero or infinity when
    /// only one hypothesis allows the score; an error when neither does.
    pub fn lr(&self, score: usize) -> Result<f64> {
        if score > self.max_score() {
            return Err(Error::IndexOutOfRange {
                context: "score",
                index: score,
                len: self.max_score() + 1,
            });
        }
        let (p1, p2) = (self.siblings.prob(score), self.unrelated.prob(score));
        crate::lr::likelihood_ratio(p1, p2).ok_or(Error::ImpossibleScore { score })
    }
}

pub fn lr_sibling_score(table: &FrequencyTable, score: usize, loci: &[usize]) -> Result<f64> {
    SiblingScoreModel::exact(table, loci)?.lr(score)
}

fn check_loci(table: &FrequencyTable, loci: &[usize]) -> Result<()> {
    if loci.is_empty() {
        return Err(Error::InvalidParameter {
            name: "loci",
            value: 0.0,
            reason: "need at least one locus",
        });
    }
    for (k, &i) in loci.iter().enumerate() {
        if i >= table.n_loci() {
            return Err(Error::IndexOutOfRange {
                context: "locus subset",
                index: i,
                len: table.n_loci(),
            });
        }
        if loci[..k].contains(&i) {
            return Err(Error::InvalidParameter {
                name: "loci",
                value: i as f64,
                reason: "locus listed twice",
            });
        }
    }
    Ok(())
}
