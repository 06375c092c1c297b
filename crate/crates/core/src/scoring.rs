//! Scoring rules for stated probability distributions, the rule induced by
//! Bayes decisions, entropy and CLLR.
//!
//! Logarithms are natural unless a name says otherwise. `-ln 0` is `+∞`.

use crate::decision::{CostMatrix, DiscreteEvidenceModel, ProbabilityVector, bayes_decision, posteriors};
use crate::error::{Error, Result};
use crate::lr::{Alternative, LrDistribution};

/// Cost `C(H_i, q)` of stating `q` when hypothesis `i` turns out true.
pub trait ScoringRule {
    fn score(&self, hypothesis: usize, stated: &ProbabilityVector) -> Result<f64>;
}

/// `C(H_i, q) = -ln q_i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LogRule;

impl ScoringRule for LogRule {
    fn score(&self, hypothesis: usize, stated: &ProbabilityVector) -> Result<f64> {
        check_index(hypothesis, stated.len())?;
        Ok(neg_ln(stated.get(hypothesis)))
    }
}

/// `C(H_j, q) = c_{i_q, j}` where `i_q` is the Bayes decision under `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct BdRule {
    cost: CostMatrix,
}

impl BdRule {
    pub fn cost(&self) -> &CostMatrix {
        &self.cost
    }
}

impl ScoringRule for BdRule {
    fn score(&self, hypothesis: usize, stated: &ProbabilityVector) -> Result<f64> {
        check_index(hypothesis, stated.len())?;
        let bd = bayes_decision(&self.cost, stated)?;
        Ok(self.cost.cost(bd.action, hypothesis))
    }
}

/// Wraps a closure as a rule.
pub struct FnRule<F>(pub F);

impl<F> ScoringRule for FnRule<F>
where
    F: Fn(usize, &ProbabilityVector) -> f64,
{
    fn score(&self, hypothesis: usize, stated: &ProbabilityVector) -> Result<f64> {
        check_index(hypothesis, stated.len())?;
        Ok((self.0)(hypothesis, stated))
    }
}

impl<R: ScoringRule + ?Sized> ScoringRule for &R {
    fn score(&self, hypothesis: usize, stated: &ProbabilityVector) -> Result<f64> {
        (**self).score(hypothesis, stated)
    }
}

pub fn log_rule() -> LogRule {
    LogRule
}

pub fn bd_rule(cost: CostMatrix) -> BdRule {
    BdRule { cost }
}

/// `C(q' | q) = Σ_i q_i C(H_i, q')` for stated `q'` and true `q`. Hypotheses
/// with `q_i = 0` contribute nothing, even when their cost is infinite.
pub fn expected_score<R: ScoringRule + ?Sized>(
    rule: &R,
    stated: &ProbabilityVector,
    truth: &ProbabilityVector,
) -> Result<f64> {
    if stated.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            context: "stated and true distributions",
            expected: truth.len(),
            actual: stated.len(),
        });
    }
    let mut total = 0.0;
    for (i, &q) in truth.probs().iter().enumerate() {
        if q > 0.0 {
            total += q * rule.score(i, stated)?;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProprietyViolation {
    pub candidate: usize,
    pub stated: ProbabilityVector,
    pub stated_score: f64,
    pub truth_score: f64,
}

/// Outcome of [`propriety_check`]. `margins[k]` is the expected score of
/// candidate `k` minus that of the truth.
#[derive(Debug, Clone, PartialEq)]
pub struct ProprietyReport {
    pub truth_score: f64,
    pub margins: Vec<f64>,
    pub violations: Vec<ProprietyViolation>,
}

impl ProprietyReport {
    pub fn is_proper(&self) -> bool {
        self.violations.is_empty()
    }

    /// Smallest margin over candidates that differ from the truth by more
    /// than `tol` in some coordinate.
    pub fn min_margin_away_from_truth(
        &self,
        truth: &ProbabilityVector,
        candidates: &[ProbabilityVector],
        tol: f64,
    ) -> Option<f64> {
        candidates
            .iter()
            .zip(&self.margins)
            .filter(|(c, _)| c.len() == truth.len() && c.max_abs_diff(truth) > tol)
            .map(|(_, m)| *m)
            .min_by(f64::total_cmp)
    }
}

const PROPRIETY_SLACK: f64 = 1e-12;

/// Checks `C(q|q) ≤ C(q'|q) + 1e-12` for every candidate `q'`.
pub fn propriety_check<R: ScoringRule + ?Sized>(
    rule: &R,
    truth: &ProbabilityVector,
    candidates: &[ProbabilityVector],
) -> Result<ProprietyReport> {
    let truth_score = expected_score(rule, truth, truth)?;
    let mut margins = Vec::with_capacity(candidates.len());
    let mut violations = Vec::new();
    for (k, c) in candidates.iter().enumerate() {
        let s = expected_score(rule, c, truth)?;
        // inf - inf is only possible when the truth itself scores inf
        let margin = if s == truth_score { 0.0 } else { s - truth_score };
        margins.push(margin);
        if truth_score > s + PROPRIETY_SLACK {
            violations.push(ProprietyViolation {
                candidate: k,
                stated: c.clone(),
                stated_score: s,
                truth_score,
            });
        }
    }
    Ok(ProprietyReport { truth_score, margins, violations })
}

/// `-Σ π_j ln π_j` with `0 ln 0 = 0`.
pub fn entropy(pi: &ProbabilityVector) -> f64 {
    pi.probs().iter().filter(|p| **p > 0.0).map(|p| -p * p.ln()).sum()
}

/// `Σ_k P(e_k) Ent(π(e_k))`.
pub fn expected_posterior_entropy(pi: &ProbabilityVector, model: &DiscreteEvidenceModel) -> Result<f64> {
    if pi.len() != model.n_hypotheses() {
        return Err(Error::DimensionMismatch {
            context: "prior against model",
            expected: model.n_hypotheses(),
            actual: pi.len(),
        });
    }
    Ok(posteriors(pi, model).map(|(pe, post)| pe * entropy(&post)).sum())
}

/// Two-hypothesis form over the LR distribution:
/// `-π_1 E_{H1} ln P(H1|LR) - π_2 E_{H2} ln P(H2|LR)`.
pub fn expected_posterior_entropy_from_lr(prior_h1: f64, dist: &LrDistribution) -> Result<f64> {
    if !(0.0..=1.0).contains(&prior_h1) {
        return Err(Error::InvalidParameter {
            name: "prior_h1",
            value: prior_h1,
            reason: "must lie in [0, 1]",
        });
    }
    let prior_h2 = 1.0 - prior_h1;
    let mut h1 = 0.0;
    let mut h2 = 0.0;
    for a in dist.atoms() {
        // -ln P(H1 | lr) = ln(1 + π2 / (π1 lr)), and symmetrically for H2
        if a.mass_h1 > 0.0 && prior_h2 > 0.0 {
            h1 += a.mass_h1 * (prior_h2 / (prior_h1 * a.lr)).ln_1p();
        }
        if a.mass_h2 > 0.0 && prior_h1 > 0.0 {
            h2 += a.mass_h2 * (prior_h1 * a.lr / prior_h2).ln_1p();
        }
    }
    let mut total = 0.0;
    if prior_h1 > 0.0 {
        total += prior_h1 * h1;
    }
    if prior_h2 > 0.0 {
        total += prior_h2 * h2;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cllr {
    pub nats: f64,
    pub bits: f64,
}

impl Cllr {
    pub fn from_nats(nats: f64) -> Self {
        Self { nats, bits: nats / std::f64::consts::LN_2 }
    }
}

/// Expected posterior entropy from a uniform prior on two hypotheses.
pub fn cllr(model: &DiscreteEvidenceModel) -> Result<Cllr> {
    if model.n_hypotheses() != 2 {
        return Err(Error::DimensionMismatch {
            context: "CLLR hypotheses",
            expected: 2,
            actual: model.n_hypotheses(),
        });
    }
    let uniform = ProbabilityVector::uniform(2)?;
    Ok(Cllr::from_nats(expected_posterior_entropy(&uniform, model)?))
}

/// CLLR through the LR distribution of hypothesis 0 against 1.
pub fn cllr_from_lr(dist: &LrDistribution) -> Result<Cllr> {
    Ok(Cllr::from_nats(expected_posterior_entropy_from_lr(0.5, dist)?))
}

/// Convenience for two-hypothesis models.
pub fn lr_distribution_of(model: &DiscreteEvidenceModel) -> Result<LrDistribution> {
    LrDistribution::from_model(model, 0, Alternative::Hypothesis(1))
}

fn neg_ln(q: f64) -> f64 {
    if q > 0.0 { -q.ln() } else { f64::INFINITY }
}

fn check_index(hypothesis: usize, len: usize) -> Result<()> {
    if hypothesis >= len {
        return Err(Error::IndexOutOfRange {
            context: "hypotheses",
            index: hypothesis,
            len,
        });
    }
    Ok(())
}
