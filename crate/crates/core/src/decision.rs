//! Bayes decisions under a cost matrix.
//!
//! A [`ProbabilityVector`] describes belief over `n` mutually exclusive,
//! exhaustive hypotheses. A [`CostMatrix`] assigns a cost to each of `m`
//! actions under each hypothesis. A Bayes decision is any action of minimal
//! expected cost; here ties always go to the lowest action index.
//!
//! Evidence is modelled by a [`DiscreteEvidenceModel`] with finitely many
//! outcomes, so every expectation over evidence is an exact finite sum.
//! Outcomes of probability zero are allowed and simply contribute nothing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::TOL;

/// Distribution over `n` hypotheses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Validates and renormalizes `probs`.
    ///
    /// Entries must be finite and non-negative. The sum must be within
    /// `TOL.sum_reject` of 1; inside that band the vector is rescaled to sum
    /// to 1 exactly (up to rounding).
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidProbability(format!(
                "entry {p} is negative or not finite"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > TOL.sum_reject {
            return Err(Error::InvalidProbability(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        Ok(Self(probs.into_iter().map(|p| p / sum).collect()))
    }

    /// Normalizes arbitrary non-negative weights into a distribution.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::InvalidProbability(format!(
                "weights sum to {total}"
            )));
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        Ok(Self(vec![1.0 / n as f64; n]))
    }

    /// Point mass on hypothesis `index`.
    pub fn certain(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::IndexOutOfRange {
                context: "hypotheses",
                index,
                len: n,
            });
        }
        let mut p = vec![0.0; n];
        p[index] = 1.0;
        Ok(Self(p))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &ProbabilityVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<f64>> for ProbabilityVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ProbabilityVector> for Vec<f64> {
    fn from(p: ProbabilityVector) -> Self {
        p.0
    }
}

/// `m × n` matrix of costs `c[i][j]` of action `i` when hypothesis `j` holds.
/// Entries may have any sign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct CostMatrix {
    rows: Vec<Vec<f64>>,
    n_hypotheses: usize,
}

impl CostMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || n == 0 {
            return Err(Error::InvalidCost("need at least one action and one hypothesis".into()));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "cost matrix row",
                    expected: n,
                    actual: row.len(),
                });
            }
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidCost("entries must be finite".into()));
            }
        }
        Ok(Self {
            rows,
            n_hypotheses: n,
        })
    }

    /// The two-action, two-hypothesis matrix `[[0, gamma], [1, 0]]`: action 1
    /// is free under hypothesis 1, wrongly choosing it costs `gamma`, wrongly
    /// choosing action 2 costs 1.
    pub fn two_action(gamma: f64) -> Result<Self> {
        Self::new(vec![vec![0.0, gamma], vec![1.0, 0.0]])
    }

    pub fn n_actions(&self) -> usize {
        self.rows.len()
    }

    pub fn n_hypotheses(&self) -> usize {
        self.n_hypotheses
    }

    pub fn cost(&self, action: usize, hypothesis: usize) -> f64 {
        self.rows[action][hypothesis]
    }

    pub fn row(&self, action: usize) -> &[f64] {
        &self.rows[action]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Every entry multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.rows
                .iter()
                .map(|r| r.iter().map(|c| c * factor).collect())
                .collect(),
        )
    }

    /// `shift` added to every entry of column `hypothesis`.
    pub fn with_column_shift(&self, hypothesis: usize, shift: f64) -> Result<Self> {
        let mut rows = self.rows.clone();
        for r in &mut rows {
            r[hypothesis] += shift;
        }
        Self::new(rows)
    }

    fn check_dims(&self, pi: &ProbabilityVector) -> Result<()> {
        if pi.len() != self.n_hypotheses {
            return Err(Error::DimensionMismatch {
                context: "cost matrix vs probability vector",
                expected: self.n_hypotheses,
                actual: pi.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<Vec<f64>>> for CostMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<CostMatrix> for Vec<Vec<f64>> {
    fn from(c: CostMatrix) -> Self {
        c.rows
    }
}

/// Finite evidence space: `likelihood(i, k) = P(e_k | H_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteEvidenceModel {
    labels: Vec<String>,
    likelihoods: Vec<Vec<f64>>,
}

impl DiscreteEvidenceModel {
    /// One row per hypothesis, one column per outcome. Outcomes are labelled
    /// `e1, e2, ...`.
    pub fn new(likelihoods: Vec<Vec<f64>>) -> Result<Self> {
        let k = likelihoods.first().map(Vec::len).unwrap_or(0);
        let labels = (1..=k).map(|i| format!("e{i}")).collect();
        Self::with_labels(labels, likelihoods)
    }

    pub fn with_labels(labels: Vec<String>, likelihoods: Vec<Vec<f64>>) -> Result<Self> {
        if likelihoods.is_empty() || labels.is_empty() {
            return Err(Error::InvalidModel(
                "need at least one hypothesis and one outcome".into(),
            ));
        }
        for (i, row) in likelihoods.iter().enumerate() {
            if row.len() != labels.len() {
                return Err(Error::DimensionMismatch {
                    context: "evidence model row",
                    expected: labels.len(),
                    actual: row.len(),
                });
            }
            if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(Error::InvalidModel(format!(
                    "row {i} has a negative or non-finite entry"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > TOL.model_row_sum {
                return Err(Error::InvalidModel(format!("row {i} sums to {sum}")));
            }
        }
        Ok(Self {
            labels,
            likelihoods,
        })
    }

    /// Every hypothesis assigns the same distribution `row` to the outcomes.
    pub fn uninformative(n_hypotheses: usize, row: Vec<f64>) -> Result<Self> {
        Self::new(vec![row; n_hypotheses])
    }

    pub fn n_hypotheses(&self) -> usize {
        self.likelihoods.len()
    }

    pub fn n_outcomes(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `P(e_outcome | H_hypothesis)`.
    pub fn likelihood(&self, hypothesis: usize, outcome: usize) -> f64 {
        self.likelihoods[hypothesis][outcome]
    }

    pub fn row(&self, hypothesis: usize) -> &[f64] {
        &self.likelihoods[hypothesis]
    }

    /// `P(e_outcome) = Σ_i π_i P(e_outcome | H_i)`.
    pub fn evidence_probability(&self, pi: &ProbabilityVector, outcome: usize) -> f64 {
        self.likelihoods
            .iter()
            .zip(pi.probs())
            .map(|(row, p)| p * row[outcome])
            .sum()
    }

    /// True when every hypothesis assigns identical outcome probabilities.
    pub fn is_uninformative(&self) -> bool {
        self.likelihoods.windows(2).all(|w| w[0] == w[1])
    }

    fn check_prior(&self, pi: &ProbabilityVector) -> Result<()> {
        if pi.len() != self.n_hypotheses() {
            return Err(Error::DimensionMismatch {
                context: "evidence model vs probability vector",
                expected: self.n_hypotheses(),
                actual: pi.len(),
            });
        }
        Ok(())
    }

    /// Image of the model under `coarsening`: the likelihood of each score
    /// label is the total mass of the outcomes mapped onto it.
    pub fn coarsen(&self, coarsening: &Coarsening) -> Result<DiscreteEvidenceModel> {
        coarsening.check_outcomes(self.n_outcomes())?;
        let rows = self
            .likelihoods
            .iter()
            .map(|row| coarsening.push_forward(row))
            .collect();
        Self::new(rows)
    }

    /// Conditional model `P(e | g(e) = label, H_i)` over the outcomes in the
    /// given group, in their original order.
    ///
    /// Hypotheses under which the group has probability zero have an
    /// undefined conditional; they get a uniform row. Any posterior built
    /// from the group puts zero weight on such a hypothesis, so the choice
    /// never affects an expectation.
    pub fn conditional_on(
        &self,
        coarsening: &Coarsening,
        label: usize,
    ) -> Result<DiscreteEvidenceModel> {
        coarsening.check_outcomes(self.n_outcomes())?;
        let members = coarsening.members(label);
        if members.is_empty() {
            return Err(Error::IndexOutOfRange {
                context: "score labels",
                index: label,
                len: coarsening.n_labels(),
            });
        }
        let labels = members.iter().map(|&k| self.labels[k].clone()).collect();
        let rows = self
            .likelihoods
            .iter()
            .map(|row| {
                let mass: f64 = members.iter().map(|&k| row[k]).sum();
                if mass > 0.0 {
                    members.iter().map(|&k| row[k] / mass).collect()
                } else {
                    vec![1.0 / members.len() as f64; members.len()]
                }
            })
            .collect();
        Self::with_labels(labels, rows)
    }
}

/// Deterministic reduction `g` of the outcome space onto score labels
/// `0..n_labels`. Every label must be hit by at least one outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coarsening {
    map: Vec<usize>,
    n_labels: usize,
}

impl Coarsening {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n_labels = map.iter().max().map_or(0, |m| m + 1);
        for label in 0..n_labels {
            if !map.contains(&label) {
                return Err(Error::InvalidModel(format!(
                    "coarsening label {label} has no outcome"
                )));
            }
        }
        Ok(Self { map, n_labels })
    }

    pub fn identity(n_outcomes: usize) -> Self {
        Self {
            map: (0..n_outcomes).collect(),
            n_labels: n_outcomes,
        }
    }

    pub fn constant(n_outcomes: usize) -> Self {
        Self {
            map: vec![0; n_outcomes],
            n_labels: usize::from(n_outcomes > 0),
        }
    }

    pub fn label_of(&self, outcome: usize) -> usize {
        self.map[outcome]
    }

    pub fn n_labels(&self) -> usize {
        self.n_labels
    }

    pub fn members(&self, label: usize) -> Vec<usize> {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .map(|(k, _)| k)
            .collect()
    }

    pub(crate) fn push_forward(&self, row: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n_labels];
        for (k, &l) in self.map.iter().enumerate() {
            out[l] += row[k];
        }
        out
    }

    pub(crate) fn check_outcomes(&self, n_outcomes: usize) -> Result<()> {
        if self.map.len() != n_outcomes {
            return Err(Error::DimensionMismatch {
                context: "coarsening",
                expected: n_outcomes,
                actual: self.map.len(),
            });
        }
        Ok(())
    }
}

/// Chosen action and its expected cost `c(π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BayesDecision {
    pub action: usize,
    pub cost: f64,
}

/// `Σ_j c[action][j] π_j`.
pub fn expected_cost(cost: &CostMatrix, pi: &ProbabilityVector, action: usize) -> Result<f64> {
    cost.check_dims(pi)?;
    if action >= cost.n_actions() {
        return Err(Error::IndexOutOfRange {
            context: "actions",
            index: action,
            len: cost.n_actions(),
        });
    }
    Ok(linear_cost(cost.row(action), pi))
}

fn linear_cost(row: &[f64], pi: &ProbabilityVector) -> f64 {
    row.iter().zip(pi.probs()).map(|(c, p)| c * p).sum()
}

/// Minimal-expected-cost action. Ties go to the lowest index.
pub fn bayes_decision(cost: &CostMatrix, pi: &ProbabilityVector) -> Result<BayesDecision> {
    cost.check_dims(pi)?;
    let mut best = BayesDecision {
        action: 0,
        cost: linear_cost(cost.row(0), pi),
    };
    for action in 1..cost.n_actions() {
        let c = linear_cost(cost.row(action), pi);
        if c < best.cost {
            best = BayesDecision { action, cost: c };
        }
    }
    Ok(best)
}

/// Posterior `π(e_k)` after observing outcome `outcome`.
pub fn posterior(
    pi: &ProbabilityVector,
    model: &DiscreteEvidenceModel,
    outcome: usize,
) -> Result<ProbabilityVector> {
    model.check_prior(pi)?;
    if outcome >= model.n_outcomes() {
        return Err(Error::IndexOutOfRange {
            context: "outcomes",
            index: outcome,
            len: model.n_outcomes(),
        });
    }
    let evidence = model.evidence_probability(pi, outcome);
    if evidence <= 0.0 {
        return Err(Error::ImpossibleEvidence { outcome });
    }
    let post = pi
        .probs()
        .iter()
        .enumerate()
        .map(|(i, p)| p * model.likelihood(i, outcome) / evidence)
        .collect();
    Ok(ProbabilityVector(post))
}

/// Iterates `(P(e_k), π(e_k))` over the outcomes of positive probability.
pub(crate) fn posteriors<'a>(
    pi: &'a ProbabilityVector,
    model: &'a DiscreteEvidenceModel,
) -> impl Iterator<Item = (f64, ProbabilityVector)> + 'a {
    (0..model.n_outcomes()).filter_map(move |k| {
        let pe = model.evidence_probability(pi, k);
        (pe > 0.0).then(|| (pe, posterior(pi, model, k).expect("positive evidence")))
    })
}

/// `Σ_k P(e_k) π(e_k)`. Equals the prior.
pub fn expected_posterior(
    pi: &ProbabilityVector,
    model: &DiscreteEvidenceModel,
) -> Result<ProbabilityVector> {
    model.check_prior(pi)?;
    let mut acc = vec![0.0; pi.len()];
    for (pe, post) in posteriors(pi, model) {
        for (a, q) in acc.iter_mut().zip(post.probs()) {
            *a += pe * q;
        }
    }
    Ok(ProbabilityVector(acc))
}

/// `E[c(π(E))] = Σ_k P(e_k) c(π(e_k))`, the average cost of deciding after
/// seeing the evidence. Never exceeds `c(π)`.
pub fn expected_bd_cost(
    cost: &CostMatrix,
    pi: &ProbabilityVector,
    model: &DiscreteEvidenceModel,
) -> Result<f64> {
    cost.check_dims(pi)?;
    model.check_prior(pi)?;
    let mut total = 0.0;
    for (pe, post) in posteriors(pi, model) {
        total += pe * bayes_decision(cost, &post)?.cost;
    }
    Ok(total)
}

/// Both sides of the concavity of `c`: `(c(Σ t_k p_k), Σ t_k c(p_k))`.
/// The first is always at least the second.
pub fn mixture_concavity_check(
    cost: &CostMatrix,
    components: &[ProbabilityVector],
    weights: &[f64],
) -> Result<(f64, f64)> {
    if components.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            context: "mixture weights",
            expected: components.len(),
            actual: weights.len(),
        });
    }
    let t = ProbabilityVector::new(weights.to_vec())?;
    let n = cost.n_hypotheses();
    let mut mix = vec![0.0; n];
    let mut rhs = 0.0;
    for (p, &w) in components.iter().zip(t.probs()) {
        cost.check_dims(p)?;
        for (m, q) in mix.iter_mut().zip(p.probs()) {
            *m += w * q;
        }
        rhs += w * bayes_decision(cost, p)?.cost;
    }
    let lhs = bayes_decision(cost, &ProbabilityVector::new(mix)?)?.cost;
    Ok((lhs, rhs))
}

/// Both sides of the two-stage inequality for one value of the coarse
/// evidence: `(E_{e | g(e)=label}[c(π(e))], c(π(g(e)=label)))`.
///
/// Returns `None` when the label has probability zero under `pi`.
pub fn chained_bd_costs(
    cost: &CostMatrix,
    pi: &ProbabilityVector,
    model: &DiscreteEvidenceModel,
    coarsening: &Coarsening,
    label: usize,
) -> Result<Option<(f64, f64)>> {
    let coarse = model.coarsen(coarsening)?;
    if coarse.evidence_probability(pi, label) <= 0.0 {
        return Ok(None);
    }
    let after_score = posterior(pi, &coarse, label)?;
    let slice = model.conditional_on(coarsening, label)?;
    let refined = expected_bd_cost(cost, &after_score, &slice)?;
    Ok(Some((refined, bayes_decision(cost, &after_score)?.cost)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(p: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(p.to_vec()).unwrap()
    }

    fn zero_one() -> CostMatrix {
        CostMatrix::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    fn two_outcome_model() -> DiscreteEvidenceModel {
        DiscreteEvidenceModel::new(vec![vec![0.8, 0.2], vec![0.4, 0.6]]).unwrap()
    }

    #[test]
    fn probability_vector_renormalizes_within_band() {
        let p = pv(&[0.5, 0.5 + 5e-10]);
        assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(ProbabilityVector::new(vec![0.5, 0.5 + 2e-9]).is_err());
        assert!(ProbabilityVector::new(vec![1.1, -0.1]).is_err());
        assert!(ProbabilityVector::new(vec![]).is_err());
        assert!(ProbabilityVector::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn cost_matrix_rejects_ragged_or_infinite() {
        assert!(CostMatrix::new(vec![vec![0.0, 1.0], vec![1.0]]).is_err());
        assert!(CostMatrix::new(vec![vec![f64::INFINITY]]).is_err());
        assert!(CostMatrix::new(vec![]).is_err());
    }

    #[test]
    fn expected_cost_examples() {
        assert_eq!(expected_cost(&zero_one(), &pv(&[1.0, 0.0]), 0).unwrap(), 0.0);
        assert!((expected_cost(&zero_one(), &pv(&[0.9, 0.1]), 1).unwrap() - 0.9).abs() < 1e-15);
        let c = CostMatrix::new(vec![vec![0.0, 3.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(expected_cost(&c, &pv(&[0.5, 0.5]), 0).unwrap(), 1.5);
    }

    #[test]
    fn expected_cost_dimension_errors() {
        let err = expected_cost(&zero_one(), &pv(&[0.2, 0.3, 0.5]), 0).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        let err = expected_cost(&zero_one(), &pv(&[0.5, 0.5]), 2).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { .. }));
    }

    #[test]
    fn bayes_decision_examples() {
        let bd = bayes_decision(&zero_one(), &pv(&[0.9, 0.1])).unwrap();
        assert_eq!(bd.action, 0);
        assert!((bd.cost - 0.1).abs() < 1e-15);

        // prior odds exactly at gamma: tie goes to the first action
        let c = CostMatrix::two_action(2.0).unwrap();
        let bd = bayes_decision(&c, &pv(&[2.0 / 3.0, 1.0 / 3.0])).unwrap();
        assert_eq!(bd.action, 0);
        assert!((bd.cost - 2.0 / 3.0).abs() < 1e-15);

        let c = CostMatrix::new(vec![vec![5.0, 5.0], vec![5.0, 5.0]]).unwrap();
        let bd = bayes_decision(&c, &pv(&[0.3, 0.7])).unwrap();
        assert_eq!((bd.action, bd.cost), (0, 5.0));
    }

    #[test]
    fn posterior_examples() {
        let m = DiscreteEvidenceModel::new(vec![vec![0.6, 0.4], vec![0.2, 0.8]]).unwrap();
        let p = posterior(&pv(&[0.5, 0.5]), &m, 0).unwrap();
        assert!((p.get(0) - 0.75).abs() < 1e-15 && (p.get(1) - 0.25).abs() < 1e-15);

        let p = posterior(&pv(&[1.0, 0.0]), &m, 1).unwrap();
        assert_eq!(p.probs(), &[1.0, 0.0]);

        let p = posterior(&pv(&[0.5, 0.5]), &two_outcome_model(), 0).unwrap();
        assert!((p.get(0) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn posterior_of_impossible_outcome_is_an_error() {
        let m = DiscreteEvidenceModel::new(vec![vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap();
        let err = posterior(&pv(&[1.0, 0.0]), &m, 1).unwrap_err();
        assert_eq!(err, Error::ImpossibleEvidence { outcome: 1 });
    }

    #[test]
    fn expected_posterior_examples() {
        let e = expected_posterior(&pv(&[0.5, 0.5]), &two_outcome_model()).unwrap();
        assert!(e.max_abs_diff(&pv(&[0.5, 0.5])) < 1e-15);
        let e = expected_posterior(&pv(&[1.0, 0.0]), &two_outcome_model()).unwrap();
        assert_eq!(e.probs(), &[1.0, 0.0]);
        let u = DiscreteEvidenceModel::uninformative(3, vec![0.1, 0.0, 0.9]).unwrap();
        let prior = pv(&[0.2, 0.3, 0.5]);
        assert!(expected_posterior(&prior, &u).unwrap().max_abs_diff(&prior) < 1e-15);
    }

    #[test]
    fn expected_bd_cost_examples() {
        let prior = pv(&[0.5, 0.5]);
        let v = expected_bd_cost(&zero_one(), &prior, &two_outcome_model()).unwrap();
        assert!((v - 0.3).abs() < 1e-15);

        let u = DiscreteEvidenceModel::uninformative(2, vec![0.25, 0.75]).unwrap();
        let v = expected_bd_cost(&zero_one(), &prior, &u).unwrap();
        assert_eq!(v, bayes_decision(&zero_one(), &prior).unwrap().cost);

        let revealing = DiscreteEvidenceModel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(expected_bd_cost(&zero_one(), &prior, &revealing).unwrap(), 0.0);
    }

    #[test]
    fn mixture_concavity_examples() {
        let p = pv(&[0.3, 0.7]);
        let (l, r) = mixture_concavity_check(&zero_one(), &[p], &[1.0]).unwrap();
        assert_eq!(l, r);

        let comps = [pv(&[1.0, 0.0]), pv(&[0.0, 1.0])];
        let (l, r) = mixture_concavity_check(&zero_one(), &comps, &[0.5, 0.5]).unwrap();
        assert_eq!((l, r), (0.5, 0.0));

        let flat = CostMatrix::new(vec![vec![2.5, 2.5], vec![2.5, 2.5]]).unwrap();
        let (l, r) = mixture_concavity_check(&flat, &comps, &[0.2, 0.8]).unwrap();
        assert_eq!((l, r), (2.5, 2.5));
    }

    #[test]
    fn coarsen_and_condition() {
        let m = DiscreteEvidenceModel::new(vec![vec![0.5, 0.3, 0.2], vec![0.2, 0.2, 0.6]]).unwrap();
        let g = Coarsening::new(vec![0, 0, 1]).unwrap();
        let coarse = m.coarsen(&g).unwrap();
        assert!((coarse.likelihood(0, 0) - 0.8).abs() < 1e-15);
        assert!((coarse.likelihood(1, 0) - 0.4).abs() < 1e-15);
        let slice = m.conditional_on(&g, 0).unwrap();
        assert_eq!(slice.n_outcomes(), 2);
        assert!((slice.likelihood(0, 0) - 0.625).abs() < 1e-15);
        assert!((slice.likelihood(1, 0) - 0.5).abs() < 1e-15);
        assert!(Coarsening::new(vec![0, 2]).is_err());
    }

    #[test]
    fn chained_costs_never_increase() {
        let m = DiscreteEvidenceModel::new(vec![vec![0.5, 0.3, 0.2], vec![0.2, 0.2, 0.6]]).unwrap();
        let g = Coarsening::new(vec![0, 0, 1]).unwrap();
        let c = CostMatrix::two_action(0.7).unwrap();
        for label in 0..2 {
            let (refined, coarse) = chained_bd_costs(&c, &pv(&[0.4, 0.6]), &m, &g, label)
                .unwrap()
                .unwrap();
            assert!(refined <= coarse + 1e-12);
        }
    }
}
