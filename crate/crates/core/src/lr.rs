//! Likelihood ratios between two hypotheses.
//!
//! An [`LrDistribution`] is the law of `LR(E)` under each hypothesis. It is
//! built from a discrete evidence model by grouping outcomes with the same
//! ratio. Grouping uses exact `f64` equality; ratios of identical inputs give
//! identical doubles, and no tolerance bucketing is applied.
//!
//! `LR = +∞` marks outcomes impossible under the second hypothesis and
//! `LR = 0` outcomes impossible under the first. The conventions `1/∞ = 0`
//! and `0·∞ = 0` extend every identity below to those atoms.

use serde::{Deserialize, Serialize};

use crate::decision::{Coarsening, DiscreteEvidenceModel, ProbabilityVector};
use crate::error::{Error, Result};
use crate::tolerance::TOL;

/// `P(e | H_1) / P(e | H_2)` with the infinity convention. `None` for 0/0.
pub fn likelihood_ratio(p1: f64, p2: f64) -> Option<f64> {
    match (p1 > 0.0, p2 > 0.0) {
        (_, true) => Some(p1 / p2),
        (true, false) => Some(f64::INFINITY),
        (false, false) => None,
    }
}

/// One support point of an LR distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LrAtom {
    pub lr: f64,
    /// `ℓ_1(lr) = P(LR = lr | H_1)`
    pub mass_h1: f64,
    /// `ℓ_2(lr) = P(LR = lr | H_2)`
    pub mass_h2: f64,
}

/// Law of the likelihood ratio under both hypotheses, sorted by increasing LR.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LrDistribution {
    atoms: Vec<LrAtom>,
}

/// Second hypothesis for [`LrDistribution::from_model`].
#[derive(Debug, Clone, Copy)]
pub enum Alternative<'a> {
    Hypothesis(usize),
    /// The union of every hypothesis other than the first, weighted by the
    /// prior: `P(e | H_r) = Σ_{i≠h1} π_i P(e | H_i) / Σ_{i≠h1} π_i`.
    UnionOfRest(&'a ProbabilityVector),
}

impl LrDistribution {
    /// Validates the atoms and sorts them by LR. Atoms with equal LR are
    /// merged.
    pub fn new(mut atoms: Vec<LrAtom>) -> Result<Self> {
        for a in &atoms {
            if a.lr.is_nan() || a.lr < 0.0 {
                return Err(Error::InvalidLrDistribution(format!("support point {}", a.lr)));
            }
            if !(a.mass_h1 >= 0.0 && a.mass_h2 >= 0.0) {
                return Err(Error::InvalidLrDistribution("negative mass".into()));
            }
            let consistent = if a.lr.is_infinite() {
                a.mass_h2 == 0.0
            } else if a.lr == 0.0 {
                a.mass_h1 == 0.0
            } else {
                let expected = a.lr * a.mass_h2;
                (a.mass_h1 - expected).abs() <= TOL.exact * a.mass_h1.max(expected).max(1.0)
            };
            if !consistent {
                return Err(Error::InvalidLrDistribution(format!(
                    "atom at {} has masses ({}, {}) that do not satisfy ℓ1 = x·ℓ2",
                    a.lr, a.mass_h1, a.mass_h2
                )));
            }
        }
        atoms.sort_by(|a, b| a.lr.total_cmp(&b.lr));
        let mut merged: Vec<LrAtom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match merged.last_mut() {
                Some(last) if last.lr == a.lr => {
                    last.mass_h1 += a.mass_h1;
                    last.mass_h2 += a.mass_h2;
                }
                _ => merged.push(a),
            }
        }
        for (name, total) in [
            ("ℓ1", merged.iter().map(|a| a.mass_h1).sum::<f64>()),
            ("ℓ2", merged.iter().map(|a| a.mass_h2).sum::<f64>()),
        ] {
            if (total - 1.0).abs() > TOL.exact {
                return Err(Error::InvalidLrDistribution(format!("{name} sums to {total}")));
            }
        }
        Ok(Self { atoms: merged })
    }

    /// Distribution of `LR(E)` of hypothesis `h1` against `alternative`.
    ///
    /// Outcomes with probability zero under both hypotheses have no defined
    /// LR and are dropped; they carry no mass under either hypothesis.
    pub fn from_model(
        model: &DiscreteEvidenceModel,
        h1: usize,
        alternative: Alternative<'_>,
    ) -> Result<Self> {
        let n = model.n_hypotheses();
        let check = |i: usize| {
            if i >= n {
                Err(Error::IndexOutOfRange {
                    context: "hypotheses",
                    index: i,
                    len: n,
                })
            } else {
                Ok(())
            }
        };
        check(h1)?;
        let second: Vec<f64> = match alternative {
            Alternative::Hypothesis(h2) => {
                check(h2)?;
                if h2 == h1 {
                    return Err(Error::InvalidModel("hypotheses must differ".into()));
                }
                model.row(h2).to_vec()
            }
            Alternative::UnionOfRest(prior) => {
                if prior.len() != n {
                    return Err(Error::DimensionMismatch {
                        context: "union prior",
                        expected: n,
                        actual: prior.len(),
                    });
                }
                let rest: f64 = (0..n).filter(|&i| i != h1).map(|i| prior.get(i)).sum();
                if rest <= 0.0 {
                    return Err(Error::InvalidProbability(
                        "union of remaining hypotheses has prior probability zero".into(),
                    ));
                }
                (0..model.n_outcomes())
                    .map(|k| {
                        (0..n)
                            .filter(|&i| i != h1)
                            .map(|i| prior.get(i) * model.likelihood(i, k))
                            .sum::<f64>()
                            / rest
                    })
                    .collect()
            }
        };
        let atoms = model
            .row(h1)
            .iter()
            .zip(&second)
            .filter_map(|(&p1, &p2)| {
                likelihood_ratio(p1, p2).map(|lr| LrAtom {
                    lr,
                    mass_h1: p1,
                    mass_h2: p2,
                })
            })
            .collect();
        Self::new(atoms)
    }

    pub fn atoms(&self) -> &[LrAtom] {
        &self.atoms
    }

    pub fn support(&self) -> impl Iterator<Item = f64> + '_ {
        self.atoms.iter().map(|a| a.lr)
    }

    fn mass_where(&self, keep: impl Fn(f64) -> bool, h1: bool) -> f64 {
        self.atoms
            .iter()
            .filter(|a| keep(a.lr))
            .map(|a| if h1 { a.mass_h1 } else { a.mass_h2 })
            .sum()
    }

    /// `P(LR ≥ t | H_1)`.
    pub fn prob_at_least_h1(&self, t: f64) -> f64 {
        self.mass_where(|x| x >= t, true)
    }

    /// `P(LR ≥ t | H_2)`.
    pub fn prob_at_least_h2(&self, t: f64) -> f64 {
        self.mass_where(|x| x >= t, false)
    }

    /// `P(LR ≤ t | H_1)`.
    pub fn prob_at_most_h1(&self, t: f64) -> f64 {
        self.mass_where(|x| x <= t, true)
    }

    /// `E_{H_1}[1/LR]` with `1/∞ = 0`. Equals `1 - ℓ_2(0)`.
    pub fn mean_inverse_lr_h1(&self) -> f64 {
        self.atoms
            .iter()
            .filter(|a| a.mass_h1 > 0.0)
            .map(|a| a.mass_h1 / a.lr)
            .sum()
    }

    /// `E_{H_2}[LR]` over the finite support. Equals `1 - ℓ_1(+∞)`.
    pub fn mean_lr_h2(&self) -> f64 {
        self.atoms
            .iter()
            .filter(|a| a.lr.is_finite())
            .map(|a| a.lr * a.mass_h2)
            .sum()
    }
}

/// Both sides of `P(LR ≥ t | H_2) = P(LR ≥ t | H_1) · E(1/LR | LR ≥ t, H_1)`.
///
/// When `P(LR ≥ t | H_1) = 0` the conditional expectation is undefined and
/// the right side is taken as 0.
pub fn tail_identity(dist: &LrDistribution, t: f64) -> Result<(f64, f64)> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "threshold must be positive",
        });
    }
    let lhs = dist.prob_at_least_h2(t);
    let p_tail = dist.prob_at_least_h1(t);
    let rhs = if p_tail > 0.0 {
        let conditional_mean_inverse: f64 = dist
            .atoms()
            .iter()
            .filter(|a| a.lr >= t)
            .map(|a| a.mass_h1 / p_tail / a.lr)
            .sum();
        p_tail * conditional_mean_inverse
    } else {
        0.0
    };
    Ok((lhs, rhs))
}

/// `(P(LR ≤ 1/t | H_1), P(LR ≥ t | H_2))`. Each is at most `1/t`.
pub fn tail_bounds(dist: &LrDistribution, t: f64) -> Result<(f64, f64)> {
    if t.is_nan() || t < 1.0 {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "bound applies for t ≥ 1",
        });
    }
    Ok((dist.prob_at_most_h1(1.0 / t), dist.prob_at_least_h2(t)))
}

/// The two actions of the threshold rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwoAction {
    /// Act as if the first hypothesis holds.
    A1,
    /// Act as if the second hypothesis holds.
    A2,
}

/// Flags raised when the posterior odds are the indeterminate `0·∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdWarning {
    /// Prior odds 0 met an infinite LR; decided A2.
    ZeroPriorInfiniteLr,
    /// Prior odds ∞ met a zero LR; decided A1.
    InfinitePriorZeroLr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdVerdict {
    pub action: TwoAction,
    pub warning: Option<ThresholdWarning>,
}

/// Costs `c_11 = c_22 = 0`, `c_21 = 1`, `c_12 = gamma`, and prior odds
/// `r = P(H_1)/P(H_2)`. Choose A1 iff the (posterior) odds are at least
/// `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdDecision {
    gamma: f64,
    prior_odds: f64,
}

impl ThresholdDecision {
    pub fn new(gamma: f64, prior_odds: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "cost ratio must be positive and finite",
            });
        }
        if prior_odds.is_nan() || prior_odds < 0.0 {
            return Err(Error::InvalidParameter {
                name: "prior_odds",
                value: prior_odds,
                reason: "odds must be non-negative",
            });
        }
        Ok(Self { gamma, prior_odds })
    }

    /// Odds from a two-hypothesis prior; `P(H_2) = 0` gives `r = +∞`.
    pub fn from_prior(gamma: f64, prior: &ProbabilityVector) -> Result<Self> {
        if prior.len() != 2 {
            return Err(Error::DimensionMismatch {
                context: "threshold prior",
                expected: 2,
                actual: prior.len(),
            });
        }
        let odds = likelihood_ratio(prior.get(0), prior.get(1)).unwrap_or(0.0);
        Self::new(gamma, odds)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn prior_odds(&self) -> f64 {
        self.prior_odds
    }

    /// `gamma / r`, the smallest LR that switches the decision to A1.
    pub fn lr_threshold(&self) -> f64 {
        if self.prior_odds == 0.0 {
            f64::INFINITY
        } else {
            self.gamma / self.prior_odds
        }
    }

    /// Decision before (`None`) or after observing a likelihood ratio.
    pub fn decide(&self, lr: Option<f64>) -> Result<ThresholdVerdict> {
        let r = self.prior_odds;
        let Some(lr) = lr else {
            return Ok(verdict(r >= self.gamma, None));
        };
        if lr.is_nan() || lr < 0.0 {
            return Err(Error::InvalidParameter {
                name: "lr",
                value: lr,
                reason: "likelihood ratio must be non-negative",
            });
        }
        if r == 0.0 && lr.is_infinite() {
            return Ok(verdict(false, Some(ThresholdWarning::ZeroPriorInfiniteLr)));
        }
        if r.is_infinite() && lr == 0.0 {
            return Ok(verdict(true, Some(ThresholdWarning::InfinitePriorZeroLr)));
        }
        Ok(verdict(lr * r >= self.gamma, None))
    }
}

fn verdict(a1: bool, warning: Option<ThresholdWarning>) -> ThresholdVerdict {
    if let Some(w) = warning {
        log::warn!("indeterminate posterior odds resolved by convention: {w:?}");
    }
    ThresholdVerdict {
        action: if a1 { TwoAction::A1 } else { TwoAction::A2 },
        warning,
    }
}

/// Expected cost of the threshold rule applied after observing the LR, for
/// the case where the prior alone would choose A2 (`r < gamma`):
/// `P(H_1)(1 - s) + P(H_2) γ P(LR ≥ γ/r | H_2)` with `s = P(LR ≥ γ/r | H_1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCosts {
    /// `s`, the probability under `H_1` that the evidence switches to A1.
    pub switch_prob_h1: f64,
    /// `P(LR ≥ γ/r | H_2)`, never above `s·r/γ`.
    pub switch_prob_h2: f64,
    /// Cost of deciding on the prior alone, `P(H_1)`.
    pub prior_cost: f64,
    pub posterior_cost: f64,
}

pub fn threshold_costs(
    td: &ThresholdDecision,
    prior: &ProbabilityVector,
    dist: &LrDistribution,
) -> Result<ThresholdCosts> {
    if prior.len() != 2 {
        return Err(Error::DimensionMismatch {
            context: "threshold prior",
            expected: 2,
            actual: prior.len(),
        });
    }
    if td.prior_odds() >= td.gamma() {
        return Err(Error::InvalidParameter {
            name: "prior_odds",
            value: td.prior_odds(),
            reason: "cost formula covers prior odds below gamma",
        });
    }
    let t = td.lr_threshold();
    let s = dist.prob_at_least_h1(t);
    let q = dist.prob_at_least_h2(t);
    Ok(ThresholdCosts {
        switch_prob_h1: s,
        switch_prob_h2: q,
        prior_cost: prior.get(0),
        posterior_cost: prior.get(0) * (1.0 - s) + prior.get(1) * td.gamma() * q,
    })
}

/// LR of the full outcome split into the LR of its score and the LR of the
/// outcome given the score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainedLr {
    pub full: f64,
    pub score: f64,
    pub residual: f64,
}

/// `LR(e) = LR(g(e)) · LR(e | g(e))` for one outcome.
///
/// If the score alone already excludes a hypothesis (`LR(g(e))` is 0 or
/// `+∞`) the residual is set to 1: the conditional law under the excluded
/// hypothesis is undefined and conditioning cannot move the ratio further.
pub fn chained_lr(
    model: &DiscreteEvidenceModel,
    coarsening: &Coarsening,
    h1: usize,
    h2: usize,
    outcome: usize,
) -> Result<ChainedLr> {
    coarsening.check_outcomes(model.n_outcomes())?;
    for &h in &[h1, h2] {
        if h >= model.n_hypotheses() {
            return Err(Error::IndexOutOfRange {
                context: "hypotheses",
                index: h,
                len: model.n_hypotheses(),
            });
        }
    }
    if outcome >= model.n_outcomes() {
        return Err(Error::IndexOutOfRange {
            context: "outcomes",
            index: outcome,
            len: model.n_outcomes(),
        });
    }
    let (p1, p2) = (model.likelihood(h1, outcome), model.likelihood(h2, outcome));
    let full = likelihood_ratio(p1, p2).ok_or(Error::UndefinedLr { outcome })?;
    let members = coarsening.members(coarsening.label_of(outcome));
    let g1: f64 = members.iter().map(|&k| model.likelihood(h1, k)).sum();
    let g2: f64 = members.iter().map(|&k| model.likelihood(h2, k)).sum();
    let score = likelihood_ratio(g1, g2).ok_or(Error::UndefinedLr { outcome })?;
    let residual = if score == 0.0 || score.is_infinite() {
        1.0
    } else {
        likelihood_ratio(p1 / g1, p2 / g2).ok_or(Error::UndefinedLr { outcome })?
    };
    Ok(ChainedLr {
        full,
        score,
        residual,
    })
}
