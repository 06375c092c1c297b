//! Gaussian population of sources with noisy measurements.
//!
//! A source has parameter `θ ~ N(μ, σ_D²)`. A trace measurement on it is
//! `N(θ, σ_u²)`, a reference measurement `N(θ, σ_s²)`. The same model yields
//! four likelihood ratios for "same source" against "different source",
//! depending on what is observed:
//!
//! | observed                   | function            |
//! |----------------------------|---------------------|
//! | `μ_d, e_u`                 | [`lr_ss_feature`]   |
//! | `e_u, e_s`                 | [`lr_cs_feature`]   |
//! | `μ_d, (e_u - μ_d)²`        | [`lr_ss_score`]     |
//! | `(e_u - e_s)²`             | [`lr_cs_score`]     |
//!
//! All densities are evaluated in the log domain.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{domain, stream_rng};
use crate::tolerance::TOL;

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// `ln φ(x; mean, var)`.
pub fn ln_normal_pdf(x: f64, mean: f64, var: f64) -> f64 {
    let d = x - mean;
    -0.5 * (LN_2PI + var.ln() + d * d / var)
}

fn ln_add_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `ln(φ(r; mean, var) + φ(-r; mean, var))`. The density of `Y²` at `r²`
/// for `Y ~ N(mean, var)` is this divided by `2r`; the Jacobian cancels in
/// every ratio below, which keeps `r = 0` finite.
fn ln_folded_kernel(r: f64, mean: f64, var: f64) -> f64 {
    ln_add_exp(ln_normal_pdf(r, mean, var), ln_normal_pdf(-r, mean, var))
}

fn checked_variance(name: &'static str, v: f64) -> Result<f64> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "variance must be finite and non-negative",
        });
    }
    if v < TOL.min_variance {
        log::warn!("{name} = {v} clamped to {}", TOL.min_variance);
        return Ok(TOL.min_variance);
    }
    Ok(v)
}

fn checked_score(score: f64) -> Result<f64> {
    if score.is_nan() || score < 0.0 || score.is_infinite() {
        return Err(Error::InvalidParameter {
            name: "score",
            value: score,
            reason: "squared distance must be finite and non-negative",
        });
    }
    Ok(score)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSourceModel {
    mu: f64,
    var_d: f64,
    var_u: f64,
    var_s: f64,
}

impl GaussianSourceModel {
    /// Variances below `TOL.min_variance` are clamped up to it.
    pub fn new(mu: f64, var_d: f64, var_u: f64, var_s: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mu",
                value: mu,
                reason: "population mean must be finite",
            });
        }
        Ok(Self {
            mu,
            var_d: checked_variance("var_d", var_d)?,
            var_u: checked_variance("var_u", var_u)?,
            var_s: checked_variance("var_s", var_s)?,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn var_d(&self) -> f64 {
        self.var_d
    }

    pub fn var_u(&self) -> f64 {
        self.var_u
    }

    pub fn var_s(&self) -> f64 {
        self.var_s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SourceHypothesis {
    SameSource,
    DifferentSource,
}

impl SourceHypothesis {
    pub fn label(self) -> &'static str {
        match self {
            Self::SameSource => "same_source",
            Self::DifferentSource => "different_source",
        }
    }
}

/// Whether the known source's parameter is part of the observed data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scenario {
    Common,
    Specific,
}

/// How the reference source parameter `μ_d` is chosen per case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SourceDraw {
    /// `μ_d ~ N(μ, σ_D²)`.
    Population,
    /// The same `μ_d` for every case.
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementPair {
    /// Trace measurement.
    pub e_u: f64,
    /// Reference measurement.
    pub e_s: f64,
    /// Reference source parameter; only present in specific-source data.
    pub mu_d: Option<f64>,
}

/// Draws one pair with `μ_d` sampled from the population.
pub fn sample_pair<R: Rng + ?Sized>(
    model: &GaussianSourceModel,
    hypothesis: SourceHypothesis,
    scenario: Scenario,
    rng: &mut R,
) -> MeasurementPair {
    sample_pair_from(model, hypothesis, scenario, SourceDraw::Population, rng)
}

pub fn sample_pair_from<R: Rng + ?Sized>(
    model: &GaussianSourceModel,
    hypothesis: SourceHypothesis,
    scenario: Scenario,
    source: SourceDraw,
    rng: &mut R,
) -> MeasurementPair {
    let mut normal = |mean: f64, var: f64| {
        let z: f64 = rng.sample(StandardNormal);
        mean + var.sqrt() * z
    };
    let mu_d = match source {
        SourceDraw::Population => normal(model.mu, model.var_d),
        SourceDraw::Fixed(m) => m,
    };
    let e_s = normal(mu_d, model.var_s);
    let trace_source = match hypothesis {
        SourceHypothesis::SameSource => mu_d,
        SourceHypothesis::DifferentSource => normal(model.mu, model.var_d),
    };
    let e_u = normal(trace_source, model.var_u);
    MeasurementPair {
        e_u,
        e_s,
        mu_d: (scenario == Scenario::Specific).then_some(mu_d),
    }
}

/// Specific-source feature LR: `φ(e_u; μ_d, σ_u²) / φ(e_u; μ, σ_D² + σ_u²)`.
/// The reference measurement adds nothing once `μ_d` is known.
pub fn lr_ss_feature(model: &GaussianSourceModel, mu_d: f64, e_u: f64) -> f64 {
    ln_lr_ss_feature(model, mu_d, e_u).exp()
}

/// Natural log of [`lr_ss_feature`]; finite where the LR itself underflows.
pub fn ln_lr_ss_feature(model: &GaussianSourceModel, mu_d: f64, e_u: f64) -> f64 {
    ln_normal_pdf(e_u, mu_d, model.var_u) - ln_normal_pdf(e_u, model.mu, model.var_d + model.var_u)
}

/// Log of the joint density of two measurements on one unobserved source,
/// with the source parameter integrated out.
fn ln_shared_source_pdf(model: &GaussianSourceModel, e1: f64, e2: f64, var_1: f64, var_2: f64) -> f64 {
    let c = model.var_d;
    let (a, b) = (c + var_1, c + var_2);
    // a·b - c² written without cancellation
    let det = var_1 * var_2 + c * (var_1 + var_2);
    let (d1, d2) = (e1 - model.mu, e2 - model.mu);
    let q = (b * d1 * d1 - 2.0 * c * d1 * d2 + a * d2 * d2) / det;
    -LN_2PI - 0.5 * det.ln() - 0.5 * q
}

/// Common-source feature LR for two measurements with noise variances
/// `var_1` and `var_2` (typically `σ_u²`, `σ_s²`).
///
/// Numerator: bivariate normal with means `(μ, μ)`, variances
/// `σ_D² + var_i` and covariance `σ_D²`. Denominator: the same marginals,
/// independent.
pub fn lr_cs_feature(
    model: &GaussianSourceModel,
    e_u1: f64,
    e_u2: f64,
    var_1: f64,
    var_2: f64,
) -> Result<f64> {
    Ok(ln_lr_cs_feature(model, e_u1, e_u2, var_1, var_2)?.exp())
}

pub fn ln_lr_cs_feature(
    model: &GaussianSourceModel,
    e_u1: f64,
    e_u2: f64,
    var_1: f64,
    var_2: f64,
) -> Result<f64> {
    let var_1 = checked_variance("var_1", var_1)?;
    let var_2 = checked_variance("var_2", var_2)?;
    let num = ln_shared_source_pdf(model, e_u1, e_u2, var_1, var_2);
    let den = ln_normal_pdf(e_u1, model.mu, model.var_d + var_1)
        + ln_normal_pdf(e_u2, model.mu, model.var_d + var_2);
    Ok(num - den)
}

/// Common-source score LR for `score = (e_u1 - e_u2)²`.
///
/// The difference is `N(0, v)` with `v = var_1 + var_2` for one source and
/// `v + 2σ_D²` for two, so the score is `v·χ²_1` in both cases and
/// `ln LR = ½ ln(w/v) - score/(2v) + score/(2w)`.
pub fn lr_cs_score(model: &GaussianSourceModel, score: f64, var_1: f64, var_2: f64) -> Result<f64> {
    Ok(ln_lr_cs_score(model, score, var_1, var_2)?.exp())
}

pub fn ln_lr_cs_score(model: &GaussianSourceModel, score: f64, var_1: f64, var_2: f64) -> Result<f64> {
    let score = checked_score(score)?;
    let v = checked_variance("var_1", var_1)? + checked_variance("var_2", var_2)?;
    let w = v + 2.0 * model.var_d;
    let r = score.sqrt();
    Ok(ln_folded_kernel(r, 0.0, v) - ln_folded_kernel(r, 0.0, w))
}

/// Specific-source score LR for `score = (e_u - μ_d)²` given `μ_d`.
///
/// Same source: `e_u - μ_d ~ N(0, σ_u²)`. Different source:
/// `e_u - μ_d ~ N(μ - μ_d, σ_D² + σ_u²)`, so the scaled score is noncentral
/// χ²_1 with noncentrality `(μ - μ_d)² / (σ_D² + σ_u²)`.
pub fn lr_ss_score(model: &GaussianSourceModel, mu_d: f64, score: f64) -> Result<f64> {
    Ok(ln_lr_ss_score(model, mu_d, score)?.exp())
}

pub fn ln_lr_ss_score(model: &GaussianSourceModel, mu_d: f64, score: f64) -> Result<f64> {
    let score = checked_score(score)?;
    let r = score.sqrt();
    let same = ln_folded_kernel(r, 0.0, model.var_u);
    let different = ln_folded_kernel(r, model.mu - mu_d, model.var_d + model.var_u);
    Ok(same - different)
}

/// Two known sources `A`, `B` and a trace `e_x`, with `e_x ~ N(θ_A, var_a)`
/// under `H_A` and `e_x ~ N(θ_B, var_b)` under `H_B`.
///
/// The LRs anchored on either source use different data, so they differ.
/// Updating on both squared distances gives the same LR in either order, and
/// it equals the LR of `e_x` itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnchoredCoherence {
    /// LR of `H_A` vs `H_B` from `(θ_A, (e_x - θ_A)²)`.
    pub lr_anchor_a: f64,
    /// LR of `H_A` vs `H_B` from `(θ_B, (e_x - θ_B)²)`.
    pub lr_anchor_b: f64,
    /// Anchored on A, then updated with the distance to B.
    pub lr_a_then_b: f64,
    /// Anchored on B, then updated with the distance to A.
    pub lr_b_then_a: f64,
    /// `φ(e_x; θ_A, var_a) / φ(e_x; θ_B, var_b)`.
    pub lr_full: f64,
}

impl AnchoredCoherence {
    /// Relative gap between the two orderings.
    pub fn order_gap(&self) -> f64 {
        relative_gap(self.lr_a_then_b, self.lr_b_then_a)
    }

    /// Relative gap between the two single-anchor LRs.
    pub fn anchor_gap(&self) -> f64 {
        relative_gap(self.lr_anchor_a, self.lr_anchor_b)
    }
}

fn relative_gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Per-hypothesis trace laws for the anchored demo.
#[derive(Clone, Copy)]
struct TraceLaw {
    mean: f64,
    var: f64,
}

/// `ln P(dist² to anchor | H)` up to the shared Jacobian.
fn ln_anchor_kernel(e_x: f64, anchor: f64, law: TraceLaw) -> f64 {
    ln_folded_kernel((e_x - anchor).abs(), law.mean - anchor, law.var)
}

/// Log-probability, under `law`, that the root of `(x - anchor)² = s`
/// consistent with the second distance is the observed one.
fn ln_branch_given_anchor(e_x: f64, anchor: f64, other: f64, law: TraceLaw) -> f64 {
    if e_x == anchor || anchor == other {
        // both roots agree with the second distance; it carries no news
        return 0.0;
    }
    ln_normal_pdf(e_x, law.mean, law.var) - ln_anchor_kernel(e_x, anchor, law)
}

pub fn anchored_coherence_demo(
    theta_a: f64,
    theta_b: f64,
    var_a: f64,
    var_b: f64,
    e_x: f64,
) -> Result<AnchoredCoherence> {
    let ha = TraceLaw {
        mean: theta_a,
        var: checked_variance("var_a", var_a)?,
    };
    let hb = TraceLaw {
        mean: theta_b,
        var: checked_variance("var_b", var_b)?,
    };
    let anchor_a = ln_anchor_kernel(e_x, theta_a, ha) - ln_anchor_kernel(e_x, theta_a, hb);
    let anchor_b = ln_anchor_kernel(e_x, theta_b, ha) - ln_anchor_kernel(e_x, theta_b, hb);
    let b_given_a = ln_branch_given_anchor(e_x, theta_a, theta_b, ha)
        - ln_branch_given_anchor(e_x, theta_a, theta_b, hb);
    let a_given_b = ln_branch_given_anchor(e_x, theta_b, theta_a, ha)
        - ln_branch_given_anchor(e_x, theta_b, theta_a, hb);
    let full = ln_normal_pdf(e_x, ha.mean, ha.var) - ln_normal_pdf(e_x, hb.mean, hb.var);
    Ok(AnchoredCoherence {
        lr_anchor_a: anchor_a.exp(),
        lr_anchor_b: anchor_b.exp(),
        lr_a_then_b: (anchor_a + b_given_a).exp(),
        lr_b_then_a: (anchor_b + a_given_b).exp(),
        lr_full: full.exp(),
    })
}

/// One simulated case with the natural logs of all four LRs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToyRow {
    pub case_id: u64,
    pub mu_d: f64,
    pub e_u: f64,
    pub e_s: f64,
    pub ln_lr_ss_feature: f64,
    pub ln_lr_cs_feature: f64,
    pub ln_lr_ss_score: f64,
    pub ln_lr_cs_score: f64,
}

impl ToyRow {
    pub fn evaluate(model: &GaussianSourceModel, case_id: u64, mu_d: f64, e_u: f64, e_s: f64) -> Result<Self> {
        Ok(Self {
            case_id,
            mu_d,
            e_u,
            e_s,
            ln_lr_ss_feature: ln_lr_ss_feature(model, mu_d, e_u),
            ln_lr_cs_feature: ln_lr_cs_feature(model, e_u, e_s, model.var_u, model.var_s)?,
            ln_lr_ss_score: ln_lr_ss_score(model, mu_d, (e_u - mu_d).powi(2))?,
            ln_lr_cs_score: ln_lr_cs_score(model, (e_u - e_s).powi(2), model.var_u, model.var_s)?,
        })
    }
}

/// Settings for [`figure_experiment`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToyExperiment {
    pub n_cases: u64,
    pub hypothesis: SourceHypothesis,
    pub source: SourceDraw,
    pub seed: u64,
}

/// Simulates `n_cases` triples `(μ_d, e_u, e_s)` and evaluates every LR on
/// the part of the data it uses. Case `i` draws from its own random stream,
/// so the output is independent of the thread count.
pub fn figure_experiment(model: &GaussianSourceModel, cfg: &ToyExperiment) -> Result<Vec<ToyRow>> {
    if cfg.n_cases == 0 {
        return Err(Error::InvalidParameter {
            name: "n_cases",
            value: 0.0,
            reason: "need at least one case",
        });
    }
    let stream = match cfg.hypothesis {
        SourceHypothesis::SameSource => domain::TOY_SAME_SOURCE,
        SourceHypothesis::DifferentSource => domain::TOY_DIFFERENT_SOURCE,
    };
    (0..cfg.n_cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, stream, i);
            let pair = sample_pair_from(model, cfg.hypothesis, Scenario::Specific, cfg.source, &mut rng);
            let mu_d = pair.mu_d.expect("specific scenario");
            ToyRow::evaluate(model, i, mu_d, pair.e_u, pair.e_s)
        })
        .collect()
}
