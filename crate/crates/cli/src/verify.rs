//! Randomized checks of the decision, likelihood-ratio and scoring
//! invariants over enumerated models.

use std::io::Write as _;

use infolr::decision::{chained_bd_costs, mixture_concavity_check, Coarsening};
use infolr::lr::{chained_lr, tail_bounds, tail_identity, threshold_costs, Alternative, TwoAction};
use infolr::rng::{domain, stream_rng};
use infolr::scoring::{
    bd_rule, cllr, entropy, expected_posterior_entropy, expected_posterior_entropy_from_lr, expected_score,
    log_rule, lr_distribution_of, propriety_check,
};
use infolr::{
    bayes_decision, expected_bd_cost, expected_cost, expected_posterior, likelihood_ratio, posterior, CostMatrix,
    DiscreteEvidenceModel, LrDistribution, ProbabilityVector, ThresholdDecision,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::generate::{self, model_rows, Instance};
use crate::suite::Suite;

const EXACT: f64 = 1e-12;
/// Expected costs that differ by less than this count as a tie.
const TIE: f64 = 1e-9;
const LR_THRESHOLDS: usize = 20;
pub const CANDIDATES: usize = 50;

// stream offsets inside the verification domain
const LR_STREAMS: u64 = 1 << 40;

pub fn decision_rng(seed: u64, i: usize) -> ChaCha8Rng {
    stream_rng(seed, domain::VERIFY, i as u64)
}

fn lr_rng(seed: u64, i: usize) -> ChaCha8Rng {
    stream_rng(seed, domain::VERIFY, LR_STREAMS + i as u64)
}

pub fn scoring_rng(seed: u64, i: usize) -> ChaCha8Rng {
    stream_rng(seed, domain::SCORING, i as u64)
}

/// Measurements on one random `(cost, prior, model)` instance.
#[derive(Debug, Clone)]
pub struct DecisionCase {
    pub instance: Instance,
    pub prior_cost: f64,
    pub posterior_cost: f64,
    pub martingale_error: f64,
    pub entropy: f64,
    pub expected_posterior_entropy: f64,
    pub uninformative: bool,
    /// Some positive-probability posterior differs from the prior.
    pub informative: bool,
    pub concavity_gap: f64,
    pub chained_gap: f64,
    pub scale_error: f64,
    pub action_changed: bool,
    pub bd_score_error: f64,
}

pub fn decision_case(seed: u64, i: usize) -> infolr::Result<DecisionCase> {
    let mut rng = decision_rng(seed, i);
    let instance = generate::random_instance(&mut rng);
    let Instance { cost, prior, model } = &instance;

    let bd = bayes_decision(cost, prior)?;
    let posterior_cost = expected_bd_cost(cost, prior, model)?;
    let martingale_error = expected_posterior(prior, model)?.max_abs_diff(prior);
    let ent = entropy(prior);
    let epe = expected_posterior_entropy(prior, model)?;

    let mut components = Vec::new();
    let mut informative = false;
    for k in 0..model.n_outcomes() {
        if model.evidence_probability(prior, k) > 0.0 {
            let post = posterior(prior, model, k)?;
            informative |= post.max_abs_diff(prior) > TIE;
            components.push(post);
        }
    }
    components.push(prior.clone());
    let weights: Vec<f64> = components.iter().map(|_| rng.random::<f64>() + 0.01).collect();
    let weights = ProbabilityVector::from_weights(&weights)?;
    let (lhs, rhs) = mixture_concavity_check(cost, &components, weights.probs())?;

    let coarsening = random_coarsening(&mut rng, model.n_outcomes());
    let mut chained_gap = f64::NEG_INFINITY;
    for label in 0..coarsening.n_labels() {
        if let Some((refined, coarse)) = chained_bd_costs(cost, prior, model, &coarsening, label)? {
            chained_gap = chained_gap.max(refined - coarse);
        }
    }

    let factor = 10f64.powf(rng.random_range(-2.0..2.0));
    let scaled = bayes_decision(&cost.scaled(factor)?, prior)?;
    let scale_error = (scaled.cost - factor * bd.cost).abs() / (1.0 + (factor * bd.cost).abs());
    let column = rng.random_range(0..prior.len());
    let shift = rng.random_range(-10.0..10.0);
    let shifted = bayes_decision(&cost.with_column_shift(column, shift)?, prior)?;
    let action_changed = clear_winner(cost, prior, bd.action)? && (scaled.action != bd.action || shifted.action != bd.action);

    let bd_score_error = (expected_score(&bd_rule(cost.clone()), prior, prior)? - bd.cost).abs();

    Ok(DecisionCase {
        uninformative: model.is_uninformative(),
        informative,
        prior_cost: bd.cost,
        posterior_cost,
        martingale_error,
        entropy: ent,
        expected_posterior_entropy: epe,
        concavity_gap: rhs - lhs,
        chained_gap,
        scale_error,
        action_changed,
        bd_score_error,
        instance,
    })
}

/// True when the chosen action beats every other by more than a tie margin.
fn clear_winner(cost: &CostMatrix, prior: &ProbabilityVector, action: usize) -> infolr::Result<bool> {
    let best = expected_cost(cost, prior, action)?;
    for a in 0..cost.n_actions() {
        if a != action && expected_cost(cost, prior, a)? - best <= TIE {
            return Ok(false);
        }
    }
    Ok(true)
}

fn random_coarsening<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Coarsening {
    let groups = rng.random_range(1..=k);
    let mut map: Vec<usize> = (0..k).map(|j| if j < groups { j } else { rng.random_range(0..groups) }).collect();
    // shuffle so the forced labels are not always the first outcomes
    for j in (1..k).rev() {
        let o = rng.random_range(0..=j);
        map.swap(j, o);
    }
    Coarsening::new(map).expect("every label used")
}

pub fn decision_checks(suite: &mut Suite<'_>, cases: &[DecisionCase]) {
    let w = |i: usize| cases[i].instance.to_json();
    let all = || cases.iter().enumerate();
    suite.worst(
        "central_inequality",
        all().map(|(i, c)| (i, c.posterior_cost - c.prior_cost)),
        0.0,
        EXACT,
        false,
        |i| json!({"instance": w(i), "prior_cost": cases[i].prior_cost, "posterior_cost": cases[i].posterior_cost}),
    );
    suite.worst("martingale", all().map(|(i, c)| (i, c.martingale_error)), 0.0, EXACT, false, w);
    suite.worst(
        "entropy_decrease",
        all().map(|(i, c)| (i, c.expected_posterior_entropy - c.entropy)),
        0.0,
        EXACT,
        false,
        w,
    );
    suite.worst(
        "entropy_equality_uninformative",
        all().filter(|(_, c)| c.uninformative).map(|(i, c)| (i, (c.expected_posterior_entropy - c.entropy).abs())),
        0.0,
        EXACT,
        false,
        w,
    );
    suite.worst(
        "entropy_strict_informative",
        all().filter(|(_, c)| c.informative).map(|(i, c)| (i, c.expected_posterior_entropy - c.entropy)),
        0.0,
        0.0,
        true,
        w,
    );
    suite.worst("concavity", all().map(|(i, c)| (i, c.concavity_gap)), 0.0, EXACT, false, w);
    suite.worst("chained_inequality", all().map(|(i, c)| (i, c.chained_gap)), 0.0, EXACT, false, w);
    suite.worst("cost_scaling", all().map(|(i, c)| (i, c.scale_error)), 0.0, 1e-12, false, w);
    suite.worst(
        "action_invariance",
        all().map(|(i, c)| (i, c.action_changed as u8 as f64)),
        0.0,
        0.0,
        false,
        w,
    );
    suite.worst("bd_score_is_bd_cost", all().map(|(i, c)| (i, c.bd_score_error)), 0.0, EXACT, false, w);
}

/// Measurements on one random two-hypothesis model.
#[derive(Debug, Clone)]
pub struct LrCase {
    pub likelihoods: Vec<Vec<f64>>,
    pub thresholds: Vec<f64>,
    pub tail_identity_error: f64,
    pub tail_bound_excess: f64,
    pub moment_error: f64,
    pub moment_excess: f64,
    pub threshold_mismatch: bool,
    pub threshold_cost_excess: f64,
    pub threshold_cost_error: f64,
    pub chain_error: f64,
}

pub fn lr_case(seed: u64, i: usize) -> infolr::Result<LrCase> {
    let mut rng = lr_rng(seed, i);
    let k = rng.random_range(1..=10);
    let model = generate::random_model(&mut rng, 2, k);
    let dist = LrDistribution::from_model(&model, 0, Alternative::Hypothesis(1))?;

    let mut thresholds: Vec<f64> = dist.support().filter(|l| l.is_finite() && *l > 0.0).take(LR_THRESHOLDS / 2).collect();
    thresholds.push(1.0);
    while thresholds.len() < LR_THRESHOLDS {
        thresholds.push(10f64.powf(rng.random_range(-3.0..3.0)));
    }
    let mut tail_identity_error: f64 = 0.0;
    let mut tail_bound_excess = f64::NEG_INFINITY;
    for &t in &thresholds {
        let (lhs, rhs) = tail_identity(&dist, t)?;
        tail_identity_error = tail_identity_error.max((lhs - rhs).abs());
        if t >= 1.0 {
            let (low, high) = tail_bounds(&dist, t)?;
            tail_bound_excess = tail_bound_excess.max(low.max(high) - 1.0 / t);
        }
    }

    let (mut inv, mut fwd) = (0.0, 0.0);
    for e in 0..k {
        let (p1, p2) = (model.likelihood(0, e), model.likelihood(1, e));
        if p1 > 0.0 {
            inv += p2;
        }
        if p2 > 0.0 {
            fwd += p1;
        }
    }
    let moment_error = (dist.mean_inverse_lr_h1() - inv).abs().max((dist.mean_lr_h2() - fwd).abs());
    let moment_excess = dist.mean_inverse_lr_h1().max(dist.mean_lr_h2()) - 1.0;

    // threshold rule against the Bayes decision, then its cost formula
    let prior = ProbabilityVector::from_weights(&[rng.random_range(0.05..1.0), rng.random_range(0.05..1.0)])?;
    let r = prior.get(0) / prior.get(1);
    let gamma = r * rng.random_range(1.01..50.0);
    let td = ThresholdDecision::from_prior(gamma, &prior)?;
    let cost = CostMatrix::two_action(gamma)?;
    let mut threshold_mismatch = false;
    for e in 0..k {
        let Ok(post) = posterior(&prior, &model, e) else { continue };
        let verdict = td.decide(likelihood_ratio(model.likelihood(0, e), model.likelihood(1, e)))?;
        let bd = bayes_decision(&cost, &post)?;
        if (post.get(0) - gamma * post.get(1)).abs() > TIE {
            let expected = if bd.action == 0 { TwoAction::A1 } else { TwoAction::A2 };
            threshold_mismatch |= verdict.action != expected;
        }
    }
    let costs = threshold_costs(&td, &prior, &dist)?;
    let direct = expected_bd_cost(&cost, &prior, &model)?;

    let coarsening = random_coarsening(&mut rng, k);
    let mut chain_error: f64 = 0.0;
    for e in 0..k {
        if let Ok(c) = chained_lr(&model, &coarsening, 0, 1, e) {
            if c.full.is_finite() && c.full > 0.0 && c.score.is_finite() && c.score > 0.0 {
                chain_error = chain_error.max((c.full - c.score * c.residual).abs() / c.full.max(1.0));
            }
        }
    }

    Ok(LrCase {
        likelihoods: model_rows(&model),
        thresholds,
        tail_identity_error,
        tail_bound_excess,
        moment_error,
        moment_excess,
        threshold_mismatch,
        threshold_cost_excess: costs.posterior_cost - costs.prior_cost,
        threshold_cost_error: (costs.posterior_cost - direct).abs(),
        chain_error,
    })
}

pub fn lr_checks(suite: &mut Suite<'_>, cases: &[LrCase]) {
    let w = |i: usize| json!({"likelihoods": cases[i].likelihoods, "thresholds": cases[i].thresholds});
    let all = || cases.iter().enumerate();
    suite.worst("tail_identity", all().map(|(i, c)| (i, c.tail_identity_error)), 0.0, EXACT, false, w);
    suite.worst("tail_bounds", all().map(|(i, c)| (i, c.tail_bound_excess)), 0.0, EXACT, false, w);
    suite.worst("lr_moments", all().map(|(i, c)| (i, c.moment_error)), 0.0, EXACT, false, w);
    suite.worst("lr_moment_bounds", all().map(|(i, c)| (i, c.moment_excess)), 0.0, EXACT, false, w);
    suite.worst(
        "threshold_is_bayes_decision",
        all().map(|(i, c)| (i, c.threshold_mismatch as u8 as f64)),
        0.0,
        0.0,
        false,
        w,
    );
    suite.worst("threshold_cost_bound", all().map(|(i, c)| (i, c.threshold_cost_excess)), 0.0, EXACT, false, w);
    suite.worst("threshold_cost_formula", all().map(|(i, c)| (i, c.threshold_cost_error)), 0.0, 1e-9, false, w);
    suite.worst("chained_lr", all().map(|(i, c)| (i, c.chain_error)), 0.0, EXACT, false, w);
}

/// One random `(cost, truth, candidates)` triple plus a two-hypothesis model.
#[derive(Debug, Clone)]
pub struct ScoringCase {
    pub cost: CostMatrix,
    pub truth: ProbabilityVector,
    pub candidates: Vec<ProbabilityVector>,
    pub likelihoods: Vec<Vec<f64>>,
    pub bd_truth_score: f64,
    pub bd_violation: f64,
    pub log_truth_score: f64,
    /// Smallest log-rule margin over candidates away from the truth.
    pub log_min_margin: f64,
    pub two_term_error: f64,
    pub cllr_bits: f64,
    pub cllr_invariance_error: f64,
}

pub fn scoring_case(seed: u64, i: usize) -> infolr::Result<ScoringCase> {
    let mut rng = scoring_rng(seed, i);
    let n = rng.random_range(2..=5);
    let m = rng.random_range(1..=5);
    let cost = generate::random_cost(&mut rng, m, n);
    let truth = generate::random_prior(&mut rng, n);
    let candidates = generate::candidates(&mut rng, &truth, CANDIDATES);

    let bd = propriety_check(&bd_rule(cost.clone()), &truth, &candidates)?;
    let bd_violation = bd.margins.iter().map(|m| -m).fold(f64::NEG_INFINITY, f64::max);
    let log = propriety_check(&log_rule(), &truth, &candidates)?;
    let log_min_margin = log.min_margin_away_from_truth(&truth, &candidates, 1e-9).unwrap_or(f64::INFINITY);

    let k = rng.random_range(1..=10);
    let model = generate::random_model(&mut rng, 2, k);
    let p = rng.random::<f64>();
    let pi = ProbabilityVector::new(vec![p, 1.0 - p])?;
    let direct = expected_posterior_entropy(&pi, &model)?;
    let closed = expected_posterior_entropy_from_lr(p, &lr_distribution_of(&model)?)?;
    let base = cllr(&model)?;
    let rotate = rng.random_range(0..k);
    let split = rng.random_range(0..k);
    let frac = rng.random_range(0.05..0.95);
    let permuted: Vec<Vec<f64>> = (0..2).map(|h| (0..k).map(|j| model.likelihood(h, (j + rotate) % k)).collect()).collect();
    let split_rows: Vec<Vec<f64>> = (0..2)
        .map(|h| {
            let mut row = model.row(h).to_vec();
            let v = row[split];
            row[split] = v * frac;
            row.push(v * (1.0 - frac));
            row
        })
        .collect();
    let c_perm = cllr(&DiscreteEvidenceModel::new(permuted)?)?;
    let c_split = cllr(&DiscreteEvidenceModel::new(split_rows)?)?;

    Ok(ScoringCase {
        bd_truth_score: bd.truth_score,
        bd_violation,
        log_truth_score: log.truth_score,
        log_min_margin,
        two_term_error: (direct - closed).abs(),
        cllr_bits: base.bits,
        cllr_invariance_error: (c_perm.nats - base.nats).abs().max((c_split.nats - base.nats).abs()),
        likelihoods: model_rows(&model),
        cost,
        truth,
        candidates,
    })
}

pub fn scoring_checks(suite: &mut Suite<'_>, cases: &[ScoringCase]) {
    let w = |i: usize| {
        let c = &cases[i];
        json!({
            "cost": c.cost.rows(),
            "truth": c.truth.probs(),
            "candidates": c.candidates.iter().map(|q| q.probs().to_vec()).collect::<Vec<_>>(),
            "likelihoods": c.likelihoods,
        })
    };
    let all = || cases.iter().enumerate();
    suite.worst("bd_rule_proper", all().map(|(i, c)| (i, c.bd_violation)), 0.0, EXACT, false, w);
    suite.worst("log_rule_strict", all().map(|(i, c)| (i, -c.log_min_margin)), 0.0, 0.0, true, w);
    suite.worst("two_term_entropy", all().map(|(i, c)| (i, c.two_term_error)), 0.0, EXACT, false, w);
    suite.worst("cllr_invariance", all().map(|(i, c)| (i, c.cllr_invariance_error)), 0.0, EXACT, false, w);
    suite.worst("cllr_at_most_one_bit", all().map(|(i, c)| (i, c.cllr_bits - 1.0)), 0.0, EXACT, false, w);
}

pub fn decision_cases(seed: u64, n: usize) -> infolr::Result<Vec<DecisionCase>> {
    (0..n).into_par_iter().map(|i| decision_case(seed, i)).collect()
}

pub fn lr_cases(seed: u64, n: usize) -> infolr::Result<Vec<LrCase>> {
    (0..n).into_par_iter().map(|i| lr_case(seed, i)).collect()
}

pub fn scoring_cases(seed: u64, n: usize) -> infolr::Result<Vec<ScoringCase>> {
    (0..n).into_par_iter().map(|i| scoring_case(seed, i)).collect()
}

pub fn decision_csv(cases: &[DecisionCase]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "case_id",
        "n_hypotheses",
        "n_actions",
        "n_outcomes",
        "prior_cost",
        "posterior_cost",
        "martingale_error",
        "entropy",
        "expected_posterior_entropy",
    ])
    .expect("in-memory write");
    for (i, c) in cases.iter().enumerate() {
        w.write_record([
            i.to_string(),
            c.instance.prior.len().to_string(),
            c.instance.cost.n_actions().to_string(),
            c.instance.model.n_outcomes().to_string(),
            c.prior_cost.to_string(),
            c.posterior_cost.to_string(),
            c.martingale_error.to_string(),
            c.entropy.to_string(),
            c.expected_posterior_entropy.to_string(),
        ])
        .expect("in-memory write");
    }
    finish(w)
}

pub fn scoring_csv(cases: &[ScoringCase]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "case_id",
        "n_hypotheses",
        "n_actions",
        "bd_truth_score",
        "log_truth_score",
        "log_min_margin",
        "cllr_bits",
    ])
    .expect("in-memory write");
    for (i, c) in cases.iter().enumerate() {
        w.write_record([
            i.to_string(),
            c.truth.len().to_string(),
            c.cost.n_actions().to_string(),
            c.bd_truth_score.to_string(),
            c.log_truth_score.to_string(),
            c.log_min_margin.to_string(),
            c.cllr_bits.to_string(),
        ])
        .expect("in-memory write");
    }
    finish(w)
}

pub(crate) fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let mut bytes = w.into_inner().expect("in-memory flush");
    bytes.flush().expect("in-memory flush");
    String::from_utf8(bytes).expect("csv is utf-8")
}

pub fn summary_value(cases: &[DecisionCase]) -> Value {
    let uninformative = cases.iter().filter(|c| c.uninformative).count();
    json!({ "instances": cases.len(), "uninformative_instances": uninformative })
}
