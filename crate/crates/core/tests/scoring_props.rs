mod common;

use infolr::scoring::{
    bd_rule, cllr, entropy, expected_posterior_entropy, expected_posterior_entropy_from_lr, expected_score,
    log_rule, lr_distribution_of, propriety_check,
};
use infolr::{bayes_decision, posterior, DiscreteEvidenceModel, ProbabilityVector};
use proptest::prelude::*;

fn candidates(n: usize) -> impl Strategy<Value = Vec<ProbabilityVector>> {
    prop::collection::vec(common::prior(n), 1..30)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bd_rule_is_proper(
        (cost, truth, cands) in (1usize..=5, 1usize..=5)
            .prop_flat_map(|(n, m)| (common::cost(m, n), common::prior(n), candidates(n)))
    ) {
        let report = propriety_check(&bd_rule(cost), &truth, &cands).unwrap();
        prop_assert!(report.is_proper(), "{:?}", report.violations);
    }

    #[test]
    fn log_rule_is_strictly_proper(
        (truth, cands) in (2usize..=5).prop_flat_map(|n| (common::positive_prior(n), candidates(n)))
    ) {
        let report = propriety_check(&log_rule(), &truth, &cands).unwrap();
        prop_assert!(report.is_proper());
        if let Some(m) = report.min_margin_away_from_truth(&truth, &cands, 1e-9) {
            prop_assert!(m > 0.0);
        }
    }

    #[test]
    fn bd_score_is_bd_cost((cost, p, _) in common::instance()) {
        let own = expected_score(&bd_rule(cost.clone()), &p, &p).unwrap();
        let bd = bayes_decision(&cost, &p).unwrap().cost;
        prop_assert!((own - bd).abs() <= 1e-12 * (1.0 + bd.abs()));
    }

    #[test]
    fn updating_lowers_self_scores((cost, pi, model) in common::instance()) {
        let rule = bd_rule(cost);
        let before_bd = expected_score(&rule, &pi, &pi).unwrap();
        let before_log = expected_score(&log_rule(), &pi, &pi).unwrap();
        let mut after_bd = 0.0;
        let mut after_log = 0.0;
        for k in 0..model.n_outcomes() {
            let pe = model.evidence_probability(&pi, k);
            if pe > 0.0 {
                let post = posterior(&pi, &model, k).unwrap();
                after_bd += pe * expected_score(&rule, &post, &post).unwrap();
                after_log += pe * expected_score(&log_rule(), &post, &post).unwrap();
            }
        }
        prop_assert!(after_bd <= before_bd + 1e-12);
        prop_assert!(after_log <= before_log + 1e-12);
        prop_assert!((before_log - entropy(&pi)).abs() <= 1e-12);
        prop_assert!((after_log - expected_posterior_entropy(&pi, &model).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn entropy_never_rises_on_average((_, pi, model) in common::instance()) {
        prop_assert!(expected_posterior_entropy(&pi, &model).unwrap() <= entropy(&pi) + 1e-12);
    }

    #[test]
    fn two_term_form_matches_enumeration(model in common::two_hypothesis_model(), p in 0.0f64..=1.0) {
        let pi = ProbabilityVector::new(vec![p, 1.0 - p]).unwrap();
        let direct = expected_posterior_entropy(&pi, &model).unwrap();
        let dist = lr_distribution_of(&model).unwrap();
        let closed = expected_posterior_entropy_from_lr(pi.get(0), &dist).unwrap();
        prop_assert!((direct - closed).abs() <= 1e-12, "{direct} vs {closed}");
    }

    #[test]
    fn cllr_ignores_labels_and_proportional_splits(
        model in common::two_hypothesis_model(),
        rotate in 0usize..10,
        split in 0usize..10,
        frac in 0.05f64..0.95,
    ) {
        let base = cllr(&model).unwrap();
        let k = model.n_outcomes();
        let permuted: Vec<Vec<f64>> = (0..2)
            .map(|h| (0..k).map(|j| model.likelihood(h, (j + rotate) % k)).collect())
            .collect();
        let p = cllr(&DiscreteEvidenceModel::new(permuted).unwrap()).unwrap();
        prop_assert!((p.nats - base.nats).abs() <= 1e-12);
        let s = split % k;
        let split_rows: Vec<Vec<f64>> = (0..2)
            .map(|h| {
                let mut row = model.row(h).to_vec();
                let v = row[s];
                row[s] = v * frac;
                row.push(v * (1.0 - frac));
                row
            })
            .collect();
        let sp = cllr(&DiscreteEvidenceModel::new(split_rows).unwrap()).unwrap();
        prop_assert!((sp.nats - base.nats).abs() <= 1e-12);
        prop_assert!((base.bits * std::f64::consts::LN_2 - base.nats).abs() <= 1e-15);
        prop_assert!(base.bits <= 1.0 + 1e-12);
    }
}

#[test]
fn uninformative_models_keep_the_entropy() {
    let pi = ProbabilityVector::new(vec![0.1, 0.2, 0.7]).unwrap();
    let model = DiscreteEvidenceModel::uninformative(3, vec![0.25, 0.5, 0.25]).unwrap();
    assert_eq!(expected_posterior_entropy(&pi, &model).unwrap(), entropy(&pi));
}
