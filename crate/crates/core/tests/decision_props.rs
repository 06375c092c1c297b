mod common;

use infolr::decision::{chained_bd_costs, mixture_concavity_check, Coarsening};
use infolr::{bayes_decision, expected_bd_cost, expected_posterior, posterior, ProbabilityVector};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn evidence_never_raises_expected_cost((cost, pi, model) in common::instance()) {
        let before = bayes_decision(&cost, &pi).unwrap().cost;
        let after = expected_bd_cost(&cost, &pi, &model).unwrap();
        prop_assert!(after <= before + 1e-12, "{after} > {before}");
    }

    #[test]
    fn posteriors_average_to_the_prior((_, pi, model) in common::instance()) {
        let mean = expected_posterior(&pi, &model).unwrap();
        prop_assert!(mean.max_abs_diff(&pi) <= 1e-12);
    }

    #[test]
    fn uninformative_evidence_changes_nothing(
        (cost, pi, _) in common::instance(),
        row in prop::collection::vec(1u32..5, 1..6),
    ) {
        let s: u32 = row.iter().sum();
        let row: Vec<f64> = row.iter().map(|x| *x as f64 / s as f64).collect();
        let model = infolr::DiscreteEvidenceModel::uninformative(pi.len(), row).unwrap();
        let before = bayes_decision(&cost, &pi).unwrap().cost;
        let after = expected_bd_cost(&cost, &pi, &model).unwrap();
        prop_assert!((after - before).abs() <= 1e-12);
    }

    #[test]
    fn scaling_and_column_shifts(
        (cost, pi, _) in common::instance(),
        factor in 0.01f64..100.0,
        shift in -5.0f64..5.0,
        column in 0usize..5,
    ) {
        let base = bayes_decision(&cost, &pi).unwrap();
        let scaled = bayes_decision(&cost.scaled(factor).unwrap(), &pi).unwrap();
        prop_assert!((scaled.cost - factor * base.cost).abs() <= 1e-9 * (1.0 + scaled.cost.abs()));
        let column = column % pi.len();
        let shifted = bayes_decision(&cost.with_column_shift(column, shift).unwrap(), &pi).unwrap();
        // near-ties may legitimately flip under rounding
        let costs: Vec<f64> = (0..cost.n_actions())
            .map(|a| infolr::expected_cost(&cost, &pi, a).unwrap())
            .collect();
        let gap = costs.iter().enumerate()
            .filter(|(a, _)| *a != base.action)
            .map(|(_, c)| c - base.cost)
            .fold(f64::INFINITY, f64::min);
        if gap > 1e-9 {
            prop_assert_eq!(scaled.action, base.action);
            prop_assert_eq!(shifted.action, base.action);
        }
    }

    #[test]
    fn minimum_cost_is_concave(
        (cost, pi, model) in common::instance(),
        raw in prop::collection::vec(0.0f64..1.0, 1..6),
    ) {
        // mixture components: the posteriors of a model, weighted arbitrarily
        let components: Vec<ProbabilityVector> = (0..model.n_outcomes())
            .filter_map(|k| posterior(&pi, &model, k).ok())
            .chain(std::iter::once(pi.clone()))
            .collect();
        let weights: Vec<f64> = components.iter().enumerate().map(|(i, _)| raw[i % raw.len()] + 0.01).collect();
        let weights = ProbabilityVector::from_weights(&weights).unwrap().probs().to_vec();
        let (lhs, rhs) = mixture_concavity_check(&cost, &components, &weights).unwrap();
        prop_assert!(lhs >= rhs - 1e-12, "{lhs} < {rhs}");
    }

    #[test]
    fn refining_coarse_evidence_helps(
        (cost, pi, model) in common::instance(),
        labels in prop::collection::vec(0usize..3, 10),
    ) {
        let k = model.n_outcomes();
        // compact the label set so every label is used
        let mut seen = Vec::new();
        let map: Vec<usize> = labels[..k].iter().map(|l| {
            match seen.iter().position(|s| s == l) {
                Some(i) => i,
                None => { seen.push(*l); seen.len() - 1 }
            }
        }).collect();
        let coarsening = Coarsening::new(map).unwrap();
        for label in 0..coarsening.n_labels() {
            if let Some((refined, coarse)) = chained_bd_costs(&cost, &pi, &model, &coarsening, label).unwrap() {
                prop_assert!(refined <= coarse + 1e-12, "{refined} > {coarse}");
            }
        }
        let coarse_model = model.coarsen(&coarsening).unwrap();
        let fine = expected_bd_cost(&cost, &pi, &model).unwrap();
        let coarse = expected_bd_cost(&cost, &pi, &coarse_model).unwrap();
        prop_assert!(fine <= coarse + 1e-12);
        prop_assert!(coarse <= bayes_decision(&cost, &pi).unwrap().cost + 1e-12);
    }
}
