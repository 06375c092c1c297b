#![allow(dead_code)]

use infolr::{CostMatrix, DiscreteEvidenceModel, ProbabilityVector};
use proptest::prelude::*;

/// Row of integer weights with at least one positive entry, normalized.
fn grid_row(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0u32..=4, len)
        .prop_filter("row needs mass", |w| w.iter().any(|x| *x > 0))
        .prop_map(|w| {
            let s: u32 = w.iter().sum();
            w.iter().map(|x| *x as f64 / s as f64).collect()
        })
}

pub fn prior(n: usize) -> impl Strategy<Value = ProbabilityVector> {
    prop::collection::vec(0.0f64..1.0, n)
        .prop_filter("prior needs mass", |w| w.iter().sum::<f64>() > 1e-3)
        .prop_map(|w| ProbabilityVector::from_weights(&w).unwrap())
}

pub fn positive_prior(n: usize) -> impl Strategy<Value = ProbabilityVector> {
    prop::collection::vec(0.05f64..1.0, n).prop_map(|w| ProbabilityVector::from_weights(&w).unwrap())
}

pub fn model(n: usize, k: usize) -> impl Strategy<Value = DiscreteEvidenceModel> {
    prop::collection::vec(grid_row(k), n).prop_map(|rows| DiscreteEvidenceModel::new(rows).unwrap())
}

pub fn cost(m: usize, n: usize) -> impl Strategy<Value = CostMatrix> {
    prop::collection::vec(prop::collection::vec(-10.0f64..10.0, n), m)
        .prop_map(|rows| CostMatrix::new(rows).unwrap())
}

/// `(cost, prior, model)` with up to 5 hypotheses, 5 actions, 10 outcomes.
pub fn instance() -> impl Strategy<Value = (CostMatrix, ProbabilityVector, DiscreteEvidenceModel)> {
    (1usize..=5, 1usize..=5, 1usize..=10)
        .prop_flat_map(|(n, m, k)| (cost(m, n), prior(n), model(n, k)))
}

pub fn two_hypothesis_model() -> impl Strategy<Value = DiscreteEvidenceModel> {
    (1usize..=10).prop_flat_map(|k| model(2, k))
}
