//! Bayes decisions under evidence, likelihood-ratio calculus, and the two
//! worked studies that use them: a Gaussian source model and DNA kinship.

pub mod decision;
pub mod error;
pub mod gaussian;
pub mod kinship;
pub mod lr;
pub mod rng;
pub mod scoring;
pub mod tolerance;

pub use decision::{
    BayesDecision, Coarsening, CostMatrix, DiscreteEvidenceModel, ProbabilityVector, bayes_decision, expected_bd_cost,
    expected_cost, expected_posterior, posterior,
};
pub use error::{Error, Result};
pub use lr::{LrAtom, LrDistribution, ThresholdDecision, likelihood_ratio};
