//! Random decision problems for the verification suites.

use infolr::{CostMatrix, DiscreteEvidenceModel, ProbabilityVector};
use rand::Rng;
use serde_json::{json, Value};

#[derive(Debug, Clone)]
pub struct Instance {
    pub cost: CostMatrix,
    pub prior: ProbabilityVector,
    pub model: DiscreteEvidenceModel,
}

impl Instance {
    pub fn to_json(&self) -> Value {
        json!({
            "cost": self.cost.rows(),
            "prior": self.prior.probs(),
            "likelihoods": model_rows(&self.model),
        })
    }
}

pub fn model_rows(model: &DiscreteEvidenceModel) -> Vec<Vec<f64>> {
    (0..model.n_hypotheses()).map(|h| model.row(h).to_vec()).collect()
}

/// Up to 5 hypotheses, 5 actions and 10 outcomes, costs in [-10, 10].
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R) -> Instance {
    let n = rng.random_range(1..=5);
    let m = rng.random_range(1..=5);
    let k = rng.random_range(1..=10);
    Instance {
        cost: random_cost(rng, m, n),
        prior: random_prior(rng, n),
        model: random_model(rng, n, k),
    }
}

pub fn random_cost<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> CostMatrix {
    let rows = (0..m).map(|_| (0..n).map(|_| rng.random_range(-10.0..=10.0)).collect()).collect();
    CostMatrix::new(rows).expect("finite costs")
}

/// Random weights; one time in five some hypotheses get prior zero.
pub fn random_prior<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ProbabilityVector {
    let sparse = rng.random_bool(0.2);
    loop {
        let w: Vec<f64> = (0..n)
            .map(|_| if sparse && rng.random_bool(0.4) { 0.0 } else { rng.random::<f64>() })
            .collect();
        if w.iter().sum::<f64>() > 1e-6 {
            return ProbabilityVector::from_weights(&w).expect("positive weights");
        }
    }
}

/// Mixes three styles: identical rows (uninformative), small-integer grids
/// (repeated likelihood ratios, zeros, exclusions) and continuous rows with
/// scattered zeros.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> DiscreteEvidenceModel {
    let style = rng.random_range(0..20);
    let rows: Vec<Vec<f64>> = if style < 3 {
        let row = random_row(rng, k, |r| r.random::<f64>());
        vec![row; n]
    } else if style < 10 {
        (0..n).map(|_| random_row(rng, k, |r| r.random_range(0..=4) as f64)).collect()
    } else {
        (0..n)
            .map(|_| random_row(rng, k, |r| if r.random_bool(0.2) { 0.0 } else { r.random::<f64>() }))
            .collect()
    };
    DiscreteEvidenceModel::new(rows).expect("normalized rows")
}

fn random_row<R: Rng + ?Sized>(rng: &mut R, k: usize, draw: impl Fn(&mut R) -> f64) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..k).map(|_| draw(rng)).collect();
        let s: f64 = w.iter().sum();
        if s > 1e-9 {
            return w.iter().map(|x| x / s).collect();
        }
    }
}

/// Candidate forecasts around `truth`: arbitrary vectors, small perturbations,
/// point masses and the truth itself first.
pub fn candidates<R: Rng + ?Sized>(rng: &mut R, truth: &ProbabilityVector, count: usize) -> Vec<ProbabilityVector> {
    let n = truth.len();
    let mut out = vec![truth.clone()];
    while out.len() < count {
        let c = match rng.random_range(0..10) {
            0..=3 => random_prior(rng, n),
            4..=6 => {
                let eps = 10f64.powf(rng.random_range(-3.0..-1.0));
                let w: Vec<f64> = truth.probs().iter().map(|p| (p + eps * rng.random::<f64>()).max(0.0)).collect();
                ProbabilityVector::from_weights(&w).expect("positive weights")
            }
            _ => ProbabilityVector::certain(n, rng.random_range(0..n)).expect("index in range"),
        };
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use infolr::rng::stream_rng;

    #[test]
    fn shapes_stay_in_range() {
        let mut rng = stream_rng(1, 5, 0);
        let mut uninformative = 0;
        for _ in 0..500 {
            let inst = random_instance(&mut rng);
            assert!(inst.cost.n_actions() <= 5 && inst.prior.len() <= 5 && inst.model.n_outcomes() <= 10);
            assert_eq!(inst.cost.n_hypotheses(), inst.prior.len());
            assert!(inst.cost.rows().iter().flatten().all(|c| c.abs() <= 10.0));
            uninformative += inst.model.is_uninformative() as usize;
        }
        assert!(uninformative > 20);
    }
}
