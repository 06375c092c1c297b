//! Numerical tolerances shared by every module.
//!
//! All thresholds live in one record so that tests, the verification harness
//! and the constructors agree on what "equal" means.

/// Tolerance settings. [`Tolerances::DEFAULT`] is what the library uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// A probability vector whose sum is off by more than this is rejected.
    /// Inside the band it is renormalized.
    pub sum_reject: f64,
    /// Row sums of an evidence model must match 1 within this.
    pub model_row_sum: f64,
    /// Exact identities (martingale, tail identity, central inequality).
    pub exact: f64,
    /// Frequency tables: per-locus sums must match 1 within this.
    pub frequency_sum: f64,
    /// Smallest variance accepted by the Gaussian source model. Smaller
    /// inputs are clamped up to it.
    pub min_variance: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        sum_reject: 1e-9,
        model_row_sum: 1e-12,
        exact: 1e-12,
        frequency_sum: 1e-9,
        min_variance: 1e-12,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

pub const TOL: Tolerances = Tolerances::DEFAULT;
