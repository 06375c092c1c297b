//! Small summaries shared by the simulation subcommands.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::report::num;

pub const LN_2: f64 = std::f64::consts::LN_2;
pub const LN_10: f64 = std::f64::consts::LN_10;

/// `ln(1 + e^x)` without overflow; exact at `±∞`.
pub fn softplus(x: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// Per-case CLLR contributions in bits from base-10 log LRs:
/// `log2(1 + 1/LR)` under H1 and `log2(1 + LR)` under H2.
pub fn cllr_terms_h1(log10_lr: &[f64]) -> Vec<f64> {
    log10_lr.iter().map(|l| softplus(-l * LN_10) / LN_2).collect()
}

pub fn cllr_terms_h2(log10_lr: &[f64]) -> Vec<f64> {
    log10_lr.iter().map(|l| softplus(l * LN_10) / LN_2).collect()
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance; zero for fewer than two values.
pub fn variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Empirical CLLR in bits.
pub fn empirical_cllr(log10_h1: &[f64], log10_h2: &[f64]) -> f64 {
    0.5 * mean(&cllr_terms_h1(log10_h1)) + 0.5 * mean(&cllr_terms_h2(log10_h2))
}

/// Difference of empirical CLLRs `a - b` over paired cases and its
/// standard error.
pub fn paired_cllr_difference(a: (&[f64], &[f64]), b: (&[f64], &[f64])) -> (f64, f64) {
    let d1: Vec<f64> = cllr_terms_h1(a.0).iter().zip(cllr_terms_h1(b.0)).map(|(x, y)| x - y).collect();
    let d2: Vec<f64> = cllr_terms_h2(a.1).iter().zip(cllr_terms_h2(b.1)).map(|(x, y)| x - y).collect();
    let diff = 0.5 * mean(&d1) + 0.5 * mean(&d2);
    let se = (0.25 * variance(&d1) / d1.len() as f64 + 0.25 * variance(&d2) / d2.len() as f64).sqrt();
    (diff, se)
}

/// `1/t + 3 sqrt(p(1-p)/n)` with `p = 1/t`.
pub fn tail_allowance(t: f64, n: usize) -> f64 {
    let p = 1.0 / t;
    p + 3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

pub fn fraction(xs: &[f64], pred: impl Fn(f64) -> bool) -> f64 {
    xs.iter().filter(|&&x| pred(x)).count() as f64 / xs.len() as f64
}

pub const BIN_WIDTH: f64 = 0.25;

/// Histogram of base-10 log values with fixed-width bins keyed by their
/// lower edge; infinite and undefined values are counted separately.
pub fn histogram(values: impl IntoIterator<Item = f64>) -> Value {
    let mut bins: BTreeMap<i64, u64> = BTreeMap::new();
    let (mut neg_inf, mut pos_inf, mut undefined) = (0u64, 0u64, 0u64);
    for v in values {
        if v.is_nan() {
            undefined += 1;
        } else if v == f64::NEG_INFINITY {
            neg_inf += 1;
        } else if v == f64::INFINITY {
            pos_inf += 1;
        } else {
            *bins.entry((v / BIN_WIDTH).floor() as i64).or_default() += 1;
        }
    }
    let bins: Vec<Value> = bins
        .into_iter()
        .map(|(k, c)| json!({"lo": num(k as f64 * BIN_WIDTH), "count": c}))
        .collect();
    json!({
        "bin_width": BIN_WIDTH,
        "bins": bins,
        "neg_inf": neg_inf,
        "pos_inf": pos_inf,
        "undefined": undefined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn softplus_matches_naive_form() {
        for x in [-30.0, -1.0, 0.0, 0.5, 20.0] {
            assert!((softplus(x) - (1.0 + f64::exp(x)).ln()).abs() < 1e-12);
        }
        assert_eq!(softplus(1e4), 1e4);
        assert_eq!(softplus(f64::INFINITY), f64::INFINITY);
    }

    #[test]
    fn cllr_of_neutral_lrs_is_one_bit() {
        assert!((empirical_cllr(&[0.0, 0.0], &[0.0]) - 1.0).abs() < 1e-15);
        assert_eq!(empirical_cllr(&[f64::INFINITY], &[f64::NEG_INFINITY]), 0.0);
    }

    #[test]
    fn histogram_counts_sentinels() {
        let h = histogram([0.1, 0.2, -0.1, f64::NEG_INFINITY, f64::NAN]);
        assert_eq!(h["neg_inf"], 1);
        assert_eq!(h["undefined"], 1);
        assert_eq!(h["bins"][0]["lo"], json!(-0.25));
        assert_eq!(h["bins"][1]["count"], 2);
    }
}
