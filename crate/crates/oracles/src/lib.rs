//! Reference computations for tests. Nothing here shares code with `infolr`;
//! each routine takes a different numerical route to the same quantity.

use std::f64::consts::PI;

pub fn normal_pdf(x: f64, mean: f64, var: f64) -> f64 {
    let d = x - mean;
    (-0.5 * d * d / var).exp() / (2.0 * PI * var).sqrt()
}

/// Composite Simpson rule with `n` (rounded up to even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n.max(2) + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Two measurements with noise `var_1`, `var_2` on one source drawn from
/// `N(mu, var_d)`: joint density over marginal product, integrating the source
/// parameter numerically. The range is split at each measurement so that
/// narrow noise peaks get their own panels.
pub fn common_source_lr_quadrature(mu: f64, var_d: f64, e1: f64, e2: f64, var_1: f64, var_2: f64) -> f64 {
    let sd = var_d.sqrt();
    let mut cuts = vec![mu - 14.0 * sd, mu + 14.0 * sd];
    for (e, v) in [(e1, var_1), (e2, var_2)] {
        cuts.push(e - 14.0 * v.sqrt());
        cuts.push(e + 14.0 * v.sqrt());
    }
    cuts.sort_by(f64::total_cmp);
    let integrate = |f: &dyn Fn(f64) -> f64| -> f64 {
        cuts.windows(2).filter(|w| w[1] > w[0]).map(|w| simpson(f, w[0], w[1], 4_000)).sum()
    };
    let prior = |t: f64| normal_pdf(t, mu, var_d);
    let joint = integrate(&|t| normal_pdf(e1, t, var_1) * normal_pdf(e2, t, var_2) * prior(t));
    let m1 = integrate(&|t| normal_pdf(e1, t, var_1) * prior(t));
    let m2 = integrate(&|t| normal_pdf(e2, t, var_2) * prior(t));
    joint / (m1 * m2)
}

/// Density of a noncentral chi-square with one degree of freedom, as a
/// Poisson mixture of central chi-squares with `1 + 2i` degrees of freedom.
/// Requires `x > 0`.
pub fn noncentral_chi2_1_pdf(x: f64, lambda: f64) -> f64 {
    assert!(x > 0.0, "density diverges at 0");
    let half = lambda / 2.0;
    // central density with k = 1, then f_{k+2}(x) = f_k(x) x / k
    let mut central = (-x / 2.0).exp() / (2.0 * PI * x).sqrt();
    let mut weight = (-half).exp();
    let mut total = 0.0;
    let mut k = 1.0;
    for i in 0..10_000 {
        let term = weight * central;
        total += term;
        if i as f64 > half && term < 1e-18 * total {
            break;
        }
        central *= x / k;
        k += 2.0;
        weight *= half / (i + 1) as f64;
    }
    total
}

/// Density of `scale · X` where `X` is noncentral chi-square(1, `lambda`).
pub fn scaled_noncentral_chi2_1_pdf(s: f64, scale: f64, lambda: f64) -> f64 {
    noncentral_chi2_1_pdf(s / scale, lambda) / scale
}

/// One histogram bin `[lo, hi)` of a Monte Carlo density-ratio comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinCheck {
    pub lo: f64,
    pub hi: f64,
    pub count_h1: usize,
    pub count_h2: usize,
    /// `(n1_B / N1) / (n2_B / N2)`.
    pub mc_ratio: f64,
    /// Average of the model LR over the `H2` samples in the bin, which
    /// estimates `P1(B) / P2(B)` without using the `H1` samples.
    pub model_ratio: f64,
}

impl BinCheck {
    pub fn relative_error(&self) -> f64 {
        (self.mc_ratio - self.model_ratio).abs() / self.model_ratio
    }
}

/// Compares histogram ratios of samples drawn under two laws against a model
/// LR. Bins start with equal probability under `h1` (`initial_bins` of them)
/// and adjacent bins are merged until each holds at least `min_count`
/// samples from both laws.
pub fn histogram_ratio(
    h1: &[f64],
    h2: &[f64],
    lr: impl Fn(f64) -> f64,
    initial_bins: usize,
    min_count: usize,
) -> Vec<BinCheck> {
    let mut s1 = h1.to_vec();
    let mut s2 = h2.to_vec();
    s1.sort_by(f64::total_cmp);
    s2.sort_by(f64::total_cmp);
    let mut edges: Vec<f64> = (1..initial_bins).map(|k| s1[k * s1.len() / initial_bins]).collect();
    edges.dedup();
    let count = |s: &[f64], lo: f64, hi: f64| s.partition_point(|v| *v < hi) - s.partition_point(|v| *v < lo);

    let mut bounds = Vec::new();
    let mut lo = f64::NEG_INFINITY;
    for &e in edges.iter().chain(std::iter::once(&f64::INFINITY)) {
        if count(&s1, lo, e) >= min_count && count(&s2, lo, e) >= min_count {
            bounds.push((lo, e));
            lo = e;
        }
    }
    // leftover upper tail joins the last bin
    if lo != f64::INFINITY {
        match bounds.last_mut() {
            Some(last) => last.1 = f64::INFINITY,
            None => bounds.push((f64::NEG_INFINITY, f64::INFINITY)),
        }
    }

    let (n1, n2) = (s1.len() as f64, s2.len() as f64);
    bounds
        .into_iter()
        .map(|(lo, hi)| {
            let c1 = count(&s1, lo, hi);
            let a = s2.partition_point(|v| *v < lo);
            let b = s2.partition_point(|v| *v < hi);
            let mean_lr = s2[a..b].iter().map(|v| lr(*v)).sum::<f64>() / (b - a) as f64;
            BinCheck {
                lo,
                hi,
                count_h1: c1,
                count_h2: b - a,
                mc_ratio: (c1 as f64 / n1) / ((b - a) as f64 / n2),
                model_ratio: mean_lr,
            }
        })
        .collect()
}

/// `P(child = {c, d} | parents' ordered alleles)` by enumerating the four
/// equally likely transmissions.
fn transmit(parents: [usize; 4], child: (usize, usize)) -> f64 {
    let mut p = 0.0;
    for m in 0..2 {
        for f in 2..4 {
            let (x, y) = (parents[m], parents[f]);
            if (x, y) == child || (y, x) == child {
                p += 0.25;
            }
        }
    }
    p
}

/// `P(x, y)` for full siblings at one locus, summing over the ordered
/// alleles of both parents.
pub fn sibling_joint_ordered(freqs: &[f64], x: (usize, usize), y: (usize, usize)) -> f64 {
    let n = freqs.len();
    let mut total = 0.0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let w = freqs[a] * freqs[b] * freqs[c] * freqs[d];
                    let par = [a, b, c, d];
                    total += w * transmit(par, x) * transmit(par, y);
                }
            }
        }
    }
    total
}

/// Unordered genotype probability from ordered allele draws.
pub fn genotype_probability(freqs: &[f64], x: (usize, usize)) -> f64 {
    let mut p = 0.0;
    for a in 0..freqs.len() {
        for b in 0..freqs.len() {
            if (a, b) == x || (b, a) == x {
                p += freqs[a] * freqs[b];
            }
        }
    }
    p
}

/// Sibling LR at one locus by the ordered-parent route.
pub fn sibling_locus_lr(freqs: &[f64], x: (usize, usize), y: (usize, usize)) -> f64 {
    sibling_joint_ordered(freqs, x, y) / (genotype_probability(freqs, x) * genotype_probability(freqs, y))
}

/// `-ln` of the posterior of the true hypothesis, averaged, then halved and
/// summed over both hypotheses, in bits: the usual sample CLLR.
pub fn empirical_cllr_bits(lr_h1: &[f64], lr_h2: &[f64]) -> f64 {
    let a: f64 = lr_h1.iter().map(|l| (1.0 + 1.0 / l).log2()).sum::<f64>() / lr_h1.len() as f64;
    let b: f64 = lr_h2.iter().map(|l| (1.0 + l).log2()).sum::<f64>() / lr_h2.len() as f64;
    0.5 * (a + b)
}
