use crate::error::{Error, Result};

use super::genotype::{Genotype, GenotypeProfile, ParentPair, check_same_loci, hwe_probability, transmission};
use super::table::{FrequencyTable, Locus};

/// Probabilities that full siblings share 0, 1 or 2 alleles identical by descent.
pub const SIBLING_IBD: [f64; 3] = [0.25, 0.5, 0.25];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SiblingMethod {
    /// Sum over every pair of parental genotypes.
    Enumerate,
    /// Mixture over the sibling IBD states.
    #[default]
    Ibd,
}

/// P(y | x, full siblings) by summing over parental genotypes.
pub fn sibling_conditional_enumerated(locus: &Locus, x: Genotype, y: Genotype) -> f64 {
    let n = locus.n_alleles();
    let mut joint = 0.0;
    let mut marginal = 0.0;
    for m in Genotype::all(n) {
        let pm = hwe_probability(locus, m);
        for f in Genotype::all(n) {
            let w = pm * hwe_probability(locus, f) * transmission(x, m, f);
            if w > 0.0 {
                marginal += w;
                joint += w * transmission(y, m, f);
            }
        }
    }
    joint / marginal
}

/// P(y | x, full siblings) via the IBD mixture.
pub fn sibling_conditional_ibd(locus: &Locus, x: Genotype, y: Genotype) -> f64 {
    let [a, b] = x.alleles();
    let one = 0.5 * (given_shared(locus, a, y) + given_shared(locus, b, y));
    let two = if x == y { 1.0 } else { 0.0 };
    SIBLING_IBD[0] * hwe_probability(locus, y) + SIBLING_IBD[1] * one + SIBLING_IBD[2] * two
}

// y carries allele c by descent and a second allele drawn from the population
fn given_shared(locus: &Locus, c: u16, y: Genotype) -> f64 {
    let [u, v] = y.alleles();
    if u == c {
        locus.frequency(v)
    } else if v == c {
        locus.frequency(u)
    } else {
        0.0
    }
}

/// Per-locus sibling LRs: P(y | x, siblings) / P(y | unrelated).
pub fn sibling_locus_lrs(
    table: &FrequencyTable,
    x: &GenotypeProfile,
    y: &GenotypeProfile,
    method: SiblingMethod,
) -> Result<Vec<f64>> {
    check_same_loci(x, y)?;
    check_table(table, x.n_loci())?;
    Ok(x.genotypes()
        .iter()
        .zip(y.genotypes())
        .enumerate()
        .map(|(i, (gx, gy))| {
            let locus = table.locus(i);
            let num = match method {
                SiblingMethod::Enumerate => sibling_conditional_enumerated(locus, *gx, *gy),
                SiblingMethod::Ibd => sibling_conditional_ibd(locus, *gx, *gy),
            };
            num / hwe_probability(locus, *gy)
        })
        .collect())
}

/// Sibling versus unrelated LR for profile `y` given profile `x`.
pub fn lr_sibling_feature(table: &FrequencyTable, x: &GenotypeProfile, y: &GenotypeProfile) -> Result<f64> {
    lr_sibling_feature_with(table, x, y, SiblingMethod::default())
}

pub fn lr_sibling_feature_with(
    table: &FrequencyTable,
    x: &GenotypeProfile,
    y: &GenotypeProfile,
    method: SiblingMethod,
) -> Result<f64> {
    Ok(sibling_locus_lrs(table, x, y, method)?.iter().product())
}

pub fn parentage_locus_lrs(table: &FrequencyTable, parents: &ParentPair, y: &GenotypeProfile) -> Result<Vec<f64>> {
    check_same_loci(&parents.mother, y)?;
    check_table(table, y.n_loci())?;
    Ok(y.genotypes()
        .iter()
        .enumerate()
        .map(|(i, gy)| {
            let t = transmission(*gy, parents.mother.genotypes()[i], parents.father.genotypes()[i]);
            t / hwe_probability(table.locus(i), *gy)
        })
        .collect())
}

/// LR that `y` is a child of `parents` versus unrelated. Zero on exclusion.
pub fn lr_parentage(table: &FrequencyTable, parents: &ParentPair, y: &GenotypeProfile) -> Result<f64> {
    Ok(parentage_locus_lrs(table, parents, y)?.iter().product())
}

fn check_table(table: &FrequencyTable, n: usize) -> Result<()> {
    if n > table.n_loci() {
        return Err(Error::DimensionMismatch {
            context: "profile loci against table",
            expected: table.n_loci(),
            actual: n,
        });
    }
    Ok(())
}
