use rand::Rng;
use rand::distr::Distribution;

use crate::error::{Error, Result};

use super::table::{FrequencyTable, Locus};

/// Unordered allele pair at one locus, stored as sorted allele indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genotype {
    a: u16,
    b: u16,
}

impl Genotype {
    pub fn new(x: u16, y: u16) -> Self {
        if x <= y { Self { a: x, b: y } } else { Self { a: y, b: x } }
    }

    pub fn alleles(self) -> [u16; 2] {
        [self.a, self.b]
    }

    pub fn is_homozygous(self) -> bool {
        self.a == self.b
    }

    pub fn contains(self, allele: u16) -> bool {
        self.a == allele || self.b == allele
    }

    /// Every unordered genotype over `n` alleles.
    pub fn all(n: usize) -> impl Iterator<Item = Genotype> {
        (0..n as u16).flat_map(move |a| (a..n as u16).map(move |b| Genotype { a, b }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenotypeProfile {
    genotypes: Vec<Genotype>,
}

impl GenotypeProfile {
    /// Checks every allele index against the first `genotypes.len()` loci of `table`.
    pub fn new(table: &FrequencyTable, genotypes: Vec<Genotype>) -> Result<Self> {
        if genotypes.is_empty() || genotypes.len() > table.n_loci() {
            return Err(Error::InvalidProfile(format!(
                "profile has {} loci, table has {}",
                genotypes.len(),
                table.n_loci()
            )));
        }
        for (i, g) in genotypes.iter().enumerate() {
            let n = table.locus(i).n_alleles() as u16;
            if g.b >= n {
                return Err(Error::InvalidProfile(format!(
                    "allele index {} out of range at locus {}",
                    g.b,
                    table.locus(i).name()
                )));
            }
        }
        Ok(Self { genotypes })
    }

    /// Builds a profile from allele labels, one pair per locus in table order.
    pub fn from_labels(table: &FrequencyTable, pairs: &[(&str, &str)]) -> Result<Self> {
        let genotypes = pairs
            .iter()
            .enumerate()
            .map(|(i, (x, y))| {
                let locus = table.loci().get(i).ok_or_else(|| {
                    Error::InvalidProfile(format!("more loci than the table has ({})", table.n_loci()))
                })?;
                let find = |l: &str| {
                    locus.index_of(l).ok_or_else(|| {
                        Error::InvalidProfile(format!("allele {l} not in locus {}", locus.name()))
                    })
                };
                Ok(Genotype::new(find(x)?, find(y)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(table, genotypes)
    }

    pub fn genotypes(&self) -> &[Genotype] {
        &self.genotypes
    }

    pub fn n_loci(&self) -> usize {
        self.genotypes.len()
    }

    pub fn prefix(&self, n: usize) -> Self {
        Self {
            genotypes: self.genotypes[..n.min(self.genotypes.len())].to_vec(),
        }
    }

    pub fn labels<'t>(&self, table: &'t FrequencyTable) -> Vec<(&'t str, &'t str)> {
        self.genotypes
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let l = table.locus(i);
                (l.alleles()[g.a as usize].label.as_str(), l.alleles()[g.b as usize].label.as_str())
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParentPair {
    pub mother: GenotypeProfile,
    pub father: GenotypeProfile,
}

impl ParentPair {
    pub fn new(mother: GenotypeProfile, father: GenotypeProfile) -> Result<Self> {
        if mother.n_loci() != father.n_loci() {
            return Err(Error::DimensionMismatch {
                context: "parent loci",
                expected: mother.n_loci(),
                actual: father.n_loci(),
            });
        }
        Ok(Self { mother, father })
    }

    pub fn n_loci(&self) -> usize {
        self.mother.n_loci()
    }

    pub fn prefix(&self, n: usize) -> Self {
        Self {
            mother: self.mother.prefix(n),
            father: self.father.prefix(n),
        }
    }
}

/// Hardy-Weinberg probability of a genotype.
pub fn hwe_probability(locus: &Locus, g: Genotype) -> f64 {
    let (pa, pb) = (locus.frequency(g.a), locus.frequency(g.b));
    if g.is_homozygous() { pa * pa } else { 2.0 * pa * pb }
}

/// Mendelian probability that parents `m` and `f` pass on genotype `child`.
pub fn transmission(child: Genotype, m: Genotype, f: Genotype) -> f64 {
    let mut p = 0.0;
    for x in m.alleles() {
        for y in f.alleles() {
            if Genotype::new(x, y) == child {
                p += 0.25;
            }
        }
    }
    p
}

/// Two independent allele draws per locus, over all loci of the table.
pub fn sample_founder<R: Rng + ?Sized>(table: &FrequencyTable, rng: &mut R) -> GenotypeProfile {
    let genotypes = table
        .loci()
        .iter()
        .map(|l| {
            let x = l.sampler().sample(rng) as u16;
            let y = l.sampler().sample(rng) as u16;
            Genotype::new(x, y)
        })
        .collect();
    GenotypeProfile { genotypes }
}

/// One uniformly chosen allele from each parent, per locus.
pub fn sample_child<R: Rng + ?Sized>(parents: &ParentPair, rng: &mut R) -> GenotypeProfile {
    let genotypes = parents
        .mother
        .genotypes
        .iter()
        .zip(&parents.father.genotypes)
        .map(|(m, f)| {
            let x = m.alleles()[rng.random_range(0..2)];
            let y = f.alleles()[rng.random_range(0..2)];
            Genotype::new(x, y)
        })
        .collect();
    GenotypeProfile { genotypes }
}

/// Size of the multiset intersection of two allele pairs.
pub fn ibs_locus(x: Genotype, y: Genotype) -> u32 {
    let [a, b] = x.alleles();
    let [c, d] = y.alleles();
    if a == c && b == d {
        return 2;
    }
    if a == c || a == d || b == c || b == d { 1 } else { 0 }
}

pub fn ibs_score(x: &GenotypeProfile, y: &GenotypeProfile) -> Result<u32> {
    check_same_loci(x, y)?;
    Ok(x.genotypes.iter().zip(&y.genotypes).map(|(g, h)| ibs_locus(*g, *h)).sum())
}

pub(crate) fn check_same_loci(x: &GenotypeProfile, y: &GenotypeProfile) -> Result<()> {
    if x.n_loci() != y.n_loci() {
        return Err(Error::DimensionMismatch {
            context: "profile loci",
            expected: x.n_loci(),
            actual: y.n_loci(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinship::table::Allele;
    use crate::rng::stream_rng;

    fn two_allele_table(p: f64) -> FrequencyTable {
        let locus = Locus::new(
            "L",
            vec![
                Allele { label: "A".into(), frequency: p },
                Allele { label: "B".into(), frequency: 1.0 - p },
            ],
        )
        .unwrap();
        FrequencyTable::new(vec![locus]).unwrap()
    }

    fn three_allele_two_loci() -> FrequencyTable {
        let mk = |name: &str| {
            Locus::new(
                name,
                ["A", "B", "C"]
                    .iter()
                    .map(|l| Allele { label: l.to_string(), frequency: 1.0 / 3.0 })
                    .collect(),
            )
            .unwrap()
        };
        FrequencyTable::new(vec![mk("L1"), mk("L2")]).unwrap()
    }

    #[test]
    fn ibs_examples() {
        let t = three_allele_two_loci();
        let x = GenotypeProfile::from_labels(&t, &[("A", "B"), ("A", "A")]).unwrap();
        let y = GenotypeProfile::from_labels(&t, &[("A", "C"), ("A", "B")]).unwrap();
        assert_eq!(ibs_score(&x, &y).unwrap(), 2);
        assert_eq!(ibs_score(&x, &x).unwrap(), 4);
        let aa = GenotypeProfile::from_labels(&t, &[("A", "A"), ("A", "A")]).unwrap();
        let bb = GenotypeProfile::from_labels(&t, &[("B", "B"), ("B", "B")]).unwrap();
        assert_eq!(ibs_score(&aa, &bb).unwrap(), 0);
        assert!(ibs_score(&x, &x.prefix(1)).is_err());
        // AA vs AB shares one copy only
        assert_eq!(ibs_locus(Genotype::new(0, 0), Genotype::new(0, 1)), 1);
    }

    #[test]
    fn labels_are_validated() {
        let t = three_allele_two_loci();
        assert!(GenotypeProfile::from_labels(&t, &[("A", "Z")]).is_err());
        assert!(GenotypeProfile::from_labels(&t, &[("A", "A"), ("A", "A"), ("A", "A")]).is_err());
        let p = GenotypeProfile::from_labels(&t, &[("C", "A")]).unwrap();
        assert_eq!(p.labels(&t), vec![("A", "C")]);
    }

    #[test]
    fn dominant_allele_founder_is_homozygous() {
        let t = two_allele_table(1.0 - 1e-9);
        let mut rng = stream_rng(1, 0, 0);
        for _ in 0..100 {
            assert_eq!(sample_founder(&t, &mut rng).genotypes()[0], Genotype::new(0, 0));
        }
    }

    #[test]
    fn heterozygote_frequency_matches_hwe() {
        let t = two_allele_table(0.5);
        let mut rng = stream_rng(2, 0, 0);
        let n = 100_000;
        let het = (0..n)
            .filter(|_| !sample_founder(&t, &mut rng).genotypes()[0].is_homozygous())
            .count() as f64
            / n as f64;
        assert!((het - 0.5).abs() <= 3.0 * (0.25 / n as f64).sqrt(), "{het}");
    }

    #[test]
    fn founder_is_reproducible() {
        let t = FrequencyTable::bundled();
        let a = sample_founder(&t, &mut stream_rng(9, 1, 3));
        let b = sample_founder(&t, &mut stream_rng(9, 1, 3));
        assert_eq!(a, b);
    }

    #[test]
    fn mendelian_children() {
        let t = two_allele_table(0.5);
        let prof = |x, y| GenotypeProfile::from_labels(&t, &[(x, y)]).unwrap();
        let mut rng = stream_rng(3, 0, 0);
        let fixed = ParentPair::new(prof("A", "A"), prof("B", "B")).unwrap();
        for _ in 0..50 {
            assert_eq!(sample_child(&fixed, &mut rng).genotypes()[0], Genotype::new(0, 1));
        }
        let het = ParentPair::new(prof("A", "B"), prof("A", "B")).unwrap();
        let n = 100_000;
        let mut counts = [0usize; 3];
        for _ in 0..n {
            let g = sample_child(&het, &mut rng).genotypes()[0];
            counts[(g.alleles()[0] + g.alleles()[1]) as usize] += 1;
        }
        for (c, p) in counts.iter().zip([0.25, 0.5, 0.25]) {
            let f = *c as f64 / n as f64;
            assert!((f - p).abs() <= 3.0 * (p * (1.0 - p) / n as f64).sqrt(), "{f} vs {p}");
        }
        let a = sample_child(&het, &mut stream_rng(4, 0, 0));
        let b = sample_child(&het, &mut stream_rng(4, 0, 0));
        assert_eq!(a, b);
    }

    #[test]
    fn transmission_sums_to_one() {
        for m in Genotype::all(4) {
            for f in Genotype::all(4) {
                let s: f64 = Genotype::all(4).map(|c| transmission(c, m, f)).sum();
                assert!((s - 1.0).abs() < 1e-15);
            }
        }
    }
}
