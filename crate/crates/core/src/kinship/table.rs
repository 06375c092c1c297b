use std::io::Read;
use std::path::Path;

use rand::distr::weighted::WeightedIndex;

use crate::error::{Error, Result};
use crate::tolerance::TOL;

const BUNDLED: &str = include_str!("../../data/synthetic_15_loci.csv");

#[derive(Debug, Clone, PartialEq)]
pub struct Allele {
    pub label: String,
    pub frequency: f64,
}

/// Alleles of one locus. Allele indices are positions in [`Locus::alleles`].
#[derive(Debug, Clone)]
pub struct Locus {
    name: String,
    alleles: Vec<Allele>,
    sampler: WeightedIndex<f64>,
}

impl Locus {
    pub fn new(name: impl Into<String>, alleles: Vec<Allele>) -> Result<Self> {
        let name = name.into();
        if alleles.len() < 2 {
            return Err(Error::InvalidTable(format!("locus {name} has fewer than two alleles")));
        }
        if alleles.len() > u16::MAX as usize {
            return Err(Error::InvalidTable(format!("locus {name} has too many alleles")));
        }
        for (i, a) in alleles.iter().enumerate() {
            if !(a.frequency > 0.0 && a.frequency.is_finite()) {
                return Err(Error::InvalidTable(format!(
                    "locus {name} allele {} has frequency {}",
                    a.label, a.frequency
                )));
            }
            if alleles[..i].iter().any(|b| b.label == a.label) {
                return Err(Error::InvalidTable(format!(
                    "locus {name} lists allele {} twice",
                    a.label
                )));
            }
        }
        let sum: f64 = alleles.iter().map(|a| a.frequency).sum();
        if (sum - 1.0).abs() > TOL.frequency_sum {
            return Err(Error::InvalidTable(format!("locus {name} frequencies sum to {sum}")));
        }
        let sampler = WeightedIndex::new(alleles.iter().map(|a| a.frequency))
            .map_err(|e| Error::InvalidTable(format!("locus {name}: {e}")))?;
        Ok(Self { name, alleles, sampler })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alleles(&self) -> &[Allele] {
        &self.alleles
    }

    pub fn n_alleles(&self) -> usize {
        self.alleles.len()
    }

    pub fn frequency(&self, allele: u16) -> f64 {
        self.alleles[allele as usize].frequency
    }

    pub fn index_of(&self, label: &str) -> Option<u16> {
        self.alleles.iter().position(|a| a.label == label).map(|i| i as u16)
    }

    pub(crate) fn sampler(&self) -> &WeightedIndex<f64> {
        &self.sampler
    }
}

impl PartialEq for Locus {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.alleles == other.alleles
    }
}

/// Per-locus allele frequencies for a population in Hardy-Weinberg and
/// linkage equilibrium.
///
/// The text format is CSV with header `locus,allele,frequency` and one record
/// per allele. Loci keep the order of their first appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    loci: Vec<Locus>,
}

impl FrequencyTable {
    pub fn new(loci: Vec<Locus>) -> Result<Self> {
        if loci.is_empty() {
            return Err(Error::InvalidTable("no loci".into()));
        }
        for (i, l) in loci.iter().enumerate() {
            if loci[..i].iter().any(|m| m.name == l.name) {
                return Err(Error::InvalidTable(format!("locus {} appears twice", l.name)));
            }
        }
        Ok(Self { loci })
    }

    /// The 15-locus synthetic table shipped with the crate. Frequencies were
    /// drawn once from a symmetric Dirichlet and frozen.
    pub fn bundled() -> Self {
        Self::from_csv_reader(BUNDLED.as_bytes()).expect("bundled table is valid")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::TableParse {
            line: 0,
            message: format!("{}: {e}", path.display()),
        })?;
        Self::from_csv_reader(file)
    }

    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let parse_err = |line: u64, message: String| Error::TableParse { line, message };
        let header = rdr
            .headers()
            .map_err(|e| parse_err(1, e.to_string()))?
            .clone();
        if header.iter().collect::<Vec<_>>() != ["locus", "allele", "frequency"] {
            return Err(parse_err(
                1,
                format!("expected header locus,allele,frequency, found {}", header.iter().collect::<Vec<_>>().join(",")),
            ));
        }
        // (name, first line, alleles)
        let mut groups: Vec<(String, u64, Vec<Allele>)> = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                parse_err(line, e.to_string())
            })?;
            let line = record.position().map_or(0, |p| p.line());
            let (locus, label, freq) = (&record[0], &record[1], &record[2]);
            if locus.is_empty() || label.is_empty() {
                return Err(parse_err(line, "empty locus or allele name".into()));
            }
            let frequency: f64 = freq
                .parse()
                .map_err(|_| parse_err(line, format!("cannot parse frequency {freq:?}")))?;
            let allele = Allele {
                label: label.to_string(),
                frequency,
            };
            match groups.iter_mut().find(|g| g.0 == locus) {
                Some(g) => g.2.push(allele),
                None => groups.push((locus.to_string(), line, vec![allele])),
            }
        }
        if groups.is_empty() {
            return Err(parse_err(1, "table has no records".into()));
        }
        let loci = groups
            .into_iter()
            .map(|(name, line, alleles)| {
                Locus::new(name, alleles).map_err(|e| match e {
                    Error::InvalidTable(m) => parse_err(line, m),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(loci)
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("locus,allele,frequency\n");
        for l in &self.loci {
            for a in &l.alleles {
                out.push_str(&format!("{},{},{}\n", l.name, a.label, a.frequency));
            }
        }
        out
    }

    pub fn n_loci(&self) -> usize {
        self.loci.len()
    }

    pub fn loci(&self) -> &[Locus] {
        &self.loci
    }

    pub fn locus(&self, i: usize) -> &Locus {
        &self.loci[i]
    }

    /// Table restricted to its first `n` loci.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.loci.len() {
            return Err(Error::InvalidTable(format!(
                "cannot take {n} of {} loci",
                self.loci.len()
            )));
        }
        Self::new(self.loci[..n].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_shape() {
        let t = FrequencyTable::bundled();
        assert_eq!(t.n_loci(), 15);
        for l in t.loci() {
            assert!((8..=12).contains(&l.n_alleles()), "{}", l.name());
            let s: f64 = l.alleles().iter().map(|a| a.frequency).sum();
            assert!((s - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn csv_round_trip() {
        let t = FrequencyTable::bundled();
        let again = FrequencyTable::from_csv_reader(t.to_csv_string().as_bytes()).unwrap();
        assert_eq!(t, again);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "locus,allele,frequency\nA,1,0.5\nA,2,zero\n";
        match FrequencyTable::from_csv_reader(bad.as_bytes()) {
            Err(Error::TableParse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let bad_sum = "locus,allele,frequency\nA,1,0.5\nA,2,0.5\nB,1,0.4\nB,2,0.4\n";
        match FrequencyTable::from_csv_reader(bad_sum.as_bytes()) {
            Err(Error::TableParse { line, message }) => {
                assert_eq!(line, 4);
                assert!(message.contains("sum"));
            }
            other => panic!("{other:?}"),
        }
        let bad_header = "locus,freq\nA,1\n";
        assert!(matches!(
            FrequencyTable::from_csv_reader(bad_header.as_bytes()),
            Err(Error::TableParse { line: 1, .. })
        ));
        let one_allele = "locus,allele,frequency\nA,1,1.0\n";
        assert!(FrequencyTable::from_csv_reader(one_allele.as_bytes()).is_err());
        let zero = "locus,allele,frequency\nA,1,1.0\nA,2,0.0\n";
        assert!(FrequencyTable::from_csv_reader(zero.as_bytes()).is_err());
    }

    #[test]
    fn prefix_keeps_order() {
        let t = FrequencyTable::bundled();
        let p = t.prefix(10).unwrap();
        assert_eq!(p.n_loci(), 10);
        assert_eq!(p.locus(9), t.locus(9));
        assert!(t.prefix(16).is_err());
    }
}
