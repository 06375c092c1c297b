//! Kinship from DNA profiles: simulation under Hardy-Weinberg and Mendelian
//! inheritance, sibling and parentage LRs, and shared-allele score LRs.
//!
//! Loci are assumed unlinked and there is no mutation model, so an
//! incompatible parent gives a hard zero.

mod experiment;
mod genotype;
mod lr;
mod score;
mod table;

pub use experiment::{KinshipExperiment, KinshipRow, kinship_experiment};
pub use genotype::{
    Genotype, GenotypeProfile, ParentPair, hwe_probability, ibs_locus, ibs_score, sample_child, sample_founder,
    transmission,
};
pub use lr::{
    SIBLING_IBD, SiblingMethod, lr_parentage, lr_sibling_feature, lr_sibling_feature_with, parentage_locus_lrs,
    sibling_conditional_enumerated, sibling_conditional_ibd, sibling_locus_lrs,
};
pub use score::{
    KinshipHypothesis, ScoreDistribution, SiblingScoreModel, locus_ibs_distribution, lr_sibling_score,
    score_count_distribution,
};
pub use table::{Allele, FrequencyTable, Locus};
