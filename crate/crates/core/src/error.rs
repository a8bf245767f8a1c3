use alloc::string::String;

use crate::words::Composition;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("undefined statistic: {0} of the empty word")]
    UndefinedStatistic(&'static str),
    #[error("no canonical factorization for {0}")]
    NoCanonicalFactorization(Composition),
    #[error("{0} is not a Lyndon word")]
    NotLyndon(Composition),
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: &'static str, right: &'static str },
    #[error("wrong alphabet: expected {expected}, found {found}")]
    WrongAlphabet { expected: &'static str, found: &'static str },
    #[error("series constant term must be 1")]
    ConstantTermNotOne,
    #[error("truncation bound mismatch: {0} vs {1}")]
    BoundMismatch(usize, usize),
    #[error("index must be at least 1, got {0}")]
    NonPositiveIndex(u32),
    #[error("divided power sequence too short: degree {needed} requested, bound {bound}")]
    InsufficientBound { needed: usize, bound: usize },
    #[error("expected an integral result in {0}")]
    NotIntegral(&'static str),
    #[error("sublattice is not contained in the ambient lattice")]
    NotASublattice,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("rank deficiency: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },
    #[error("singular or non-unimodular matrix at weight {0}")]
    NotUnimodular(u32),
    #[error("{0}")]
    Other(String),
}
