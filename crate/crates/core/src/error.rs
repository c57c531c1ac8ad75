use thiserror::Error;

use crate::flagset::FlagSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("face is not part of the lattice")]
    FaceNotInLattice,
    #[error("flag vector has no entry for f_{0}")]
    MissingEntry(FlagSet),
    #[error("sparse data is missing the basis entry f_{0}")]
    IncompleteBasis(FlagSet),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is not supported here")]
    UnsupportedDimension(usize),
    #[error("input is not Eulerian: {0}")]
    NotEulerian(String),
    #[error("cd-word has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("desk-scale bound exceeded: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
