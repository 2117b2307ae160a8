use alloc::string::String;

use thiserror::Error;

use crate::Parity;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },

    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },

    #[error("coordinate {0} of the evaluation point is zero")]
    ZeroCoordinate(usize),

    #[error("degree {degree} out of range for n = {n}")]
    DegreeOutOfRange { degree: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("composite of consecutive maps is not zero")]
    CompositionNonzero,

    #[error("endomorphism {index} is not well defined on the {parity} group (relations not preserved)")]
    IllDefined { index: usize, parity: Parity },

    #[error("endomorphisms {first} and {second} do not commute on the {parity} group")]
    NonCommuting {
        first: usize,
        second: usize,
        parity: Parity,
    },

    #[error("endomorphism {index} is not an automorphism of the {parity} group")]
    NotAutomorphism { index: usize, parity: Parity },

    #[error("expected {expected} endomorphisms, got {got}")]
    EndoCount { expected: usize, got: usize },

    #[error("trials must be at least 1")]
    InvalidTrials,

    #[error("invalid sampling range: {0}")]
    InvalidRange(String),

    #[error("invalid series spec: {0}")]
    InvalidSeries(String),

    #[error("series mismatch: {big} vs {small}")]
    SeriesMismatch { big: char, small: char },

    #[error("subgroup rank {small} must be smaller than {big}")]
    RankOrder { big: usize, small: usize },

    #[error("rank {rank} exceeds the enumeration cap {cap}")]
    RankCap { rank: usize, cap: usize },

    #[error("exactness witness failed at spot {spot}")]
    NotExact { spot: usize },
}
