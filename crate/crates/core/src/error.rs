use thiserror::Error;

use crate::algebra::AlgebraKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch {
        left: AlgebraKind,
        right: AlgebraKind,
    },
    #[error("clifford algebra with {0} generators is not supported")]
    UnsupportedClifford(usize),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown blade index {index} for {kind}")]
    UnknownBlade { index: usize, kind: AlgebraKind },
    #[error("variable x{index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("polynomial is not monogenic: {0}")]
    NotMonogenic(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("sharpness witness invalid: {0}")]
    WitnessInvalid(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
