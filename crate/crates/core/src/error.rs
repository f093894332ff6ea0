use thiserror::Error;

/// Errors raised by the numerical routines and the command-line front end.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("not a density matrix: {0}")]
    NotDensity(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operators do not commute (max commutator entry {norm:.3e})")]
    NonCommuting { norm: f64 },

    #[error("problem exceeds the solver scale guard ({dim} > {limit})")]
    ScaleGuard { dim: usize, limit: usize },

    #[error("copy count {n} is too large for the brute-force oracle (max {max})")]
    OracleTooLarge { n: u32, max: u32 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
