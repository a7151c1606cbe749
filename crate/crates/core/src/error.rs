use thiserror::Error;

/// Errors raised by the algebraic and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero polynomial is not allowed here: {0}")]
    ZeroPolynomial(&'static str),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid index set: {0}")]
    InvalidKSet(String),

    #[error("index {index} belongs to K_lambda = {kset:?}")]
    IndexInKSet { index: usize, kset: Vec<usize> },

    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("multiplicity {0} is not a triangular number")]
    NonTriangular(usize),

    #[error("root separation {separation:e} below tolerance {tolerance:e}; increase precision")]
    RootAmbiguity { separation: f64, tolerance: f64 },

    #[error("root refinement did not converge for factor of degree {degree}")]
    RootRefinement { degree: usize },

    #[error("precision budget exceeded: {0}")]
    Precision(String),

    #[error("series truncated at order {have}, need order {need}")]
    Truncation { have: i64, need: i64 },

    #[error("partition {0} has no roots to expand about")]
    NoRoots(String),

    #[error("partition is not even: {0} needs parts equal in consecutive pairs")]
    NotEven(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
