use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operation requires a nonempty lattice set")]
    EmptySet,

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("expected generators in the {expected} variable world, found {found}")]
    WrongWorld {
        expected: &'static str,
        found: &'static str,
    },

    #[error("rank function violates the polymatroid axioms: {0}")]
    RankAxiomsNotVerified(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
