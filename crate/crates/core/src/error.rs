use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range for Cl({p},{q})")]
    GeneratorOutOfRange { index: usize, p: usize, q: usize },

    #[error("signature mismatch: Cl({0},{1}) vs Cl({2},{3})")]
    SignatureMismatch(usize, usize, usize, usize),

    #[error("invalid signature Cl({p},{q}): at most 16 generators are supported")]
    SignatureTooLarge { p: usize, q: usize },

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("missing complex structure")]
    MissingComplexStructure,

    #[error("not a complex operator: {0}")]
    NotComplex(String),

    #[error("no structure map of the requested kind: {0}")]
    NoStructure(String),

    #[error("generator relations fail: {0}")]
    RelationFailure(String),

    #[error("invalid spin^c element: {0}")]
    InvalidSpinC(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("fiber solve produced dimension {found}, expected {expected}")]
    FiberDimension { found: usize, expected: usize },

    #[error("invalid conjugation: {0}")]
    InvalidConjugation(String),

    #[error("series argument must have zero constant term")]
    NonzeroConstantTerm,

    #[error("{0}")]
    InvalidInput(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
