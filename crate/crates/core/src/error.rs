use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("arity must be at least 1")]
    ZeroArity,

    #[error("not a permutation of 1..{0}: {1:?}")]
    NotAPermutation(usize, Vec<u32>),

    #[error("variable index {index} out of range 1..={arity}")]
    VariableOutOfRange { index: u32, arity: usize },

    #[error("polynomial is not multilinear: {0}")]
    NotMultilinear(String),

    #[error("unknown polynomial `{0}`")]
    UnknownPolynomial(String),

    #[error("unknown relation set `{0}`")]
    UnknownRelationSet(String),

    #[error("unknown axiom set `{0}`")]
    UnknownAxiomSet(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("relation span has dimension {found}, expected {expected}")]
    SpanDimension { expected: usize, found: usize },

    #[error("basis monomials are dependent modulo the relations: {0}")]
    DependentBasis(String),

    #[error("relation set is not binary quadratic (found a relation of arity {0})")]
    NotQuadratic(usize),

    #[error("power series must have zero constant term for composition")]
    NonzeroConstantTerm,

    #[error("need dimensions for degrees 1..={needed}, got {got}")]
    InsufficientDims { needed: usize, got: usize },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("certificate does not re-expand to its target")]
    BadCertificate,

    #[error("unsupported: {0}")]
    Unsupported(String),
}
