use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Operands live over different variable sets or coefficient algebras.
    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("invalid graded algebra: {0}")]
    InvalidAlgebra(String),

    #[error("singular Euler data: {0}")]
    SingularEuler(String),

    #[error("weight with zero X-coefficient: {0}")]
    NonGenericWeight(String),

    #[error("non-generic residue ordering: {0}")]
    NonGenericOrdering(String),

    #[error("circle is not generic: {0}")]
    NotGeneric(String),

    #[error("inconsistent fixed-point data: {0}")]
    DataInconsistency(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid Weyl data: {0}")]
    InvalidWeyl(String),

    #[error("symmetry violation: {0}")]
    Symmetry(String),

    #[error("class is not divisible by D: {0}")]
    NotDivisible(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
