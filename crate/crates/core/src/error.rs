use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum JordanError {
    #[error("element has dimension {found}, algebra has dimension {expected}")]
    InvalidElement { expected: usize, found: usize },
    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra has no identity element")]
    NoIdentity,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("inner product is not positive definite")]
    NotPositiveDefinite,
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("element has repeated spectral values; resample")]
    RepeatedEigenvalues,
    #[error("algebra is not formally real")]
    NotFormallyReal,
    #[error("no regular element found after {0} samples")]
    MaxResamples(usize),
    #[error("not a Jordan frame: {0}")]
    BadFrame(String),
    #[error("elements are linearly dependent")]
    DegeneratePair,
    #[error("product is identically zero")]
    ZeroAlgebra,
    #[error("inner product is not associative (residual {residual:e})")]
    NotAssociativeMetric { residual: f64 },
    #[error("rank-one algebra has no deformation")]
    RankOne,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("algebra is trivial")]
    TrivialAlgebra,
    #[error("algebra is not a Jordan algebra (residual {residual:e})")]
    NotJordan { residual: f64 },
    #[error("invalid classical specification: {0}")]
    InvalidSpec(String),
    #[error("{what} failed its consistency check (residual {residual:e})")]
    Inconsistent { what: String, residual: f64 },
}

pub type Result<T> = std::result::Result<T, JordanError>;
