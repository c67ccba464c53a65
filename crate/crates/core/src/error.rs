use alloc::string::String;

/// Errors raised by the operator-theory kernels.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimMismatch {
        context: &'static str,
        expected: String,
        found: String,
    },
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPsd { eigenvalue: f64 },
    #[error("non-finite entry")]
    NonFinite,
    #[error("sequence is not an operator-valued orthonormal basis (residual {residual:.3e})")]
    NotOrthonormalBasis { residual: f64 },
    #[error("sequence is not an operator-valued Riesz basis (sigma_min {sigma_min:.3e})")]
    NotRieszBasis { sigma_min: f64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("vector {index} of the sequence is zero")]
    ZeroVector { index: usize },
    #[error("probe {index} is zero")]
    ZeroProbe { index: usize },
    #[error("biorthogonality violated (max off-diagonal pairing {max_pairing:.3e})")]
    BiorthogonalityViolated { max_pairing: f64 },
    #[error("multiplier specs do not share their operator and vector data")]
    SharedDataMismatch,
    #[error("operator is not in the generalized trace class (residual {residual:.3e})")]
    NotTraceClass { residual: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn dim_mismatch(
    context: &'static str,
    expected: impl core::fmt::Display,
    found: impl core::fmt::Display,
) -> Error {
    use alloc::string::ToString;
    Error::DimMismatch {
        context,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
