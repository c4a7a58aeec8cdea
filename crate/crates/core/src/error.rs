use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m_ij - conj(m_ji)| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NotConverged { sweeps: usize, off_norm: f64 },

    #[error("matrix is not unitary: max |U^dag U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("basis columns are not orthonormal: max |B^dag B - I| = {deviation:e}")]
    NotUnitaryBasis { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("parameter {name} = {value} outside {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid {kind}: {invariant} violated (slack {slack:e})")]
    InvariantViolated {
        kind: &'static str,
        invariant: &'static str,
        slack: f64,
    },

    #[error("operation supports {supported} only, got {found}")]
    UnsupportedDimension { supported: &'static str, found: String },

    #[error("no sign change of the minimum partial-transpose eigenvalue on [{lo}, {hi}] (mu_min = {mu_lo:e} at {lo}, {mu_hi:e} at {hi})")]
    NoSignChange { lo: f64, hi: f64, mu_lo: f64, mu_hi: f64 },

    #[error("product decomposition does not reproduce the state (max deviation {deviation:e})")]
    DecompositionMismatch { deviation: f64 },

    #[error("certificate failed on piece `{piece}`: {detail}")]
    CertificateFailure { piece: String, detail: String },
}

impl Error {
    pub(crate) fn dims(expected: impl std::fmt::Display, found: impl std::fmt::Display) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
