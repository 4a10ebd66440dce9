use thiserror::Error;

/// Errors raised by the numerical kernels and the verification harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:.3e} exceeds tolerance {tol:.3e})")]
    NonHermitian { defect: f64, tol: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {min_eig:.3e})")]
    NotPositive { min_eig: f64 },

    #[error("eigensolver failed to converge")]
    ConvergenceFailure,

    #[error("power {exponent} requested of a matrix with eigenvalue {min_eig:.3e} below the faithfulness floor")]
    SingularPower { exponent: String, min_eig: f64 },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid matrix shape: {0}")]
    InvalidShape(String),

    #[error("state trace {trace} differs from 1")]
    NotNormalized { trace: f64 },

    #[error("state is not faithful: minimum eigenvalue {min_eig:.3e}")]
    NotFaithful { min_eig: f64 },

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("input must be nonzero")]
    ZeroInput,

    #[error("point {re}+{im}i lies outside the closed strip 0 <= Re z <= 1")]
    OutsideStrip { re: f64, im: f64 },

    #[error("family is not bounded on the strip: {0}")]
    UnboundedFamily(String),

    #[error("boundary norm {norm:.3e} at t = {t} is too small to take a logarithm")]
    LogOfZero { t: f64, norm: f64 },

    #[error("state is incompatible with the subalgebra: {0}")]
    IncompatibleState(String),

    #[error("restricted state lost faithfulness: minimum eigenvalue {min_eig:.3e}")]
    FaithfulnessLost { min_eig: f64 },

    #[error("configuration error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
