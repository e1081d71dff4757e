use thiserror::Error;

/// Errors produced by the library.
///
/// Variants fall into two families: input/contract errors (bad dimensions,
/// invalid states, bad configuration) and numerical failures (eigensolver or
/// quadrature did not converge). The CLI maps them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported matrix dimension {0} (expected 2, 4 or 8)")]
    Dimension(usize),

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid coupling: {0}")]
    InvalidCoupling(String),

    #[error("invalid dephasing point: {0}")]
    InvalidPoint(String),

    #[error("factor {qubit} is a computational basis state; the dynamics reduces to the two-qubit case")]
    DegenerateFactor { qubit: usize },

    #[error("invalid bath: {0}")]
    InvalidBath(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    EigenNotConverged { sweeps: usize, residual: f64 },

    #[error("quadrature did not converge (estimated error {estimate:e}, requested {requested:e})")]
    Quadrature { estimate: f64, requested: f64 },

    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("ragged grid: {0}")]
    RaggedGrid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Shape(_) => "shape",
            Error::NotHermitian(_) => "not_hermitian",
            Error::NonFinite => "non_finite",
            Error::InvalidState(_) => "invalid_state",
            Error::InvalidCoupling(_) => "invalid_coupling",
            Error::InvalidPoint(_) => "invalid_point",
            Error::DegenerateFactor { .. } => "degenerate_factor",
            Error::InvalidBath(_) => "invalid_bath",
            Error::EigenNotConverged { .. } => "eigen_not_converged",
            Error::Quadrature { .. } => "quadrature",
            Error::Config { .. } => "config",
            Error::RaggedGrid(_) => "ragged_grid",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
        }
    }

    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EigenNotConverged { .. } | Error::Quadrature { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
