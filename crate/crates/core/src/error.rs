use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix dimension {0} is not supported (must be even and at most 8)")]
    Dimension(usize),

    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },

    #[error("jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("matrix is not positive definite: eigenvalue {eigenvalue:e}")]
    NotPositiveDefinite { eigenvalue: f64 },

    #[error("degenerate measured quadrature: variance {variance:e}")]
    DegenerateQuadrature { variance: f64 },

    #[error("invalid mode index {index} for a {n_modes}-mode state")]
    InvalidMode { index: usize, n_modes: usize },

    #[error("invalid mode permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("symplectic eigenvalue pairing failed: {a:e} vs {b:e}")]
    PairingFailure { a: f64, b: f64 },

    #[error("unphysical state: symplectic eigenvalue {nu}")]
    Unphysical { nu: f64 },

    #[error("hypothesis (v_y={v_y}, c_y={c_y}) lies outside the physical region")]
    UnphysicalHypothesis { v_y: f64, c_y: f64 },

    #[error("v_y = {v_y} lies below the parabola vertex V0 = {v0}")]
    BelowVertex { v_y: f64, v0: f64 },

    #[error("invalid parameter `{field}` = {value}: expected {range}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("insufficient data: {got} revealed samples, need at least {need}")]
    InsufficientData { got: usize, need: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable tag used by the command-line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::NotSymmetric { .. } => "not_symmetric",
            Error::NoConvergence { .. } => "no_convergence",
            Error::NotPositiveDefinite { .. } => "not_positive_definite",
            Error::DegenerateQuadrature { .. } => "degenerate_quadrature",
            Error::InvalidMode { .. } => "invalid_mode",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::PairingFailure { .. } => "pairing_failure",
            Error::Unphysical { .. } => "unphysical",
            Error::UnphysicalHypothesis { .. } => "unphysical_hypothesis",
            Error::BelowVertex { .. } => "below_vertex",
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::InsufficientData { .. } => "insufficient_data",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
