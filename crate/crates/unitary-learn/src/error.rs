use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {details}")]
    DimMismatch { op: &'static str, details: String },

    #[error("matrix is singular to working precision (pivot magnitude {pivot:.3e})")]
    Singular { pivot: f64 },

    #[error("rank-deficient input: column {col} has norm {norm:.3e} after projection")]
    RankDeficient { col: usize, norm: f64 },

    #[error("invalid gate application: {0}")]
    InvalidGate(String),

    #[error("circuit on {n} qubits exceeds the supported maximum of {max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("dataset contains no state pairs")]
    EmptyDataset,

    #[error(
        "backtracking exhausted {halvings} halvings from lambda0 = {lambda0}; \
         the gradient is inconsistent with the loss (run a finite-difference gradient check)"
    )]
    BacktrackingExhausted { halvings: u32, lambda0: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{op} failed for {path}: {source}")]
    Io {
        op: &'static str,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to parse {path}: {msg}")]
    Parse { path: PathBuf, msg: String },
}

impl Error {
    pub(crate) fn dim(op: &'static str, details: impl Into<String>) -> Self {
        Error::DimMismatch {
            op,
            details: details.into(),
        }
    }

    /// Short machine-readable category, used by the CLI for one-line errors.
    pub fn category(&self) -> &'static str {
        match self {
            Error::DimMismatch { .. } => "dimension",
            Error::Singular { .. } => "singular",
            Error::RankDeficient { .. } => "rank",
            Error::InvalidGate(_) => "gate",
            Error::TooManyQubits { .. } => "circuit",
            Error::EmptyDataset => "dataset",
            Error::BacktrackingExhausted { .. } => "backtracking",
            Error::InvalidConfig(_) => "config",
            Error::Io { .. } => "io",
            Error::Parse { .. } => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
