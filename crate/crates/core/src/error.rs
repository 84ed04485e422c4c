use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    /// A covariance (or other SPD input) is numerically rank deficient.
    /// `mode` is 1-based when the failing matrix belongs to a tensor mode.
    #[error("singular covariance{}: smallest/largest eigenvalue ratio {ratio:.3e}", mode_suffix(.mode))]
    Singular { mode: Option<usize>, ratio: f64 },

    #[error("minimum distance index undefined: row {0} of the gain matrix is zero")]
    ZeroRow(usize),

    #[error("asymptotic variance undefined for mode {mode} pair ({k}, {l}): both mean kurtoses are zero")]
    UndefinedVariance { mode: usize, k: usize, l: usize },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn mode_suffix(mode: &Option<usize>) -> String {
    match mode {
        Some(m) => format!(" in mode {m}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn with_mode(self, m: usize) -> Self {
        match self {
            Error::Singular { ratio, .. } => Error::Singular { mode: Some(m), ratio },
            other => other,
        }
    }
}
