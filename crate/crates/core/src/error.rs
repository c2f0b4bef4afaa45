use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("graph order {order} exceeds the dense limit of {cap} vertices")]
    OrderTooLarge { order: usize, cap: usize },

    #[error("expected at least one {0}")]
    Empty(&'static str),

    #[error("invalid adjacency: {0}")]
    InvalidAdjacency(String),

    #[error("{format} parse error at line {line}: {message}")]
    Parse {
        format: &'static str,
        line: usize,
        message: String,
    },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error(
        "matrix is not symmetric: entry ({row}, {col}) differs from its transpose by {delta:e}"
    )]
    NotSymmetric { row: usize, col: usize, delta: f64 },

    #[error("matrix has {rows} rows but {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error(
        "Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("partition is not equitable: {0}")]
    NotEquitable(String),

    #[error("{corollary}: {reason}")]
    Domain { corollary: String, reason: String },

    #[error("{context}: {reason}")]
    MemberTooLarge { context: String, reason: String },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }
}
