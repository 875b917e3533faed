use thiserror::Error;

/// Errors raised by constructions and checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("point is not on the level set: |Ω(x,Ax) - 1| = {0:e}")]
    NotOnSigma(f64),

    #[error("vector is not horizontal: defect {0:e}")]
    NotHorizontal(f64),

    #[error("rank deficiency in {what}: expected {expected}, found {found}")]
    RankDeficient {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("matrix is not in the centralizer of A in Sp: residual {0:e}")]
    NotInCentralizer(f64),

    #[error("map is not an involution of the subspace: residual {0:e}")]
    NotInvolutive(f64),

    #[error("subspace is not closed under the bracket: residual {0:e}")]
    NotClosed(f64),

    #[error("ad X is not diagonalizable over the reals: {0}")]
    Defective(String),

    #[error("candidate violates {condition}: residual {residual:e}")]
    Candidate { condition: String, residual: f64 },

    #[error("sampling failed after {0} attempts")]
    Sampling(usize),

    #[error("no chart available: {0}")]
    NoChart(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
