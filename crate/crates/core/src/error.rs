use thiserror::Error;

pub type Result<T, E = BttError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum BttError {
    /// Malformed or inconsistent input (bad ids, infeasible covers, bad parameters).
    #[error("input error: {0}")]
    Input(String),

    /// Parse failure in a text format, with the 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Instance is larger than a solver is configured to handle.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An iterative solver stopped at its iteration cap.
    #[error("no convergence after {iterations} iterations (bounds {lower} .. {upper})")]
    NonConvergence { iterations: usize, lower: f64, upper: f64 },

    /// A search ran out of its node budget.
    #[error("budget of {budget} nodes exhausted (bounds {lower} .. {upper})")]
    BudgetExhausted { budget: u64, lower: String, upper: String },

    /// A verification check failed.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl BttError {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        BttError::Input(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            BttError::Input(_) | BttError::Parse { .. } | BttError::Io(_) | BttError::Json(_) | BttError::Csv(_) => 2,
            BttError::Capacity(_) | BttError::NonConvergence { .. } | BttError::BudgetExhausted { .. } => 3,
            BttError::Verification(_) => 4,
            BttError::Internal(_) => 1,
        }
    }
}
