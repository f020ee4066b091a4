use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The instance would exceed the configured size budget. `predicted` is
    /// `None` when the count does not even fit in 128 bits.
    #[error("budget exceeded: predicted {what} = {} exceeds limit {limit}", display_count(*.predicted))]
    BudgetExceeded {
        what: &'static str,
        predicted: Option<u128>,
        limit: u64,
    },

    #[error("branch-and-bound stopped after {0} nodes without proving optimality")]
    SearchBudget(u64),

    #[error("vertices {0} and {1} are adjacent; the set is not independent")]
    NotIndependent(u32, u32),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn display_count(c: Option<u128>) -> String {
    match c {
        Some(v) => v.to_string(),
        None => "more than 2^128".to_string(),
    }
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
