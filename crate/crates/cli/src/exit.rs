//! Failure classes and their process exit codes.

use std::fmt;
use std::process::ExitCode;

use packing_forge::Error;

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, unreadable input: exit 1.
    Usage(String),
    /// Instance or search exceeds its budget: exit 2.
    Budget(String),
    /// A packing or property failed verification: exit 3.
    Verification(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Usage(_) => 1,
            Failure::Budget(_) => 2,
            Failure::Verification(_) => 3,
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Budget(m) | Failure::Verification(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::SearchBudget(_) => Failure::Budget(e.to_string()),
            Error::Verification(_) | Error::NotIndependent(..) => Failure::Verification(e.to_string()),
            Error::InvalidParams(_) | Error::Domain(_) | Error::Parse { .. } | Error::Io(_) => {
                Failure::Usage(e.to_string())
            }
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("serializing report: {e}"))
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;
