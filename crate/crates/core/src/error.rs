use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("context mismatch: expected {expected}, found {found}")]
    ContextMismatch { expected: String, found: String },

    #[error("malformed element: {0}")]
    Malformed(String),

    #[error("singular matrix")]
    Singular,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("no membership oracle available for {0}")]
    OracleUnavailable(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn mismatch(expected: impl ToString, found: impl ToString) -> Error {
    Error::ContextMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
