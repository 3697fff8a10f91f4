use thiserror::Error;

/// Errors surfaced by parsing, validation, and decision procedures.
#[derive(Error, Debug, Clone)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    /// A computation that refuses to guess (the three-valued verdicts turn
    /// this into `Verdict::Undetermined`).
    #[error("undetermined: {0}")]
    Undetermined(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line, col, msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Error {
        Error::Invalid(msg.into())
    }

    pub fn undetermined(msg: impl Into<String>) -> Error {
        Error::Undetermined(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
