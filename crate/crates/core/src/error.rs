use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed tables: wrong dimensions or out-of-range indices.
    #[error("input error: {0}")]
    Input(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The operation needs structure the table does not declare.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A required property check failed; carries the failing report.
    #[error("check `{}` failed{}", .0.check, .0.detail.as_deref().map(|d| format!(": {d}")).unwrap_or_default())]
    Check(Box<Report>),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

impl From<Report> for Error {
    fn from(report: Report) -> Self {
        Error::Check(Box::new(report))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
