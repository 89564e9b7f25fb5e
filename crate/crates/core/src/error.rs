use thiserror::Error;

/// Errors reported by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("capacity error: {0}")]
    Capacity(String),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("basis error: {0}")]
    Basis(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("verification error: {0}")]
    Verification(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable class name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Structural(_) => "structural",
            Error::Capacity(_) => "capacity",
            Error::Parity(_) => "parity",
            Error::Basis(_) => "basis",
            Error::Parameter(_) => "parameter",
            Error::Domain(_) => "domain",
            Error::Verification(_) => "verification",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }
}
