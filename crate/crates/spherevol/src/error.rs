use thiserror::Error;

/// Error type shared by every module of the crate.
///
/// `Domain` covers precondition violations on mathematical operations
/// (arguments outside the range where a formula is meaningful), `Mesh`
/// covers structural problems with polyhedral surface data, `Numerical`
/// covers failures of iterative schemes (bracketing, convergence,
/// cross-validation mismatches), and `Io`/`Format` cover file handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("mesh error: {0}")]
    Mesh(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand for a `Domain` error with a formatted message.
macro_rules! domain_err {
    ($($arg:tt)*) => {
        return Err($crate::error::Error::Domain(format!($($arg)*)))
    };
}
pub(crate) use domain_err;
