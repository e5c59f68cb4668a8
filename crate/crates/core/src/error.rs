use thiserror::Error;

/// Errors raised by the engine.
///
/// `Domain` errors are caused by bad input (an out-of-range vertex, a
/// crossing triangulation, ...). `Integrity` errors mean an internal
/// invariant failed, for instance an exchange relation that did not divide
/// exactly; they indicate a bug rather than a user mistake.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{code}: {message}")]
    Domain { code: &'static str, message: String },
    #[error("integrity violation: {0}")]
    Integrity(String),
}

impl Error {
    pub fn domain(code: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            code,
            message: message.into(),
        }
    }

    pub fn integrity(message: impl Into<String>) -> Self {
        Error::Integrity(message.into())
    }

    /// Machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain { code, .. } => code,
            Error::Integrity(_) => "integrity",
        }
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
