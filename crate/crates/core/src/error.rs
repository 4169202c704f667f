//! Error type shared by every module of the crate.

use std::path::PathBuf;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad arguments, shapes, configuration or violated preconditions.
    Usage,
    /// Missing, unreadable or corrupt files.
    Io,
    /// Solver non-convergence, degenerate fits, non-finite results.
    Numeric,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("mask generation failed: {0}")]
    Generation(String),

    #[error("numeric failure: {message}")]
    Numeric {
        message: String,
        /// Final relative residual for iterative solvers, when meaningful.
        residual: Option<f64>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Decode { path: PathBuf, message: String },

    #[error("external refiner failed: {0}")]
    External(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Shape(_)
            | Error::Config(_)
            | Error::Precondition(_)
            | Error::Generation(_)
            | Error::External(_) => ErrorKind::Usage,
            Error::Io { .. } | Error::Decode { .. } => ErrorKind::Io,
            Error::Numeric { .. } => ErrorKind::Numeric,
        }
    }

    /// Prefixes the message with `ctx`, keeping the variant (and so the kind).
    pub fn context(self, ctx: impl std::fmt::Display) -> Self {
        match self {
            Error::Shape(m) => Error::Shape(format!("{ctx}: {m}")),
            Error::Config(m) => Error::Config(format!("{ctx}: {m}")),
            Error::Precondition(m) => Error::Precondition(format!("{ctx}: {m}")),
            Error::Generation(m) => Error::Generation(format!("{ctx}: {m}")),
            Error::External(m) => Error::External(format!("{ctx}: {m}")),
            Error::Numeric { message, residual } => Error::Numeric {
                message: format!("{ctx}: {message}"),
                residual,
            },
            Error::Decode { path, message } => Error::Decode {
                path,
                message: format!("{ctx}: {message}"),
            },
            io @ Error::Io { .. } => io,
        }
    }

    pub(crate) fn numeric(message: impl Into<String>) -> Self {
        Error::Numeric {
            message: message.into(),
            residual: None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
