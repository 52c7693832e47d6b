use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied arguments outside an operation's domain.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("EKR inapplicable: n={n} < (k-t+1)(t+1) = {required} for k={k}, t={t}")]
    EkrInapplicable {
        n: u32,
        k: u32,
        t: u32,
        required: u32,
    },

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("promise violated: distance {distance} not in {{0, {half}}}")]
    PromiseViolation { distance: u32, half: u32 },

    /// A strategy that fails some promised question pair.
    #[error("strategy loses on x_A={x_a}, x_B={x_b}")]
    LosingPair { x_a: String, x_b: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error in {location}: {message}")]
    Parse { location: String, message: String },

    #[error("pipeline failure in {section}: {message}")]
    Pipeline { section: String, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
