use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A size cap was exceeded before any work was done.
    #[error("{what} exceeds the cap of {cap}")]
    Resource { what: String, cap: u128 },

    /// A search ran out of time. This never means "no decomposition exists".
    #[error("search timed out after {0:?}")]
    Timeout(Duration),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),

    /// A group or poset fails the hypothesis a construction depends on.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// A construction produced output that failed its own verification, or a
    /// guaranteed object could not be found. Always a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn resource(what: impl Into<String>, cap: impl Into<u128>) -> Self {
        Error::Resource {
            what: what.into(),
            cap: cap.into(),
        }
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
