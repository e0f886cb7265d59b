use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sco_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("artifact: {0}")]
    Json(#[from] serde_json::Error),
    #[error("catalog file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("decomposition was built for poset {expected}, artifact poset hashes to {actual}")]
    HashMismatch { expected: String, actual: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("catalog rows failed: {0}")]
    Catalog(String),
    #[error("no symmetric chain decomposition exists for {0}")]
    Absent(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// 0 pass, 1 verification failure (or a negative search answer), 2 bad
/// input, 3 resource limit or timeout.
pub fn exit_code(e: &CliError) -> i32 {
    use sco_core::Error as E;
    match e {
        CliError::Core(E::Resource { .. } | E::Timeout(_)) => 3,
        CliError::Core(E::Internal(_)) => 1,
        CliError::Core(_) => 2,
        CliError::Io { .. } | CliError::Json(_) | CliError::Toml(_) | CliError::HashMismatch { .. } => 2,
        CliError::Verification(_) | CliError::Catalog(_) | CliError::Absent(_) => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sco_core::Error as E;
    use std::time::Duration;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&E::Timeout(Duration::ZERO).into()), 3);
        assert_eq!(exit_code(&E::Resource { what: "x".into(), cap: 1 }.into()), 3);
        assert_eq!(exit_code(&E::Parse("x".into()).into()), 2);
        assert_eq!(exit_code(&E::Hypothesis("x".into()).into()), 2);
        assert_eq!(exit_code(&E::Internal("x".into()).into()), 1);
        assert_eq!(exit_code(&CliError::Verification("x".into())), 1);
    }
}
