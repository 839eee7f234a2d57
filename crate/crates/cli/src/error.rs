use std::io;

use thiserror::Error;

/// Failures of a command, each carrying a fixed process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] adlv_core::Error),

    #[error("{0}")]
    Input(String),

    #[error("io error on {path}: {source}")]
    Io { path: String, source: io::Error },

    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),

    /// Two methods that must agree did not.
    #[error("disagreement: {0}")]
    Disagreement(String),

    /// A verification suite reported a hard failure.
    #[error("{0} check(s) failed")]
    SuiteFailed(usize),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// `2` Kottwitz mismatch, `3` Mazur failure, `4` invalid input,
    /// `5` internal disagreement, `1` anything else.
    pub fn exit_code(&self) -> u8 {
        use adlv_core::Error as E;
        match self {
            CliError::Core(E::KappaMismatch { .. }) => 2,
            CliError::Core(E::MazurFails(_)) => 3,
            CliError::Core(E::Internal(_)) | CliError::Disagreement(_) => 5,
            CliError::Core(_) | CliError::Input(_) | CliError::Json(_) => 4,
            CliError::Io { .. } | CliError::SuiteFailed(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let kappa = CliError::from(adlv_core::Error::KappaMismatch {
            mu_sum: 1,
            kappa: 2,
        });
        assert_eq!(kappa.exit_code(), 2);
        assert_eq!(
            CliError::from(adlv_core::Error::MazurFails("x".into())).exit_code(),
            3
        );
        assert_eq!(CliError::Input("x".into()).exit_code(), 4);
        assert_eq!(CliError::Disagreement("x".into()).exit_code(), 5);
        assert_eq!(CliError::SuiteFailed(1).exit_code(), 1);
    }
}
