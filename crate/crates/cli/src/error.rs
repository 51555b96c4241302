use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error(transparent)]
    Solver(bspline_burgers::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Config {
            key: key.into(),
            reason: reason.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for configuration errors, 3 for solver failures, 4 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Solver(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    /// The offending key of a configuration error.
    pub fn key(&self) -> Option<&str> {
        match self {
            CliError::Config { key, .. } => Some(key),
            _ => None,
        }
    }
}

impl From<bspline_burgers::Error> for CliError {
    fn from(e: bspline_burgers::Error) -> Self {
        use bspline_burgers::Error as E;
        match e {
            E::InvalidConfig { key, reason } => CliError::config(key, reason),
            E::UnknownProblem(name) => CliError::config(
                "problem",
                format!("unknown problem `{name}` (see list-problems)"),
            ),
            other => CliError::Solver(other),
        }
    }
}
