use std::path::PathBuf;

use thiserror::Error;

/// Exit code for invalid arguments.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for unreadable/unwritable files and malformed input.
pub const EXIT_IO: i32 = 2;
/// Exit code for memory-budget and size-guard refusals.
pub const EXIT_CAPACITY: i32 = 3;
/// Exit code of `validate` when a check fails.
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Engine(#[from] nucleus_core::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Error {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use nucleus_core::Error as Core;
        match self {
            Error::Io { .. } | Error::Parse { .. } => EXIT_IO,
            Error::Usage(_) => EXIT_USAGE,
            Error::Engine(Core::Capacity { .. } | Core::OracleTooLarge { .. }) => EXIT_CAPACITY,
            Error::Engine(_) => EXIT_USAGE,
        }
    }
}
