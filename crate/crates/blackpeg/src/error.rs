use std::io;
use std::path::PathBuf;

use blackpeg_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("{msg}")]
    Usage { msg: String },
    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl RunError {
    pub fn usage(msg: impl Into<String>) -> Self {
        RunError::Usage { msg: msg.into() }
    }
}

/// 2 for usage errors, 3 for inconsistent answers, 4 when a randomized stage
/// hit its iteration cap, 1 for anything else.
pub fn exit_code(err: &RunError) -> i32 {
    match err {
        RunError::Usage { .. } => 2,
        RunError::Solver(e) => match e {
            Error::LengthMismatch { .. }
            | Error::ColorOutOfRange { .. }
            | Error::SignedEntryOutOfRange { .. }
            | Error::Usage(_)
            | Error::AlreadyWon => 2,
            Error::Protocol(_) => 3,
            Error::IterationCap { .. } => 4,
            Error::Codemaker(_) | Error::Won => 1,
        },
        _ => 1,
    }
}
