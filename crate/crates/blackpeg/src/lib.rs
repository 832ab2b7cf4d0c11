//! Benchmark harness, file formats and interactive play for
//! [`blackpeg_core`].
//!
//! The `blackpeg` binary wraps this crate; see `blackpeg --help`.

pub mod bench;
mod error;
pub mod game;
pub mod play;
pub mod record;
pub mod transcript;

pub use self::error::{exit_code, RunError};
