//! Black-peg Mastermind in a linear number of queries.
//!
//! The crate is split along the layers of the strategy:
//!
//! - [`engine`]: codewords, queries, peg counting and the bookkeeping
//!   [`Session`](engine::Session) every raw query goes through.
//! - [`reduction`]: zero-string discovery, the randomized disjoint-singles
//!   stage and the simulation of signed queries by pairs of raw queries.
//! - [`infotree`]: the complete binary information tree and its tokens.
//! - [`solver`]: the resumable `Preprocess`/`Solve` processes and the
//!   two-queries-for-three combiner that schedules them.
//! - [`pipeline`]: end-to-end strategies for every `(n, k)` range plus a
//!   naive scanning baseline.
//!
//! Everything here is pure computation over `alloc`; IO, file formats and
//! the command-line front end live in the `blackpeg` crate.

#![no_std]
#![warn(clippy::std_instead_of_alloc)]
#![warn(clippy::std_instead_of_core)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod engine;
pub mod infotree;
pub mod pipeline;
pub mod reduction;
pub mod solver;

pub use self::error::{Error, Violation};
pub use self::engine::{
    black_pegs, signed_black_pegs, white_pegs, Answer, Codemaker, Codeword, Color, HiddenCodeword,
    Mode, Phase, PhaseCounts, Query, Session, SignedQuery, TranscriptEntry,
};
pub use self::pipeline::{solve, SolveOptions, ZeroFinder};
