use alloc::string::String;
use core::fmt;

/// Errors raised by the engine, the reductions and the solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A query or codeword does not have the expected number of positions.
    LengthMismatch { expected: usize, found: usize },
    /// A color outside `1..=k`.
    ColorOutOfRange { color: u32, k: u32 },
    /// A signed entry with absolute value above `n`.
    SignedEntryOutOfRange { value: i32, n: usize },
    /// The caller broke an operation's precondition.
    Usage(&'static str),
    /// A query was submitted after the codeword had already been found.
    AlreadyWon,
    /// The answers received cannot come from any codeword.
    Protocol(Violation),
    /// A randomized stage rejected too many samples in a row.
    IterationCap { stage: &'static str, attempts: usize },
    /// The codemaker could not produce an answer (closed input, IO failure).
    Codemaker(String),
    /// A query hit the codeword before the strategy finished.
    ///
    /// Strategies propagate this to stop early; the public entry points in
    /// [`pipeline`](crate::pipeline) turn it back into a solved game.
    Won,
}

/// The ways an answer stream can contradict every possible codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A black (and possibly white) count outside `0..=n`.
    AnswerOutOfRange { black: i64, white: Option<i64> },
    /// A token query answered with something other than 0 or 1.
    TokenAnswer { color: u32, answer: i32 },
    /// A combined round decoded to an impossible value for one of its queries.
    DecodedOutOfRange { value: i32, min: i32, max: i32 },
    /// A token was pushed into a part of the tree beyond position `n`.
    PhantomPosition { color: u32 },
    /// Two colors ended on the same leaf.
    SharedLeaf { position: usize },
    /// A subtree holds more tokens than it has positions.
    TooManyTokens { tokens: usize, positions: usize },
    /// A token reached a vertex whose interval excludes the color's true
    /// position. Only detectable when a witness permutation is attached.
    WitnessMismatch { color: u32 },
    /// Monochromatic census counts do not add up to `n`.
    CensusMismatch { total: usize, n: usize },
    /// The last disjoint single is forced, yet it did not score one peg.
    ForcedSingleRejected { black: usize },
    /// The fully determined codeword was guessed and not accepted.
    FinalGuessRejected { black: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} positions, found {found}")
            }
            Error::ColorOutOfRange { color, k } => {
                write!(f, "color {color} is outside 1..={k}")
            }
            Error::SignedEntryOutOfRange { value, n } => {
                write!(f, "signed entry {value} is outside -{n}..={n}")
            }
            Error::Usage(msg) => f.write_str(msg),
            Error::AlreadyWon => f.write_str("the codeword has already been found"),
            Error::Protocol(v) => write!(f, "inconsistent answers: {v}"),
            Error::IterationCap { stage, attempts } => write!(
                f,
                "{stage}: gave up after {attempts} rejected samples; rerun with another seed"
            ),
            Error::Codemaker(msg) => write!(f, "codemaker failed: {msg}"),
            Error::Won => f.write_str("codeword found"),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AnswerOutOfRange { black, white: None } => {
                write!(f, "black count {black} is out of range")
            }
            Violation::AnswerOutOfRange { black, white: Some(white) } => {
                write!(f, "answer ({black} black, {white} white) is out of range")
            }
            Violation::TokenAnswer { color, answer } => {
                write!(f, "token query for color {color} returned {answer}, expected 0 or 1")
            }
            Violation::DecodedOutOfRange { value, min, max } => {
                write!(f, "decoded answer {value} is outside {min}..={max}")
            }
            Violation::PhantomPosition { color } => {
                write!(f, "color {color} was placed beyond the last position")
            }
            Violation::SharedLeaf { position } => {
                write!(f, "two colors claim position {position}")
            }
            Violation::TooManyTokens { tokens, positions } => {
                write!(f, "{tokens} colors share {positions} positions")
            }
            Violation::WitnessMismatch { color } => {
                write!(f, "color {color} left the interval holding its position")
            }
            Violation::CensusMismatch { total, n } => {
                write!(f, "color counts add up to {total}, expected {n}")
            }
            Violation::ForcedSingleRejected { black } => {
                write!(f, "the forced last single scored {black} black pegs instead of 1")
            }
            Violation::FinalGuessRejected { black } => {
                write!(f, "the deduced codeword scored only {black} black pegs")
            }
        }
    }
}

impl core::error::Error for Error {}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Protocol(v)
    }
}
