//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors reported by parsers, constructors, and the rewrite engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two values of different degree were combined.
    DegreeMismatch { left: usize, right: usize },
    /// A subscript fell outside `1..=n` or violated a side condition.
    BadSubscript(String),
    /// Text input failed to parse; `at` is a byte offset into the input.
    Parse { at: usize, msg: String },
    /// A relation's source side did not occur at the requested position.
    PatternMismatch { pos: usize },
    /// A bounded search gave up before finding a rewrite path.
    SearchBound(String),
    /// Anything else (precondition violations, malformed certificates, ...).
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegreeMismatch { left, right } => {
                write!(f, "degree mismatch: {left} vs {right}")
            }
            Error::BadSubscript(msg) => write!(f, "bad subscript: {msg}"),
            Error::Parse { at, msg } => write!(f, "parse error at byte {at}: {msg}"),
            Error::PatternMismatch { pos } => {
                write!(f, "relation side does not match word at position {pos}")
            }
            Error::SearchBound(msg) => write!(f, "search bound exceeded: {msg}"),
            Error::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

#[cfg(test)]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
