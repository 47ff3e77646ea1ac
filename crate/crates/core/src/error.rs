use std::fmt;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("range of {requested} entries exceeds the memory budget of {budget} entries")]
    ResourceLimit { requested: u64, budget: u64 },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("value does not fit in 64 bits")]
    Overflow,

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax error in a shape, word or b-file, located by byte offset
/// (or by line for b-files).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at {location}")]
pub struct ParseError {
    pub location: Location,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn at(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError {
            location: Location::Offset(offset),
            kind,
        }
    }

    pub(crate) fn on_line(line: usize, kind: ParseErrorKind) -> Self {
        ParseError {
            location: Location::Line(line),
            kind,
        }
    }

    /// Byte offset of the error, if it was reported by offset.
    pub fn offset(&self) -> Option<usize> {
        match self.location {
            Location::Offset(o) => Some(o),
            Location::Line(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Offset(usize),
    /// 1-based line number.
    Line(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Offset(o) => write!(f, "offset {o}"),
            Location::Line(l) => write!(f, "line {l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("more than one top-level group")]
    MultipleRoots,
    #[error("expected a single space between tokens")]
    BadSeparator,
    #[error("wildcard at the boundary of a word")]
    BoundaryWildcard,
    #[error("malformed b-file line")]
    MalformedLine,
}
