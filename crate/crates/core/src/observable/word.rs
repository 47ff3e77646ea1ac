use std::fmt;
use std::str::FromStr;

use crate::avenue::window;
use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::tree::PlanarShape;

/// One letter of a word: a concrete shape or the wildcard `*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Token {
    Shape(PlanarShape),
    Wildcard,
}

impl Token {
    pub fn shape(&self) -> Option<&PlanarShape> {
        match self {
            Token::Shape(s) => Some(s),
            Token::Wildcard => None,
        }
    }

    pub fn is_wildcard(&self) -> bool {
        matches!(self, Token::Wildcard)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Shape(s) => s.fmt(f),
            Token::Wildcard => f.write_str("*"),
        }
    }
}

impl From<PlanarShape> for Token {
    fn from(s: PlanarShape) -> Self {
        Token::Shape(s)
    }
}

/// A finite sequence of tokens sought as a contiguous window of the avenue.
/// Wildcards may only appear in the interior.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    tokens: Vec<Token>,
}

/// Validates a token sequence as a word.
pub fn make_word(tokens: Vec<Token>) -> Result<Word> {
    let (first, last) = match (tokens.first(), tokens.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::invalid("a word needs at least one token")),
    };
    if first.is_wildcard() || last.is_wildcard() {
        return Err(Error::InvalidWord(
            "wildcards may not start or end a word".into(),
        ));
    }
    Ok(Word { tokens })
}

/// The wildcard-free word read off the window `n..n+len`.
pub fn word_of(n: u64, len: u64) -> Result<Word> {
    let w = window(n, len)?;
    Ok(Word {
        tokens: w.shapes.into_iter().map(Token::Shape).collect(),
    })
}

/// The word read backwards.
pub fn transpose(word: &Word) -> Word {
    let tokens: Vec<Token> = word.tokens.iter().rev().cloned().collect();
    debug_assert!(!tokens[0].is_wildcard() && !tokens[tokens.len() - 1].is_wildcard());
    Word { tokens }
}

impl Word {
    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn has_wildcards(&self) -> bool {
        self.tokens.iter().any(Token::is_wildcard)
    }

    /// Whether `other` appears in `self` at `offset` on concrete letters, so
    /// that every occurrence of `self` forces one of `other`.
    pub(crate) fn forces_at(&self, other: &Word, offset: usize) -> bool {
        self.tokens
            .get(offset..offset + other.len())
            .is_some_and(|slice| {
                slice
                    .iter()
                    .zip(&other.tokens)
                    .all(|(mine, theirs)| match (mine, theirs) {
                        (Token::Shape(a), Token::Shape(b)) => a == b,
                        (_, Token::Wildcard) => true,
                        (Token::Wildcard, Token::Shape(_)) => false,
                    })
            })
    }

    pub(crate) fn forces(&self, other: &Word) -> bool {
        other.len() <= self.len()
            && (0..=self.len() - other.len()).any(|off| self.forces_at(other, off))
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        if text.is_empty() {
            return Err(ParseError::at(0, ParseErrorKind::Empty));
        }
        let mut tokens = Vec::new();
        let mut offset = 0;
        for piece in text.split(' ') {
            if piece.is_empty() {
                return Err(ParseError::at(offset, ParseErrorKind::BadSeparator));
            }
            let token = if piece == "*" {
                Token::Wildcard
            } else {
                Token::Shape(
                    PlanarShape::parse(piece)
                        .map_err(|e| ParseError::at(offset + e.offset().unwrap_or(0), e.kind))?,
                )
            };
            tokens.push((offset, token));
            offset += piece.len() + 1;
        }
        for &(off, ref tok) in [tokens.first(), tokens.last()].into_iter().flatten() {
            if tok.is_wildcard() {
                return Err(ParseError::at(off, ParseErrorKind::BoundaryWildcard));
            }
        }
        Ok(Word {
            tokens: tokens.into_iter().map(|(_, t)| t).collect(),
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            t.fmt(f)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}
