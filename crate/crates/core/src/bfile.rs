//! Reading OEIS b-files: one `index value` pair per line, `#` comments and
//! blank lines ignored.

use crate::error::{ParseError, ParseErrorKind};

/// One b-file line. `value` is `None` when the term does not fit in 64 bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub index: i64,
    pub value: Option<u64>,
}

pub fn parse_bfile(text: &str) -> Result<Vec<Term>, ParseError> {
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || ParseError::on_line(i + 1, ParseErrorKind::MalformedLine);
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let index: i64 = index.parse().map_err(|_| malformed())?;
        let digits = value.strip_prefix('-').unwrap_or(value);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let value = if value.starts_with('-') {
            None
        } else {
            value.parse().ok()
        };
        terms.push(Term { index, value });
    }
    Ok(terms)
}
