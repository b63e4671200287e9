//! Textual literal syntax shared by the CLI and test fixtures.
//!
//! ```text
//! [a,b,b]          list or multiset of symbols
//! [[a],[],[a,b]]   nested multisets
//! L:a  R:b         tagged symbols
//! (a,b)            pairs
//! ```
//!
//! Whitespace between tokens is ignored.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("literal error at offset {offset}: {message}")]
pub struct LiteralError {
    pub offset: usize,
    pub message: String,
}

impl LiteralError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        LiteralError {
            offset,
            message: message.into(),
        }
    }
}

pub(crate) fn is_symbol_char(c: char) -> bool {
    !(c.is_whitespace() || matches!(c, ',' | '[' | ']' | '(' | ')' | '{' | '}'))
}

/// A value with a literal representation. `Display` writes it; `read` parses it.
pub trait Literal: Sized + fmt::Display {
    fn read(cursor: &mut Cursor<'_>) -> Result<Self, LiteralError>;
}

/// Parses a complete literal; trailing input is an error.
pub fn parse<T: Literal>(text: &str) -> Result<T, LiteralError> {
    let mut cursor = Cursor::new(text);
    let value = T::read(&mut cursor)?;
    cursor.skip_ws();
    if !cursor.at_end() {
        return Err(LiteralError::new(cursor.offset(), "trailing input"));
    }
    Ok(value)
}

pub struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    pub fn offset(&self) -> usize {
        self.pos
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    pub fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    /// True if the remaining input starts with `prefix` (after whitespace).
    pub fn looking_at(&mut self, prefix: &str) -> bool {
        self.skip_ws();
        self.text[self.pos..].starts_with(prefix)
    }

    pub fn bump(&mut self, n: usize) {
        self.pos += n;
    }

    pub fn expect(&mut self, c: char) -> Result<(), LiteralError> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(found) => Err(LiteralError::new(
                self.pos,
                format!("expected {c:?}, found {found:?}"),
            )),
            None => Err(LiteralError::new(
                self.pos,
                format!("expected {c:?}, found end of input"),
            )),
        }
    }

    /// Consumes a maximal run of symbol characters.
    pub fn token(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c| !is_symbol_char(c)).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }
}

pub(crate) fn read_seq<T: Literal>(
    cursor: &mut Cursor<'_>,
    open: char,
    close: char,
) -> Result<Vec<T>, LiteralError> {
    cursor.expect(open)?;
    let mut items = Vec::new();
    if cursor.peek() == Some(close) {
        cursor.expect(close)?;
        return Ok(items);
    }
    loop {
        items.push(T::read(cursor)?);
        match cursor.peek() {
            Some(',') => cursor.expect(',')?,
            Some(c) if c == close => {
                cursor.expect(close)?;
                return Ok(items);
            }
            _ => {
                return Err(LiteralError::new(
                    cursor.offset(),
                    format!("expected ',' or {close:?}"),
                ))
            }
        }
    }
}

pub(crate) fn write_seq<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    open: char,
    close: char,
    items: &[T],
) -> fmt::Result {
    write!(f, "{open}")?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    write!(f, "{close}")
}
