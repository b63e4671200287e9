//! Alphabet symbols.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::literal::{self, Cursor, Literal, LiteralError};

/// A symbol of a finite alphabet.
///
/// Symbols are non-empty strings that contain no commas, brackets or
/// whitespace, so that they can be embedded in list and multiset literals
/// without quoting. They are ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Symbol(String);

impl Symbol {
    pub fn new(text: impl Into<String>) -> Result<Self, LiteralError> {
        let text = text.into();
        if text.is_empty() {
            return Err(LiteralError::new(0, "empty symbol"));
        }
        if let Some(pos) = text.find(|c: char| !literal::is_symbol_char(c)) {
            return Err(LiteralError::new(
                pos,
                format!("invalid character in symbol {text:?}"),
            ));
        }
        Ok(Symbol(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Shorthand for building a symbol from a string known to be valid.
///
/// Panics on invalid text.
pub fn sym(text: &str) -> Symbol {
    Symbol::new(text).unwrap_or_else(|e| panic!("invalid symbol {text:?}: {e}"))
}

impl TryFrom<String> for Symbol {
    type Error = LiteralError;

    fn try_from(text: String) -> Result<Self, Self::Error> {
        Symbol::new(text)
    }
}

impl From<Symbol> for String {
    fn from(s: Symbol) -> String {
        s.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Literal for Symbol {
    fn read(cursor: &mut Cursor<'_>) -> Result<Self, LiteralError> {
        let start = cursor.offset();
        let token = cursor.token();
        if token.is_empty() {
            return Err(LiteralError::new(start, "expected a symbol"));
        }
        Ok(Symbol(token.to_owned()))
    }
}

impl FromStr for Symbol {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        literal::parse(s)
    }
}

/// An order-significant list of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymList(pub Vec<Symbol>);

impl SymList {
    pub fn new(items: Vec<Symbol>) -> Self {
        SymList(items)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn items(&self) -> &[Symbol] {
        &self.0
    }

    /// Prepends `head`.
    pub fn cons(head: Symbol, tail: &[Symbol]) -> Self {
        let mut items = Vec::with_capacity(tail.len() + 1);
        items.push(head);
        items.extend_from_slice(tail);
        SymList(items)
    }

    pub fn split_first(&self) -> Option<(&Symbol, &[Symbol])> {
        self.0.split_first()
    }

    pub fn concat(&self, other: &SymList) -> SymList {
        let mut items = self.0.clone();
        items.extend_from_slice(&other.0);
        SymList(items)
    }
}

impl From<Vec<Symbol>> for SymList {
    fn from(items: Vec<Symbol>) -> Self {
        SymList(items)
    }
}

impl FromIterator<Symbol> for SymList {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        SymList(iter.into_iter().collect())
    }
}

impl std::ops::Deref for SymList {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Display for SymList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        literal::write_seq(f, '[', ']', &self.0)
    }
}

impl Literal for SymList {
    fn read(cursor: &mut Cursor<'_>) -> Result<Self, LiteralError> {
        literal::read_seq(cursor, '[', ']').map(SymList)
    }
}

impl FromStr for SymList {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        literal::parse(s)
    }
}
