use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter or variable: a lowercase ASCII letter followed by optional
/// decimal digits, as in `x`, `a1` or `y12`.
///
/// Symbols sort by letter, then numerically by index, with the bare letter
/// first: `a < a1 < a2 < a10 < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Symbol {
    base: u8,
    index: Option<u32>,
}

impl Symbol {
    pub fn new(base: char, index: Option<u32>) -> Self {
        assert!(base.is_ascii_lowercase(), "symbols start with a lowercase letter");
        Symbol {
            base: base as u8,
            index,
        }
    }

    pub fn indexed(base: char, index: u32) -> Self {
        Symbol::new(base, Some(index))
    }

    pub fn letter(base: char) -> Self {
        Symbol::new(base, None)
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.base, self.index).cmp(&(other.base, other.index))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base as char)?;
        if let Some(i) = self.index {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl From<Symbol> for String {
    fn from(s: Symbol) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for Symbol {
    type Error = Error;

    fn try_from(s: String) -> Result<Symbol> {
        s.parse()
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Symbol> {
        match split_symbols(s)?.as_slice() {
            [one] => Ok(one.clone()),
            _ => Err(Error::parse(1, 0, format!("{s:?} is not a single symbol"))),
        }
    }
}

/// Reads a symbol starting at byte `at`, returning it with the end offset.
pub(crate) fn read_symbol(text: &str, at: usize) -> Result<Option<(Symbol, usize)>> {
    let bytes = text.as_bytes();
    if at >= bytes.len() || !bytes[at].is_ascii_lowercase() {
        return Ok(None);
    }
    let mut end = at + 1;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    let index = if end == at + 1 {
        None
    } else {
        Some(
            text[at + 1..end]
                .parse()
                .map_err(|_| Error::parse(1, at + 1, "symbol index too large"))?,
        )
    };
    Ok(Some((
        Symbol {
            base: bytes[at],
            index,
        },
        end,
    )))
}

/// Splits `a1a2b` into `a1`, `a2`, `b`. Error offsets are relative to `text`.
pub fn split_symbols(text: &str) -> Result<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut at = 0;
    while at < text.len() {
        match read_symbol(text, at)? {
            Some((sym, end)) => {
                out.push(sym);
                at = end;
            }
            None => return Err(Error::parse(1, at, format!("expected a letter in {text:?}"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_and_order() {
        let s = split_symbols("a10a2ab").unwrap();
        let text: Vec<String> = s.iter().map(|x| x.to_string()).collect();
        assert_eq!(text, ["a10", "a2", "a", "b"]);
        let mut sorted = s.clone();
        sorted.sort();
        let text: Vec<String> = sorted.iter().map(|x| x.to_string()).collect();
        assert_eq!(text, ["a", "a2", "a10", "b"]);
    }

    #[test]
    fn bad_input() {
        assert!(split_symbols("aB").is_err());
        assert!(split_symbols("1a").is_err());
        assert!("xy".parse::<Symbol>().is_err());
        assert_eq!("x3".parse::<Symbol>().unwrap(), Symbol::indexed('x', 3));
    }
}
