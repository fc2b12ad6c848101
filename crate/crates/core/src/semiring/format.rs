//! The plain-text table format.
//!
//! ```text
//! elements: 1 a 0
//! add:
//!   1 0 0
//!   0 a 0
//!   0 0 0
//! mul:
//!   1 a 0
//!   a 0 0
//!   0 0 0
//! ```
//!
//! Optional `one:` and `zero:` keys name the designated constants. Tokens are
//! separated by arbitrary whitespace and `#` starts a comment, so the layout
//! above is only the canonical one produced by [`FiniteSemiring::to_text`].

use std::fmt;
use std::str::FromStr;

use super::{Elem, FiniteSemiring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub offset: usize,
}

/// A `key:` section and the tokens following it up to the next key.
#[derive(Debug)]
pub(crate) struct Section<'a> {
    pub key: Token<'a>,
    pub values: Vec<Token<'a>>,
}

/// Splits `text` into `key:` sections. Lines and offsets are 1-based and
/// 0-based respectively.
pub(crate) fn sections<'a>(text: &'a str, keys: &[&str]) -> Result<Vec<Section<'a>>> {
    let mut out: Vec<Section<'a>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = line.split('#').next().unwrap_or("");
        let mut rest = content;
        let mut base = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let after = &rest[start..];
            let len = after.find(char::is_whitespace).unwrap_or(after.len());
            let word = &after[..len];
            let offset = base + start;
            // A key may be glued to its first value, as in "one:1".
            let (head, tail) = match word.find(':') {
                Some(p) => (&word[..p], Some(&word[p + 1..])),
                None => (word, None),
            };
            if let Some(tail) = tail {
                if !keys.contains(&head) {
                    return Err(Error::parse(line_no, offset, format!("unknown key {head:?}")));
                }
                if out.iter().any(|s| s.key.text == head) {
                    return Err(Error::parse(line_no, offset, format!("duplicate key {head:?}")));
                }
                out.push(Section {
                    key: Token {
                        text: head,
                        line: line_no,
                        offset,
                    },
                    values: Vec::new(),
                });
                if !tail.is_empty() {
                    if tail.contains(':') {
                        return Err(Error::parse(line_no, offset + head.len() + 1, "unexpected ':'"));
                    }
                    out.last_mut().expect("just pushed").values.push(Token {
                        text: tail,
                        line: line_no,
                        offset: offset + head.len() + 1,
                    });
                }
            } else {
                match out.last_mut() {
                    Some(section) => section.values.push(Token {
                        text: word,
                        line: line_no,
                        offset,
                    }),
                    None => {
                        return Err(Error::parse(line_no, offset, format!("expected a key before {word:?}")))
                    }
                }
            }
            base = offset + len;
            rest = &content[base..];
        }
    }
    Ok(out)
}

pub(crate) fn end_position(text: &str) -> (usize, usize) {
    let line = text.lines().count().max(1);
    let offset = text.lines().last().map_or(0, str::len);
    (line, offset)
}

pub(crate) fn find<'s, 'a>(sections: &'s [Section<'a>], key: &str) -> Option<&'s Section<'a>> {
    sections.iter().find(|s| s.key.text == key)
}

pub(crate) fn required<'s, 'a>(text: &str, sections: &'s [Section<'a>], key: &str) -> Result<&'s Section<'a>> {
    find(sections, key).ok_or_else(|| {
        let (line, offset) = end_position(text);
        Error::parse(line, offset, format!("missing key {key:?}"))
    })
}

pub(crate) fn lookup(names: &[String], tok: &Token) -> Result<Elem> {
    names
        .iter()
        .position(|n| n == tok.text)
        .ok_or_else(|| Error::parse(tok.line, tok.offset, format!("unknown element {:?}", tok.text)))
}

pub(crate) fn carrier(section: &Section) -> Result<Vec<String>> {
    if section.values.is_empty() {
        return Err(Error::parse(section.key.line, section.key.offset, "empty carrier"));
    }
    let mut names: Vec<String> = Vec::with_capacity(section.values.len());
    for tok in &section.values {
        if !super::is_valid_name(tok.text) {
            return Err(Error::parse(tok.line, tok.offset, format!("invalid element name {:?}", tok.text)));
        }
        if names.iter().any(|n| n == tok.text) {
            return Err(Error::parse(tok.line, tok.offset, format!("duplicate element name {:?}", tok.text)));
        }
        names.push(tok.text.to_string());
    }
    Ok(names)
}

pub(crate) fn table(names: &[String], section: &Section) -> Result<Vec<Elem>> {
    let n = names.len();
    if section.values.len() != n * n {
        return Err(Error::parse(
            section.key.line,
            section.key.offset,
            format!(
                "{} table has {} entries, expected {}",
                section.key.text,
                section.values.len(),
                n * n
            ),
        ));
    }
    section.values.iter().map(|t| lookup(names, t)).collect()
}

pub(crate) fn single(names: &[String], section: &Section) -> Result<Elem> {
    match section.values.as_slice() {
        [tok] => lookup(names, tok),
        _ => Err(Error::parse(
            section.key.line,
            section.key.offset,
            format!("{} takes exactly one element", section.key.text),
        )),
    }
}

/// Writes an `n x n` table with columns padded to the widest name.
pub(crate) fn write_table(out: &mut String, key: &str, names: &[String], entry: impl Fn(Elem, Elem) -> Elem) {
    let width = names.iter().map(String::len).max().unwrap_or(1);
    out.push_str(key);
    out.push_str(":\n");
    for x in 0..names.len() {
        let mut line = String::from(" ");
        for y in 0..names.len() {
            line.push(' ');
            line.push_str(&format!("{:<width$}", names[entry(x, y)]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

const KEYS: &[&str] = &["elements", "add", "mul", "one", "zero"];

impl FiniteSemiring {
    /// Parses the text format; tables must be total but need not satisfy
    /// any axiom.
    pub fn from_text(text: &str) -> Result<Self> {
        let secs = sections(text, KEYS)?;
        let names = carrier(required(text, &secs, "elements")?)?;
        let add = table(&names, required(text, &secs, "add")?)?;
        let mul = table(&names, required(text, &secs, "mul")?)?;
        let one = find(&secs, "one").map(|s| single(&names, s)).transpose()?;
        let zero = find(&secs, "zero").map(|s| single(&names, s)).transpose()?;
        Ok(FiniteSemiring::from_raw(names, add, mul, one, zero))
    }

    /// Canonical serialization; parsing it back gives an equal value.
    pub fn to_text(&self) -> String {
        let mut out = String::from("elements:");
        for name in self.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        write_table(&mut out, "add", self.names(), |x, y| self.add(x, y));
        write_table(&mut out, "mul", self.names(), |x, y| self.mul(x, y));
        if let Some(one) = self.one() {
            out.push_str(&format!("one: {}\n", self.name(one)));
        }
        if let Some(zero) = self.zero() {
            out.push_str(&format!("zero: {}\n", self.name(zero)));
        }
        out
    }
}

impl FromStr for FiniteSemiring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FiniteSemiring::from_text(s)
    }
}

impl From<FiniteSemiring> for String {
    fn from(s: FiniteSemiring) -> String {
        s.to_text()
    }
}

impl TryFrom<String> for FiniteSemiring {
    type Error = Error;

    fn try_from(text: String) -> Result<Self> {
        FiniteSemiring::from_text(&text)
    }
}

impl fmt::Display for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const S7: &str = "elements: 1 a 0\nadd:\n  1 0 0\n  0 a 0\n  0 0 0\nmul:\n  1 a 0\n  a 0 0\n  0 0 0\n";

    #[test]
    fn s7_round_trips_byte_for_byte() {
        let s = FiniteSemiring::from_text(S7).unwrap();
        assert_eq!(s, fixtures::s7());
        assert_eq!(s.to_text(), S7);
    }

    #[test]
    fn layout_is_free() {
        let squashed = "elements:1 a 0 add: 1 0 0 0 a 0 0 0 0\nmul: 1 a 0 a 0 0 0 0 0 # trailing comment\n";
        assert_eq!(FiniteSemiring::from_text(squashed).unwrap(), fixtures::s7());
    }

    #[test]
    fn columns_are_aligned() {
        let text = fixtures::b21().to_text();
        assert!(text.contains("\n  0  0  0  0  0  0\n"), "{text}");
    }

    #[test]
    fn constants_are_written_and_read() {
        let s = fixtures::s7_zero();
        let text = s.to_text();
        assert!(text.ends_with("zero: zero\n"), "{text}");
        assert_eq!(FiniteSemiring::from_text(&text).unwrap(), s);
    }

    #[test]
    fn errors_carry_positions() {
        let err = FiniteSemiring::from_text("elements: 1 a 0\nadd: 1 0 0 0 a 0 0 0 q\nmul: 1 a 0 a 0 0 0 0 0").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                offset: 21,
                message: "unknown element \"q\"".into()
            }
        );
        let err = FiniteSemiring::from_text("elements: 1 a 0\nadd: 1 0 0").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, offset: 0, .. }));
        let err = FiniteSemiring::from_text("elements: 1 a 0\nadd: 1 0 0 0 a 0 0 0 0").unwrap_err();
        assert!(err.to_string().contains("missing key \"mul\""));
        assert!(FiniteSemiring::from_text("elements: 1 1").is_err());
        assert!(FiniteSemiring::from_text("colour: red").is_err());
    }
}
