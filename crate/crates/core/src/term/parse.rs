//! Grammar:
//!
//! ```text
//! identity := sum '=' sum
//! sum      := product ('+' product)*
//! product  := factor ('*'? factor)*
//! factor   := variable | '(' sum ')'
//! variable := [a-z][0-9]*
//! ```

use super::GeneralTerm;
use crate::error::{Error, Result};
use crate::symbol::{read_symbol, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(Symbol),
    Plus,
    Star,
    Open,
    Close,
    Equals,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut at = 0;
    while at < bytes.len() {
        let tok = match bytes[at] {
            b if b.is_ascii_whitespace() => {
                at += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'(' => Tok::Open,
            b')' => Tok::Close,
            b'=' => Tok::Equals,
            _ => match read_symbol(text, at)? {
                Some((sym, end)) => {
                    out.push((Tok::Var(sym), at));
                    at = end;
                    continue;
                }
                None => {
                    let c = text[at..].chars().next().expect("in bounds");
                    return Err(Error::parse(1, at, format!("unexpected character {c:?}")));
                }
            },
        };
        out.push((tok, at));
        at += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, o)| o)
    }

    fn sum(&mut self) -> Result<GeneralTerm> {
        let mut t = self.product()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            t = GeneralTerm::sum(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<GeneralTerm> {
        let mut t = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    t = GeneralTerm::product(t, self.factor()?);
                }
                Some(Tok::Var(_)) | Some(Tok::Open) => {
                    t = GeneralTerm::product(t, self.factor()?);
                }
                _ => return Ok(t),
            }
        }
    }

    fn factor(&mut self) -> Result<GeneralTerm> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Var(x)) => {
                self.pos += 1;
                Ok(GeneralTerm::Var(x))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let t = self.sum()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::parse(1, self.offset(), "expected ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(_) => Err(Error::parse(1, at, "expected a variable or '('")),
            None => Err(Error::parse(1, at, "unexpected end of input")),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(Error::parse(1, self.offset(), "unexpected input")),
        }
    }
}

fn parser(text: &str) -> Result<Parser> {
    Ok(Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    })
}

pub fn parse_term(text: &str) -> Result<GeneralTerm> {
    let mut p = parser(text)?;
    let t = p.sum()?;
    p.finish()?;
    Ok(t)
}

/// Parses `left = right`.
pub fn parse_identity(text: &str) -> Result<(GeneralTerm, GeneralTerm)> {
    let mut p = parser(text)?;
    let left = p.sum()?;
    if p.peek() != Some(&Tok::Equals) {
        return Err(Error::parse(1, p.offset(), "expected '='"));
    }
    p.pos += 1;
    let right = p.sum()?;
    p.finish()?;
    Ok((left, right))
}

/// One identity per line; `#` starts a comment and blank lines are skipped.
pub fn parse_identity_file(text: &str) -> Result<Vec<(GeneralTerm, GeneralTerm)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let parsed = parse_identity(content).map_err(|e| match e {
            Error::Parse { offset, message, .. } => Error::Parse {
                line: i + 1,
                offset,
                message,
            },
            other => other,
        })?;
        out.push(parsed);
    }
    Ok(out)
}
