//! ai-semiring terms.
//!
//! A [`GeneralTerm`] is an expression tree over `+`, `.` and variables. By
//! distributivity and the semilattice laws every term equals a sum of words,
//! which is what an [`AiTerm`] stores: a nonempty set of nonempty words.

mod delta;
mod eval;
mod parse;
mod search;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use crate::symbol::Symbol;
pub use delta::{content, delta_set, exact_cover_term, m2_decide, occurrences, s7_decide, DeltaFamily};
pub use eval::{evaluate, evaluate_tree, holds_identity, Counterexample, IdentityCheck};
pub use parse::{parse_identity, parse_identity_file, parse_term};
pub use search::{identity_separation_search, SearchBounds, SearchOutcome};

pub type Word = Vec<Symbol>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneralTerm {
    Var(Symbol),
    Sum(Box<GeneralTerm>, Box<GeneralTerm>),
    Product(Box<GeneralTerm>, Box<GeneralTerm>),
}

impl GeneralTerm {
    pub fn var(name: &str) -> Self {
        GeneralTerm::Var(name.parse().expect("valid variable name"))
    }

    pub fn sum(a: GeneralTerm, b: GeneralTerm) -> Self {
        GeneralTerm::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: GeneralTerm, b: GeneralTerm) -> Self {
        GeneralTerm::Product(Box::new(a), Box::new(b))
    }

    pub fn depth(&self) -> usize {
        match self {
            GeneralTerm::Var(_) => 0,
            GeneralTerm::Sum(a, b) | GeneralTerm::Product(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Distributes every product over sums and collects the resulting words.
    pub fn normalize(&self) -> AiTerm {
        match self {
            GeneralTerm::Var(x) => AiTerm::word(vec![x.clone()]),
            GeneralTerm::Sum(a, b) => a.normalize().add(&b.normalize()),
            GeneralTerm::Product(a, b) => a.normalize().mul(&b.normalize()),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            GeneralTerm::Var(x) => write!(f, "{x}"),
            GeneralTerm::Sum(a, b) => {
                if prec > 0 {
                    f.write_str("(")?;
                }
                a.fmt_prec(f, 0)?;
                f.write_str(" + ")?;
                b.fmt_prec(f, 0)?;
                if prec > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            GeneralTerm::Product(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str("*")?;
                b.fmt_prec(f, 1)
            }
        }
    }
}

impl fmt::Display for GeneralTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Same as [`GeneralTerm::normalize`].
pub fn normalize_term(t: &GeneralTerm) -> AiTerm {
    t.normalize()
}

/// A nonempty finite set of nonempty words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AiTerm {
    words: BTreeSet<Word>,
}

impl AiTerm {
    /// Builds a term from words; `None` if there are no words or one is empty.
    pub fn new(words: impl IntoIterator<Item = Word>) -> Option<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        if words.is_empty() || words.iter().any(Vec::is_empty) {
            None
        } else {
            Some(AiTerm { words })
        }
    }

    pub fn word(w: Word) -> Self {
        AiTerm::new([w]).expect("a single nonempty word")
    }

    /// Parses a term and normalizes it.
    pub fn parse(text: &str) -> crate::Result<Self> {
        Ok(parse_term(text)?.normalize())
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn add(&self, other: &AiTerm) -> AiTerm {
        AiTerm {
            words: self.words.union(&other.words).cloned().collect(),
        }
    }

    pub fn mul(&self, other: &AiTerm) -> AiTerm {
        let mut words = BTreeSet::new();
        for u in &self.words {
            for v in &other.words {
                let mut w = u.clone();
                w.extend_from_slice(v);
                words.insert(w);
            }
        }
        AiTerm { words }
    }

    pub fn content(&self) -> BTreeSet<Symbol> {
        content(self)
    }

    /// Total number of variable occurrences.
    pub fn size(&self) -> usize {
        self.words.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for AiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            for x in w {
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// An identity `left = right` between normalized terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Identity {
    pub left: AiTerm,
    pub right: AiTerm,
}

impl Identity {
    pub fn new(left: AiTerm, right: AiTerm) -> Self {
        Identity { left, right }
    }

    pub fn parse(text: &str) -> crate::Result<Self> {
        let (l, r) = parse_identity(text)?;
        Ok(Identity::new(l.normalize(), r.normalize()))
    }

    pub fn content(&self) -> BTreeSet<Symbol> {
        let mut c = self.left.content();
        c.extend(self.right.content());
        c
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.left, self.right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_examples() {
        assert_eq!(AiTerm::parse("x(y+z)").unwrap().to_string(), "xy + xz");
        assert_eq!(AiTerm::parse("(x+y)(x+y)").unwrap().to_string(), "xx + xy + yx + yy");
        assert_eq!(AiTerm::parse("x + x").unwrap().to_string(), "x");
    }

    #[test]
    fn display_reparses() {
        let t = parse_term("x1(y + z*x1) + y").unwrap();
        let again = parse_term(&t.to_string()).unwrap();
        assert_eq!(t, again);
        assert_eq!(t.depth(), 4);
    }

    #[test]
    fn empty_words_are_not_terms() {
        assert!(AiTerm::new(Vec::<Word>::new()).is_none());
        assert!(AiTerm::new([vec![]]).is_none());
    }

    #[test]
    fn sizes_and_content() {
        let t = AiTerm::parse("xy + yzz").unwrap();
        assert_eq!(t.size(), 5);
        assert_eq!(t.len(), 2);
        let c: Vec<String> = t.content().iter().map(|s| s.to_string()).collect();
        assert_eq!(c, ["x", "y", "z"]);
    }
}
