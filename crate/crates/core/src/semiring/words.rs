use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::FiniteSemiring;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::symbol::{split_symbols, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordVariant {
    /// Contiguous factors, no identity.
    S,
    /// Contiguous factors plus the empty word.
    M,
    /// Commutative: multiset divisors, no identity.
    Sc,
    /// Commutative with the empty word.
    Mc,
}

impl WordVariant {
    pub fn is_commutative(self) -> bool {
        matches!(self, WordVariant::Sc | WordVariant::Mc)
    }

    pub fn has_identity(self) -> bool {
        matches!(self, WordVariant::M | WordVariant::Mc)
    }
}

impl FromStr for WordVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" => Ok(WordVariant::S),
            "m" => Ok(WordVariant::M),
            "sc" => Ok(WordVariant::Sc),
            "mc" => Ok(WordVariant::Mc),
            _ => Err(Error::parse(1, 0, format!("unknown word variant {s:?}"))),
        }
    }
}

impl fmt::Display for WordVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordVariant::S => "S",
            WordVariant::M => "M",
            WordVariant::Sc => "Sc",
            WordVariant::Mc => "Mc",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSpec {
    pub variant: WordVariant,
    pub words: Vec<Vec<Symbol>>,
}

impl WordSpec {
    /// Builds a spec from words written as strings of letters.
    pub fn parse(variant: WordVariant, words: &[&str]) -> Result<Self> {
        if words.is_empty() && !variant.has_identity() {
            return Err(Error::precondition(format!("{variant}(W) needs at least one word")));
        }
        let words = words
            .iter()
            .map(|w| {
                if w.is_empty() {
                    Err(Error::precondition("words must be nonempty"))
                } else {
                    split_symbols(w)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WordSpec { variant, words })
    }
}

/// Builds `S(W)`, `M(W)`, `S_c(W)` or `M_c(W)`.
///
/// The carrier is in shortlex order over sorted letters: the empty word `1`
/// first for the monoid variants, the top `0` last. Commutative elements are
/// written with their letters sorted, so `b^2 a` is `abb`.
pub fn word_semiring(spec: &WordSpec, caps: &Caps) -> Result<FiniteSemiring> {
    let alphabet: Vec<Symbol> = spec
        .words
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let code: HashMap<&Symbol, u32> = alphabet.iter().enumerate().map(|(i, l)| (l, i as u32)).collect();
    let words: Vec<Vec<u32>> = spec
        .words
        .iter()
        .map(|w| {
            let mut w: Vec<u32> = w.iter().map(|l| code[l]).collect();
            if spec.variant.is_commutative() {
                w.sort_unstable();
            }
            w
        })
        .collect();

    let cap = caps.carrier as u128;
    let mut carrier: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    if spec.variant.has_identity() {
        carrier.insert((0, Vec::new()));
    }
    for w in &words {
        if spec.variant.is_commutative() {
            let mut counts = vec![0usize; alphabet.len()];
            for &c in w {
                counts[c as usize] += 1;
            }
            let mut current = vec![0usize; alphabet.len()];
            loop {
                // Odometer over all count vectors below `counts`.
                let mut i = 0;
                while i < current.len() && current[i] == counts[i] {
                    current[i] = 0;
                    i += 1;
                }
                if i == current.len() {
                    break;
                }
                current[i] += 1;
                let divisor: Vec<u32> = current
                    .iter()
                    .enumerate()
                    .flat_map(|(c, &k)| std::iter::repeat(c as u32).take(k))
                    .collect();
                carrier.insert((divisor.len(), divisor));
                Caps::check("word semiring", carrier.len() as u128 + 1, cap)?;
            }
        } else {
            for i in 0..w.len() {
                for j in i + 1..=w.len() {
                    carrier.insert((j - i, w[i..j].to_vec()));
                }
                Caps::check("word semiring", carrier.len() as u128 + 1, cap)?;
            }
        }
    }
    let elements: Vec<Vec<u32>> = carrier.into_iter().map(|(_, w)| w).collect();
    let position: HashMap<&[u32], usize> = elements.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let top = elements.len();

    let mut names: Vec<String> = elements
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|&c| alphabet[c as usize].to_string()).collect()
            }
        })
        .collect();
    names.push("0".to_string());

    let commutative = spec.variant.is_commutative();
    let mul = |x: usize, y: usize| {
        if x == top || y == top {
            return top;
        }
        let mut w = elements[x].clone();
        w.extend_from_slice(&elements[y]);
        if commutative {
            w.sort_unstable();
        }
        position.get(w.as_slice()).copied().unwrap_or(top)
    };
    let add = |x: usize, y: usize| if x == y { x } else { top };
    FiniteSemiring::from_fn(names, add, mul)
}
