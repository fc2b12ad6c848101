use serde::{Deserialize, Serialize};

use super::eval::{Compiled, Counterexample, IdentityCheck};
use super::{AiTerm, Identity, Symbol};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::semiring::FiniteSemiring;

const VARIABLE_NAMES: [char; 8] = ['x', 'y', 'z', 'u', 'v', 'w', 's', 't'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Most distinct variables in an identity (at most 8).
    pub vars: usize,
    /// Longest word.
    pub length: usize,
    /// Most words on each side.
    pub summands: usize,
    /// Only words in which no variable repeats.
    pub linear: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome {
    Found {
        identity: Identity,
        /// Where the identity fails in the second semiring.
        counterexample: Counterexample,
        candidates: u64,
    },
    NoneWithinBounds {
        candidates: u64,
    },
}

impl SearchOutcome {
    pub fn identity(&self) -> Option<&Identity> {
        match self {
            SearchOutcome::Found { identity, .. } => Some(identity),
            SearchOutcome::NoneWithinBounds { .. } => None,
        }
    }
}

/// Looks for an identity that holds in `s` and fails in `t`.
///
/// Candidates come in order of the number of variables, then the number of
/// words, then the total length. Variables are introduced in order of first
/// occurrence, reading the left side before the right, so most identities
/// equal up to renaming are tried once. The first hit is returned.
pub fn identity_separation_search(
    s: &FiniteSemiring,
    t: &FiniteSemiring,
    bounds: &SearchBounds,
    caps: &Caps,
) -> Result<SearchOutcome> {
    if bounds.vars == 0 || bounds.length == 0 || bounds.summands == 0 {
        return Err(Error::precondition("search bounds must be positive"));
    }
    if bounds.vars > VARIABLE_NAMES.len() {
        return Err(Error::precondition(format!(
            "at most {} variables are supported",
            VARIABLE_NAMES.len()
        )));
    }
    let mut search = Search {
        s,
        t,
        bounds: *bounds,
        caps,
        candidates: 0,
        found: None,
    };
    for vars in 1..=bounds.vars {
        for words in 2..=2 * bounds.summands {
            for p in 1..=words / 2 {
                let q = words - p;
                if q > bounds.summands {
                    continue;
                }
                for size in words..=words * bounds.length {
                    search.shape(vars, p, q, size)?;
                    if let Some((identity, counterexample)) = search.found.take() {
                        return Ok(SearchOutcome::Found {
                            identity,
                            counterexample,
                            candidates: search.candidates,
                        });
                    }
                }
            }
        }
    }
    Ok(SearchOutcome::NoneWithinBounds {
        candidates: search.candidates,
    })
}

struct Search<'a> {
    s: &'a FiniteSemiring,
    t: &'a FiniteSemiring,
    bounds: SearchBounds,
    caps: &'a Caps,
    candidates: u64,
    found: Option<(Identity, Counterexample)>,
}

impl Search<'_> {
    /// All candidates with `p` words on the left, `q` on the right, `vars`
    /// variables and total length `size`.
    fn shape(&mut self, vars: usize, p: usize, q: usize, size: usize) -> Result<()> {
        let mut lengths = Vec::with_capacity(p + q);
        self.lengths(vars, p, q, size, &mut lengths)
    }

    // Word lengths are nondecreasing within each side.
    fn lengths(&mut self, vars: usize, p: usize, q: usize, left: usize, lengths: &mut Vec<usize>) -> Result<()> {
        if self.found.is_some() {
            return Ok(());
        }
        let i = lengths.len();
        if i == p + q {
            if left == 0 {
                let total: usize = lengths.iter().sum();
                let mut letters = Vec::with_capacity(total);
                return self.fill(vars, p, lengths, &mut letters, 0);
            }
            return Ok(());
        }
        let min = if i == 0 || i == p { 1 } else { lengths[i - 1] };
        let remaining = p + q - i - 1;
        for len in min..=self.bounds.length {
            if len + remaining > left {
                break;
            }
            lengths.push(len);
            self.lengths(vars, p, q, left - len, lengths)?;
            lengths.pop();
        }
        Ok(())
    }

    /// Restricted growth strings over the concatenated words.
    fn fill(&mut self, vars: usize, p: usize, lengths: &[usize], letters: &mut Vec<usize>, used: usize) -> Result<()> {
        if self.found.is_some() {
            return Ok(());
        }
        let total: usize = lengths.iter().sum();
        let pos = letters.len();
        if pos == total {
            if used == vars {
                self.candidate(p, lengths, letters)?;
            }
            return Ok(());
        }
        // Not enough positions left to introduce the missing variables.
        if vars - used > total - pos {
            return Ok(());
        }
        let word_start = word_start(lengths, pos);
        for x in 0..=used.min(vars - 1) {
            if self.bounds.linear && letters[word_start..].contains(&x) {
                continue;
            }
            letters.push(x);
            self.fill(vars, p, lengths, letters, used.max(x + 1))?;
            letters.pop();
        }
        Ok(())
    }

    fn candidate(&mut self, p: usize, lengths: &[usize], letters: &[usize]) -> Result<()> {
        let mut words: Vec<Vec<usize>> = Vec::with_capacity(lengths.len());
        let mut at = 0;
        for &len in lengths {
            words.push(letters[at..at + len].to_vec());
            at += len;
        }
        let (left, right) = words.split_at(p);
        // Words within a side are a set: require strictly increasing order.
        if !strictly_increasing(left) || !strictly_increasing(right) {
            return Ok(());
        }
        if left == right {
            return Ok(());
        }
        self.candidates += 1;
        if self.candidates > self.caps.candidates {
            return Err(Error::SizeCap {
                what: "separation search candidates",
                size: self.candidates as u128,
                cap: self.caps.candidates as u128,
            });
        }
        let term = |ws: &[Vec<usize>]| {
            AiTerm::new(
                ws.iter()
                    .map(|w| w.iter().map(|&x| Symbol::letter(VARIABLE_NAMES[x])).collect::<Vec<_>>()),
            )
            .expect("nonempty words")
        };
        let identity = Identity::new(term(left), term(right));
        if identity.left == identity.right {
            return Ok(());
        }
        let compiled = Compiled::new(&identity);
        // Run the cheaper exhaustive check first; both must come out right.
        let vars = compiled.vars.len() as u32;
        let s_cost = (self.s.len() as u128).saturating_pow(vars);
        let t_cost = (self.t.len() as u128).saturating_pow(vars);
        let in_t = |this: &Self| compiled.check(this.t, this.caps);
        let in_s = |this: &Self| compiled.check(this.s, this.caps);
        let (s_check, t_check) = if t_cost <= s_cost {
            let t_check = in_t(self)?;
            if t_check.holds() {
                return Ok(());
            }
            (in_s(self)?, t_check)
        } else {
            let s_check = in_s(self)?;
            if !s_check.holds() {
                return Ok(());
            }
            (s_check, in_t(self)?)
        };
        if let (true, IdentityCheck::Fails(c)) = (s_check.holds(), t_check) {
            self.found = Some((identity, c));
        }
        Ok(())
    }
}

fn word_start(lengths: &[usize], pos: usize) -> usize {
    let mut at = 0;
    for &len in lengths {
        if pos < at + len {
            return at;
        }
        at += len;
    }
    at
}

fn strictly_increasing(words: &[Vec<usize>]) -> bool {
    words
        .windows(2)
        .all(|w| (w[0].len(), &w[0]) < (w[1].len(), &w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn s7_against_sc_abb_finds_the_power_law() {
        let bounds = SearchBounds {
            vars: 8,
            length: 4,
            summands: 2,
            linear: false,
        };
        let out = identity_separation_search(&fixtures::s7(), &fixtures::sc_abb(), &bounds, &Caps::default()).unwrap();
        assert_eq!(out.identity().unwrap().to_string(), "xx = xxx");
    }

    #[test]
    fn a_semiring_is_not_separated_from_itself() {
        let bounds = SearchBounds {
            vars: 2,
            length: 2,
            summands: 2,
            linear: false,
        };
        let s7 = fixtures::s7();
        let out = identity_separation_search(&s7, &s7, &bounds, &Caps::default()).unwrap();
        assert!(matches!(out, SearchOutcome::NoneWithinBounds { candidates } if candidates > 0));
    }

    #[test]
    fn candidate_cap() {
        let bounds = SearchBounds {
            vars: 3,
            length: 3,
            summands: 2,
            linear: false,
        };
        let caps = Caps {
            candidates: 5,
            ..Caps::default()
        };
        let s7 = fixtures::s7();
        assert!(identity_separation_search(&s7, &s7, &bounds, &caps).is_err());
    }
}
