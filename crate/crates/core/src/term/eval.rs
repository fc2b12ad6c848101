use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AiTerm, GeneralTerm, Identity, Symbol};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::semiring::{Elem, FiniteSemiring};

fn lookup(assignment: &BTreeMap<Symbol, Elem>, x: &Symbol) -> Result<Elem> {
    assignment
        .get(x)
        .copied()
        .ok_or_else(|| Error::UnassignedVariable(x.to_string()))
}

/// Value of a normalized term: the sum of its word products.
pub fn evaluate(s: &FiniteSemiring, t: &AiTerm, assignment: &BTreeMap<Symbol, Elem>) -> Result<Elem> {
    let mut total = None;
    for w in t.words() {
        let mut value = None;
        for x in w {
            let v = lookup(assignment, x)?;
            value = Some(value.map_or(v, |acc| s.mul(acc, v)));
        }
        let value = value.expect("words are nonempty");
        total = Some(total.map_or(value, |acc| s.add(acc, value)));
    }
    Ok(total.expect("terms are nonempty"))
}

/// Value of an expression tree, evaluated as written.
pub fn evaluate_tree(s: &FiniteSemiring, t: &GeneralTerm, assignment: &BTreeMap<Symbol, Elem>) -> Result<Elem> {
    match t {
        GeneralTerm::Var(x) => lookup(assignment, x),
        GeneralTerm::Sum(a, b) => Ok(s.add(evaluate_tree(s, a, assignment)?, evaluate_tree(s, b, assignment)?)),
        GeneralTerm::Product(a, b) => Ok(s.mul(evaluate_tree(s, a, assignment)?, evaluate_tree(s, b, assignment)?)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub assignment: Vec<(Symbol, Elem)>,
    pub left: Elem,
    pub right: Elem,
}

impl Counterexample {
    pub fn describe(&self, s: &FiniteSemiring) -> String {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .map(|(x, v)| format!("{x}={}", s.name(*v)))
            .collect();
        format!(
            "{} gives {} on the left and {} on the right",
            parts.join(", "),
            s.name(self.left),
            s.name(self.right)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdentityCheck {
    Holds { assignments: u64 },
    Fails(Counterexample),
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds { .. })
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            IdentityCheck::Holds { .. } => None,
            IdentityCheck::Fails(c) => Some(c),
        }
    }
}

/// An identity with variables replaced by positions in its sorted content.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub vars: Vec<Symbol>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl Compiled {
    pub fn new(id: &Identity) -> Self {
        let vars: Vec<Symbol> = id.content().into_iter().collect();
        let code = |t: &AiTerm| -> Vec<Vec<usize>> {
            t.words()
                .map(|w| w.iter().map(|x| vars.binary_search(x).expect("in content")).collect())
                .collect()
        };
        Compiled {
            left: code(&id.left),
            right: code(&id.right),
            vars: vars.clone(),
        }
    }

    fn side(s: &FiniteSemiring, words: &[Vec<usize>], values: &[Elem]) -> Elem {
        let mut total = usize::MAX;
        for w in words {
            let mut v = values[w[0]];
            for &x in &w[1..] {
                v = s.mul(v, values[x]);
            }
            total = if total == usize::MAX { v } else { s.add(total, v) };
        }
        total
    }

    /// Exhaustive check in lexicographic assignment order, the first variable
    /// varying slowest.
    pub fn check(&self, s: &FiniteSemiring, caps: &Caps) -> Result<IdentityCheck> {
        let n = s.len();
        let k = self.vars.len();
        let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        Caps::check("identity check assignments", total, caps.assignments as u128)?;
        let mut values = vec![0; k];
        let mut count = 0u64;
        loop {
            count += 1;
            let l = Self::side(s, &self.left, &values);
            let r = Self::side(s, &self.right, &values);
            if l != r {
                return Ok(IdentityCheck::Fails(Counterexample {
                    assignment: self.vars.iter().cloned().zip(values).collect(),
                    left: l,
                    right: r,
                }));
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(IdentityCheck::Holds { assignments: count });
                }
                i -= 1;
                values[i] += 1;
                if values[i] < n {
                    break;
                }
                values[i] = 0;
            }
        }
    }
}

/// Checks `u = v` in `s` over every assignment of the variables.
pub fn holds_identity(s: &FiniteSemiring, u: &AiTerm, v: &AiTerm, caps: &Caps) -> Result<IdentityCheck> {
    Compiled::new(&Identity::new(u.clone(), v.clone())).check(s, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn assign(pairs: &[(&str, Elem)]) -> BTreeMap<Symbol, Elem> {
        pairs.iter().map(|(x, v)| (x.parse().unwrap(), *v)).collect()
    }

    fn check(s: &FiniteSemiring, text: &str) -> IdentityCheck {
        let id = Identity::parse(text).unwrap();
        holds_identity(s, &id.left, &id.right, &Caps::default()).unwrap()
    }

    #[test]
    fn evaluation_in_s7() {
        let s7 = fixtures::s7();
        let a = assign(&[("x", 0), ("y", 1)]);
        assert_eq!(evaluate(&s7, &AiTerm::parse("xy").unwrap(), &a).unwrap(), 1);
        assert_eq!(evaluate(&s7, &AiTerm::parse("x + y").unwrap(), &a).unwrap(), 2);
        assert_eq!(evaluate(&s7, &AiTerm::parse("x").unwrap(), &assign(&[("x", 2)])).unwrap(), 2);
        let err = evaluate(&s7, &AiTerm::parse("xz").unwrap(), &a).unwrap_err();
        assert_eq!(err, Error::UnassignedVariable("z".into()));
    }

    #[test]
    fn power_law_of_s7() {
        assert!(check(&fixtures::s7(), "xx = xxx").holds());
    }

    #[test]
    fn power_law_fails_in_sc_abb_at_b() {
        let sc = fixtures::sc_abb();
        let c = check(&sc, "xx = xxx");
        let c = c.counterexample().unwrap();
        assert_eq!(c.assignment, vec![("x".parse().unwrap(), sc.element("b").unwrap())]);
    }

    #[test]
    fn four_nilpotency_fails_in_s7() {
        let s7 = fixtures::s7();
        let c = check(&s7, "x1x2x3x4 = y1y2y3y4");
        let c = c.counterexample().unwrap();
        let values: Vec<&str> = c.assignment.iter().map(|(_, v)| s7.name(*v)).collect();
        assert_eq!(values, ["1", "1", "1", "1", "1", "1", "1", "a"]);
        // The all-ones left side against a right side containing the top also
        // fails; the witness above is simply first in lexicographic order.
        let mut a: BTreeMap<Symbol, Elem> = BTreeMap::new();
        for i in 1..=4 {
            a.insert(Symbol::indexed('x', i), 0);
            a.insert(Symbol::indexed('y', i), 2);
        }
        let id = Identity::parse("x1x2x3x4 = y1y2y3y4").unwrap();
        assert_ne!(evaluate(&s7, &id.left, &a).unwrap(), evaluate(&s7, &id.right, &a).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let small = Caps {
            assignments: 10,
            ..Caps::default()
        };
        let id = Identity::parse("xyz = zyx").unwrap();
        assert!(holds_identity(&fixtures::s7(), &id.left, &id.right, &small).is_err());
    }
}
