//! Equational facts about a single finite semiring.

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteSemiring};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{lcm, FiniteGroup};
use crate::term::{holds_identity, Counterexample, Identity};

/// Least `k`, then least `p`, with `x^k = x^(k+p)` for every `x`.
pub fn index_period(s: &FiniteSemiring) -> (usize, usize) {
    let mut k = 1;
    let mut p = 1;
    for x in s.elements() {
        let (ki, pi) = element_index_period(s, x);
        k = k.max(ki);
        p = lcm(p, pi);
    }
    (k, p)
}

/// Index and period of the monogenic subsemigroup generated by `x`.
pub fn element_index_period(s: &FiniteSemiring, x: Elem) -> (usize, usize) {
    // powers[i] = x^(i+1)
    let mut powers = vec![x];
    let mut seen = vec![usize::MAX; s.len()];
    seen[x] = 0;
    loop {
        let next = s.mul(*powers.last().expect("nonempty"), x);
        if seen[next] != usize::MAX {
            let first = seen[next];
            return (first + 1, powers.len() - first);
        }
        seen[next] = powers.len();
        powers.push(next);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatLawCheck {
    /// Which of `x1, x2, y1, y2` occur.
    pub present: [bool; 4],
    pub identity: Identity,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

/// The law `x1 u x2 + y1 u y2 + y1 v y2 = x1 v x2 + y1 u y2 + y1 v y2` in all
/// sixteen versions obtained by deleting some of `x1, x2, y1, y2`.
///
/// Variant `i` keeps the variables whose bit is set in `i`, `x1` being bit 0.
pub fn flat_variety_laws() -> Vec<([bool; 4], Identity)> {
    (0..16u8)
        .map(|mask| {
            let present = [0, 1, 2, 3].map(|i| mask >> i & 1 == 1);
            let name = |i: usize, s: &'static str| if present[i] { s } else { "" };
            let (x1, x2, y1, y2) = (name(0, "x1"), name(1, "x2"), name(2, "y1"), name(3, "y2"));
            let text = format!(
                "{x1}u{x2} + {y1}u{y2} + {y1}v{y2} = {x1}v{x2} + {y1}u{y2} + {y1}v{y2}"
            );
            (present, Identity::parse(&text).expect("well formed"))
        })
        .collect()
}

pub fn check_flat_variety_laws(s: &FiniteSemiring, caps: &Caps) -> Result<Vec<FlatLawCheck>> {
    flat_variety_laws()
        .into_iter()
        .map(|(present, identity)| {
            let check = holds_identity(s, &identity.left, &identity.right, caps)?;
            Ok(FlatLawCheck {
                present,
                holds: check.holds(),
                counterexample: check.counterexample().cloned(),
                identity,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlatMonoidVerdict {
    /// `{1, a^k, 0}` is a subsemiring isomorphic to `S_7`.
    ContainsS7 {
        generator: Elem,
        k: usize,
        triple: [Elem; 3],
    },
    /// Every element below the top is invertible.
    FlatGroup {
        group: FiniteGroup,
        carrier: Vec<Elem>,
    },
}

/// Splits finite flat monoids into those containing `S_7` and flat
/// extensions of groups, by looking at the idempotent power of each element
/// other than the identity and the top.
pub fn classify_flat_monoid(s: &FiniteSemiring) -> Result<FlatMonoidVerdict> {
    if !s.is_flat() {
        return Err(Error::precondition("semiring is not flat"));
    }
    let one = s
        .identity_element()
        .ok_or_else(|| Error::precondition("semiring has no multiplicative identity"))?;
    let top = s.flat_top().expect("flat");
    for a in s.elements().filter(|&a| a != one && a != top) {
        let (index, period) = element_index_period(s, a);
        // The idempotent power lies in the cycle and is either 1 or the top.
        let e = s.pow(a, index.div_ceil(period) * period);
        debug_assert_eq!(s.mul(e, e), e);
        if e == top {
            let mut k = 1;
            while s.pow(a, k + 1) != top {
                k += 1;
            }
            return Ok(FlatMonoidVerdict::ContainsS7 {
                generator: a,
                k,
                triple: [one, s.pow(a, k), top],
            });
        }
    }
    let carrier: Vec<Elem> = s.elements().filter(|&x| x != top).collect();
    let group = FiniteGroup::from_semiring_subset(s, &carrier)?;
    Ok(FlatMonoidVerdict::FlatGroup { group, carrier })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::{cyclic, flat_extension};
    use crate::semiring::{word_semiring, WordSpec, WordVariant};

    #[test]
    fn index_and_period() {
        assert_eq!(index_period(&fixtures::s7()), (2, 1));
        assert_eq!(index_period(&fixtures::sc_abb()), (3, 1));
        assert_eq!(index_period(&fixtures::m2()), (1, 1));
        assert_eq!(index_period(&flat_extension(&cyclic(3), false)), (1, 3));
    }

    #[test]
    fn law_variants() {
        let laws = flat_variety_laws();
        assert_eq!(laws.len(), 16);
        assert_eq!(laws[0].1.to_string(), "u + v = u + v");
        assert_eq!(laws[15].1.to_string(), "x1ux2 + y1uy2 + y1vy2 = x1vx2 + y1uy2 + y1vy2");
        let report = check_flat_variety_laws(&fixtures::s7(), &Caps::default()).unwrap();
        assert!(report.iter().all(|c| c.holds));
    }

    #[test]
    fn flat_laws_hold_in_flat_fixtures() {
        for s in [fixtures::sc_abb(), flat_extension(&cyclic(2), false)] {
            let report = check_flat_variety_laws(&s, &Caps::default()).unwrap();
            assert!(report.iter().all(|c| c.holds));
        }
    }

    #[test]
    fn classification() {
        let z2 = flat_extension(&cyclic(2), false);
        let z2 = z2.clone().with_constants(Some(0), None).unwrap();
        assert!(matches!(
            classify_flat_monoid(&z2).unwrap(),
            FlatMonoidVerdict::FlatGroup { ref carrier, .. } if carrier == &[0, 1]
        ));
        assert_eq!(
            classify_flat_monoid(&fixtures::s7()).unwrap(),
            FlatMonoidVerdict::ContainsS7 {
                generator: 1,
                k: 1,
                triple: [0, 1, 2]
            }
        );
        let m_ab = word_semiring(&WordSpec::parse(WordVariant::M, &["ab"]).unwrap(), &Caps::default()).unwrap();
        let verdict = classify_flat_monoid(&m_ab).unwrap();
        let FlatMonoidVerdict::ContainsS7 { triple, k, .. } = verdict else {
            panic!("expected S7 inside M(ab)");
        };
        assert_eq!(k, 1);
        assert_eq!(triple.map(|x| m_ab.name(x)), ["1", "a", "0"]);
        assert!(classify_flat_monoid(&fixtures::sc_abb()).is_err());
    }

    #[test]
    fn longer_nilpotent_chain() {
        // In Mc(aaa), a^3 is the last nonzero power of a.
        let s = word_semiring(&WordSpec::parse(WordVariant::Mc, &["aaa"]).unwrap(), &Caps::default()).unwrap();
        let FlatMonoidVerdict::ContainsS7 { k, triple, .. } = classify_flat_monoid(&s).unwrap() else {
            panic!("expected S7");
        };
        assert_eq!(k, 3);
        assert_eq!(s.name(triple[1]), "aaa");
    }
}
