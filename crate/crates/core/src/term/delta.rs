use std::collections::BTreeSet;

use super::{AiTerm, Symbol, Word};
use crate::error::{Error, Result};

/// A family of nonempty variable sets.
pub type DeltaFamily = BTreeSet<BTreeSet<Symbol>>;

/// Content limit for [`delta_set`], which scans every subset of the content.
const MAX_DELTA_CONTENT: usize = 24;

pub fn content(t: &AiTerm) -> BTreeSet<Symbol> {
    t.words().flatten().cloned().collect()
}

pub fn occurrences(x: &Symbol, w: &Word) -> usize {
    w.iter().filter(|y| *y == x).count()
}

/// The nonempty subsets `Z` of the content that meet every word in exactly
/// one variable, which moreover occurs in that word exactly once.
///
/// Panics if the content has more than 24 variables.
pub fn delta_set(t: &AiTerm) -> DeltaFamily {
    let vars: Vec<Symbol> = content(t).into_iter().collect();
    assert!(vars.len() <= MAX_DELTA_CONTENT, "delta_set scans 2^|content| subsets");
    // Per word: bitmask of variables occurring once, and of all variables.
    let masks: Vec<(u32, u32)> = t
        .words()
        .map(|w| {
            let mut once = 0u32;
            let mut all = 0u32;
            for (i, x) in vars.iter().enumerate() {
                match occurrences(x, w) {
                    0 => {}
                    1 => {
                        once |= 1 << i;
                        all |= 1 << i;
                    }
                    _ => all |= 1 << i,
                }
            }
            (once, all)
        })
        .collect();
    let mut out = DeltaFamily::new();
    for z in 1u32..(1 << vars.len()) {
        let ok = masks.iter().all(|&(once, all)| {
            let hit = z & all;
            hit.count_ones() == 1 && hit & once != 0
        });
        if ok {
            out.insert((0..vars.len()).filter(|i| z >> i & 1 == 1).map(|i| vars[i].clone()).collect());
        }
    }
    out
}

/// Decides `u = v` in `S_7`: equal content and equal delta families.
pub fn s7_decide(u: &AiTerm, v: &AiTerm) -> bool {
    content(u) == content(v) && delta_set(u) == delta_set(v)
}

/// Decides `u = v` in `M_2`: equal content.
pub fn m2_decide(u: &AiTerm, v: &AiTerm) -> bool {
    content(u) == content(v)
}

/// The sum over the family of the product of each member's variables, in
/// sorted variable order.
pub fn exact_cover_term(family: &[BTreeSet<Symbol>]) -> Result<AiTerm> {
    if family.iter().any(BTreeSet::is_empty) {
        return Err(Error::precondition("family members must be nonempty"));
    }
    AiTerm::new(family.iter().map(|s| s.iter().cloned().collect::<Word>()))
        .ok_or_else(|| Error::precondition("family must be nonempty"))
}
