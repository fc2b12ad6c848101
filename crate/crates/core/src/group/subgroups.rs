use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::caps::Caps;
use crate::error::Result;
use crate::semiring::{Elem, FiniteSemiring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupWitness {
    /// Sorted element indices, in the group or semiring the witness came from.
    pub carrier: Vec<Elem>,
    pub abelian: bool,
    pub nilpotent: bool,
    /// Nilpotency class, when nilpotent. The trivial group has class 0.
    pub class: Option<usize>,
}

impl SubgroupWitness {
    pub fn order(&self) -> usize {
        self.carrier.len()
    }
}

/// Closure of `gens` under multiplication. In a finite group this is the
/// generated subgroup.
fn closure(g: &FiniteGroup, gens: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
    let mut member = vec![false; g.len()];
    let mut out = vec![g.identity()];
    member[g.identity()] = true;
    for x in gens {
        if !std::mem::replace(&mut member[x], true) {
            out.push(x);
        }
    }
    let mut done = 0;
    while done < out.len() {
        let x = out[done];
        done += 1;
        for i in 0..done {
            let y = out[i];
            for p in [g.mul(x, y), g.mul(y, x)] {
                if !std::mem::replace(&mut member[p], true) {
                    out.push(p);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Terms of the lower central series of the subgroup on `carrier`, starting
/// with the subgroup itself and stopping once a term repeats.
fn series(g: &FiniteGroup, carrier: &[Elem]) -> Vec<Vec<Elem>> {
    let mut out = vec![carrier.to_vec()];
    loop {
        let last = out.last().expect("nonempty");
        let commutators: BTreeSet<Elem> = last
            .iter()
            .flat_map(|&a| carrier.iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.commutator(a, b))
            .collect();
        let next = closure(g, commutators);
        if next == *last {
            return out;
        }
        out.push(next);
    }
}

/// `G = G_1 ≥ G_2 ≥ ...` with `G_{i+1} = [G_i, G]`, until it stabilizes.
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Vec<Elem>> {
    series(g, &g.elements().collect::<Vec<_>>())
}

fn witness(g: &FiniteGroup, carrier: Vec<Elem>) -> SubgroupWitness {
    let abelian = carrier
        .iter()
        .all(|&x| carrier.iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
    let s = series(g, &carrier);
    let nilpotent = s.last().expect("nonempty").len() == 1;
    SubgroupWitness {
        class: nilpotent.then(|| s.len() - 1),
        carrier,
        abelian,
        nilpotent,
    }
}

/// Every subgroup, smallest first (ties in lexicographic carrier order).
///
/// Starts from the subgroups generated by at most two elements and closes
/// under joins.
pub fn enumerate_subgroups(g: &FiniteGroup, caps: &Caps) -> Result<Vec<SubgroupWitness>> {
    Caps::check("group order", g.len() as u128, caps.group as u128)?;
    let mut found: BTreeSet<Vec<Elem>> = BTreeSet::new();
    for x in g.elements() {
        for y in x..g.len() {
            found.insert(closure(g, [x, y]));
        }
    }
    let mut frontier: Vec<Vec<Elem>> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let all: Vec<Vec<Elem>> = found.iter().cloned().collect();
        let mut next = Vec::new();
        for a in &frontier {
            for b in &all {
                let joined = closure(g, a.iter().chain(b).copied());
                if found.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<Elem>> = found.into_iter().collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out.into_iter().map(|c| witness(g, c)).collect())
}

/// The maximal subgroup of the multiplicative reduct at an idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalSubgroup {
    pub idempotent: Elem,
    /// Sorted semiring indices.
    pub carrier: Vec<Elem>,
    /// All subgroups of this one, with semiring indices.
    pub subgroups: Vec<SubgroupWitness>,
}

fn maximal_subgroup_at(s: &FiniteSemiring, e: Elem) -> Vec<Elem> {
    let local: Vec<Elem> = s
        .elements()
        .filter(|&x| s.mul(x, e) == x && s.mul(e, x) == x)
        .collect();
    local
        .iter()
        .copied()
        .filter(|&x| local.iter().any(|&y| s.mul(x, y) == e && s.mul(y, x) == e))
        .collect()
}

/// For each multiplicative idempotent `e`, in carrier order, the group of
/// units of `eSe` and all of its subgroups.
pub fn multiplicative_subgroups(s: &FiniteSemiring, caps: &Caps) -> Result<Vec<MaximalSubgroup>> {
    let mut out = Vec::new();
    for e in s.elements().filter(|&e| s.mul(e, e) == e) {
        let carrier = maximal_subgroup_at(s, e);
        let g = FiniteGroup::from_semiring_subset(s, &carrier)?;
        let subgroups = enumerate_subgroups(&g, caps)?
            .into_iter()
            .map(|mut w| {
                w.carrier = w.carrier.iter().map(|&i| carrier[i]).collect();
                w.carrier.sort_unstable();
                w
            })
            .collect();
        out.push(MaximalSubgroup {
            idempotent: e,
            carrier,
            subgroups,
        });
    }
    Ok(out)
}

/// First nonabelian nilpotent subgroup of the multiplicative reduct, scanning
/// idempotents in carrier order and subgroups smallest first.
pub fn nonabelian_nilpotent_witness(s: &FiniteSemiring, caps: &Caps) -> Result<Option<SubgroupWitness>> {
    Caps::check("semiring carrier", s.len() as u128, caps.carrier as u128)?;
    for m in multiplicative_subgroups(s, caps)? {
        if let Some(w) = m.subgroups.into_iter().find(|w| w.nilpotent && !w.abelian) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
