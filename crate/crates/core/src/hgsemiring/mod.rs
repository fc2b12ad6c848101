//! Hypergraph semirings, the power constructions placing them in varieties,
//! and the triple properties that keep them out.

mod property;
mod witness;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use property::{
    cyclicity_profile, h23_verdict, noncyclic_order_ideal, one_in_three_property, H23Report, H23Verdict,
    IdealCheck, PointOutcome, PointVerdict, PropertyVerdict, TripleMode,
};
pub use witness::{
    forest_power_witness, robust_power_witness, sinm_construction, sins_construction, RobustBase,
};

use crate::error::{Error, Result};
use crate::hypergraph::{girth, link_partition, Hypergraph, LinkPartition, Vertex};
use crate::report::Claim;
use crate::semiring::{Elem, FiniteSemiring};

/// What an element of a hypergraph semiring stands for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HsElement {
    /// The absorbing top.
    Zero,
    One,
    /// Product of the generators of a subhyperedge with at most `k - 2`
    /// vertices.
    Small(Vec<Vertex>),
    /// Product of any `(k-1)`-set in one link class.
    Link(usize),
    /// Product of the generators of any edge.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergraphSemiring {
    pub hypergraph: Hypergraph,
    pub links: LinkPartition,
    pub elements: Vec<HsElement>,
    pub semiring: FiniteSemiring,
    /// The element `a_v` of each vertex.
    pub generators: Vec<Elem>,
    pub zero: Elem,
    pub full: Elem,
    pub one: Option<Elem>,
}

fn vertex_name(v: Vertex) -> String {
    format!("a{v}")
}

fn set_name(set: &[Vertex]) -> String {
    set.iter().map(|&v| vertex_name(v)).collect()
}

/// `S_H`, or `M_H` with `monoid`.
///
/// Elements are the products of generators over subhyperedges, with
/// products over linked `(k-1)`-sets identified and all products over edges
/// identified, plus an absorbing top `0`. Names: `a3` for a vertex,
/// `a0a4` for a small set, `(a0a1)` for a link class named after its first
/// member, `a` for the edge product, `0` and `1`.
pub fn build_hypergraph_semiring(h: &Hypergraph, monoid: bool) -> Result<HypergraphSemiring> {
    let k = h.uniformity();
    if k < 3 {
        return Err(Error::precondition(format!("edges have {k} vertices, at least 3 are needed")));
    }
    if h.edge_count() == 0 {
        return Err(Error::precondition("hypergraph has no edges"));
    }
    if let Some(g) = girth(h).filter(|&g| g < 4) {
        return Err(Error::precondition(format!("girth {g} is below 4")));
    }
    let isolated = h.isolated_vertices();
    if !isolated.is_empty() {
        return Err(Error::precondition(format!("isolated vertices {isolated:?}")));
    }
    let links = link_partition(h)?;
    well_defined_links(h, &links)?;

    // Nonempty subsets of edges with at most k - 2 vertices.
    let mut small: Vec<Vec<Vertex>> = Vec::new();
    for e in h.edges() {
        for mask in 1u32..1 << k {
            if (mask.count_ones() as usize) <= k - 2 {
                small.push((0..k).filter(|i| mask >> i & 1 == 1).map(|i| e[i]).collect());
            }
        }
    }
    small.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    small.dedup();

    let mut elements = Vec::new();
    if monoid {
        elements.push(HsElement::One);
    }
    elements.extend(small.iter().cloned().map(HsElement::Small));
    elements.extend((0..links.classes.len()).map(HsElement::Link));
    elements.push(HsElement::Full);
    elements.push(HsElement::Zero);
    let n = elements.len();
    let zero = n - 1;
    let full = n - 2;
    let one = monoid.then_some(0);
    let small_at: HashMap<&[Vertex], Elem> = small
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i + monoid as usize))
        .collect();
    let link_base = monoid as usize + small.len();

    let names: Vec<String> = elements
        .iter()
        .map(|e| match e {
            HsElement::Zero => "0".to_string(),
            HsElement::One => "1".to_string(),
            HsElement::Small(s) => set_name(s),
            HsElement::Link(c) => format!("({})", set_name(&links.sets[links.classes[*c][0]])),
            HsElement::Full => "a".to_string(),
        })
        .collect();

    // A representative vertex set for every element other than 0.
    let carrier = |x: Elem| -> Option<&[Vertex]> {
        match &elements[x] {
            HsElement::One => Some(&[]),
            HsElement::Small(s) => Some(s),
            HsElement::Link(c) => Some(&links.sets[links.classes[*c][0]]),
            HsElement::Full | HsElement::Zero => None,
        }
    };
    let mul = |x: Elem, y: Elem| -> Elem {
        if Some(x) == one {
            return y;
        }
        if Some(y) == one {
            return x;
        }
        if x == zero || y == zero || x == full || y == full {
            return zero;
        }
        if let (HsElement::Link(c), HsElement::Small(s)) | (HsElement::Small(s), HsElement::Link(c)) =
            (&elements[x], &elements[y])
        {
            // Checked above to agree with every member of the class.
            return if s.len() == 1 && s[0] == links.completing[*c] { full } else { zero };
        }
        let (a, b) = (carrier(x).expect("not 0"), carrier(y).expect("not 0"));
        let mut u: Vec<Vertex> = a.iter().chain(b).copied().collect();
        u.sort_unstable();
        if u.windows(2).any(|w| w[0] == w[1]) || !h.is_subhyperedge(&u) {
            return zero;
        }
        match u.len() {
            l if l + 1 == k => link_base + links.class_of_set(&u).expect("listed"),
            l if l == k => full,
            _ => small_at[u.as_slice()],
        }
    };
    let add = |x: Elem, y: Elem| if x == y { x } else { zero };
    let semiring = FiniteSemiring::from_fn(names, add, mul)?.with_constants(one, None)?;
    let generators = (0..h.vertex_count())
        .map(|v| small_at[[v].as_slice()])
        .collect();
    Ok(HypergraphSemiring {
        hypergraph: h.clone(),
        links,
        elements,
        semiring,
        generators,
        zero,
        full,
        one,
    })
}

/// Every member of a link class completes to an edge with exactly the
/// class's completing vertex.
fn well_defined_links(h: &Hypergraph, links: &LinkPartition) -> Result<()> {
    for (c, members) in links.classes.iter().enumerate() {
        for &i in members {
            for v in 0..h.vertex_count() {
                let set = &links.sets[i];
                if set.contains(&v) {
                    continue;
                }
                let mut e = set.clone();
                e.push(v);
                e.sort_unstable();
                let is_edge = h.is_subhyperedge(&e);
                if is_edge != (v == links.completing[c]) {
                    return Err(Error::structure(format!(
                        "link class {c}: {set:?} completes with {v}, class vertex is {}",
                        links.completing[c]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The defining rules, checked in `s` for the generator images `gens` of
/// the vertices of `h`. `zero` is the absorbing element.
///
/// 1. `a_u a_v = 0` when `u = v` or `{u, v}` lies in no edge;
/// 2. `a_u a_v = a_v a_u`;
/// 3. every edge has the same product, and it is not 0;
/// 4. linked `(k-1)`-sets have the same product.
pub fn check_rules(
    s: &FiniteSemiring,
    gens: &[Elem],
    h: &Hypergraph,
    links: &LinkPartition,
    zero: Elem,
) -> Vec<Claim> {
    let n = h.vertex_count();
    let mut claims = Vec::new();
    let mut fail = None;
    'one: for u in 0..n {
        for v in 0..n {
            if (u == v || !h.is_subhyperedge(&[u, v])) && s.mul(gens[u], gens[v]) != zero {
                fail = Some(format!("a{u} a{v} is {}", s.name(s.mul(gens[u], gens[v]))));
                break 'one;
            }
        }
    }
    claims.push(rule_claim("rule 1: non-edge pairs multiply to 0", fail));

    let mut fail = None;
    'two: for u in 0..n {
        for v in u + 1..n {
            if s.mul(gens[u], gens[v]) != s.mul(gens[v], gens[u]) {
                fail = Some(format!("a{u} a{v} differs from a{v} a{u}"));
                break 'two;
            }
        }
    }
    claims.push(rule_claim("rule 2: generators commute", fail));

    let product = |set: &[Vertex]| s.prod(set.iter().map(|&v| gens[v])).expect("nonempty");
    let mut fail = None;
    let first = h.edges().first().map(|e| product(e));
    if first == Some(zero) {
        fail = Some("edge product is 0".to_string());
    }
    for e in h.edges() {
        if fail.is_none() && Some(product(e)) != first {
            fail = Some(format!("edge {e:?} has a different product"));
        }
    }
    claims.push(rule_claim("rule 3: all edges have one nonzero product", fail));

    let mut fail = None;
    'four: for members in &links.classes {
        let p = product(&links.sets[members[0]]);
        for &i in members {
            if product(&links.sets[i]) != p {
                fail = Some(format!(
                    "{:?} and {:?} are linked with different products",
                    links.sets[members[0]], links.sets[i]
                ));
                break 'four;
            }
        }
    }
    claims.push(rule_claim("rule 4: linked sets have one product", fail));
    claims
}

fn rule_claim(name: &str, failure: Option<String>) -> Claim {
    Claim {
        name: name.to_string(),
        holds: failure.is_none(),
        detail: failure.unwrap_or_else(|| "checked on every instance".to_string()),
    }
}

impl HypergraphSemiring {
    pub fn rules(&self) -> Vec<Claim> {
        check_rules(&self.semiring, &self.generators, &self.hypergraph, &self.links, self.zero)
    }

    /// What element `x` stands for.
    pub fn describe(&self, x: Elem) -> &HsElement {
        &self.elements[x]
    }
}
