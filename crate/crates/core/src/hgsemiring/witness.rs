//! Subsemirings of direct powers that realise hypergraph semirings and
//! `S_c(a1...an)` as quotients.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{build_hypergraph_semiring, check_rules, HypergraphSemiring};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::hypergraph::{all_exact, count_exact, is_hyperforest, robust2_check, Hypergraph, Vertex};
use crate::report::WitnessReport;
use crate::semiring::{
    generate_in_power, hom_from_generators, ideal_quotient, verify_canonical_map, word_semiring, Elem,
    FiniteSemiring, TupleAlgebra, WordSpec, WordVariant,
};
use crate::symbol::split_symbols;

/// Which semiring supplies the coordinates of a robust power witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RobustBase {
    S7,
    /// `S_c(a b^(k-1))` for the uniformity `k` of the hypergraph.
    ScAbk,
}

/// Claims that tuples with a top coordinate form an ideal and a filter:
/// true exactly when the top of `base` absorbs multiplication.
fn top_ideal_claim(report: &mut WitnessReport, base: &FiniteSemiring) -> bool {
    let top = base.top();
    report.claim(
        "zero-coordinate tuples form an ideal and a filter",
        base.is_mul_absorbing(top),
        format!("{} is the top of the base and absorbs products", base.name(top)),
    )
}

/// Sends generator `i` of `source` to `images[i]` and checks the result is
/// an isomorphism onto `target`.
fn isomorphism_claim(
    report: &mut WitnessReport,
    source_gens: &[Elem],
    target: &FiniteSemiring,
    images: &[Elem],
) -> Result<()> {
    let extended = match hom_from_generators(&report.semiring, source_gens, target, images) {
        Ok(m) => m,
        Err(e) => {
            report.claim("isomorphism", false, e.to_string());
            return Ok(());
        }
    };
    if let Some(x) = extended.iter().position(Option::is_none) {
        report.claim(
            "isomorphism",
            false,
            format!("{} is not generated", report.semiring.name(x)),
        );
        return Ok(());
    }
    let map: Vec<Elem> = extended.into_iter().map(|m| m.expect("checked")).collect();
    let verdict = verify_canonical_map(&report.semiring, target, &map)?;
    let detail = match &verdict.first_violation {
        Some(v) => format!("{v:?}"),
        None if verdict.is_isomorphism() => format!("{} elements on each side", target.len()),
        None => format!(
            "homomorphism, injective: {}, surjective: {}",
            verdict.injective, verdict.surjective
        ),
    };
    report.claim("isomorphism", verdict.is_isomorphism(), detail);
    report.target = Some(target.clone());
    report.map = Some(map);
    Ok(())
}

/// Builds `A/J` from vertex tuples over `base`, checks the defining rules in
/// it and compares it with `target` through the generator map.
fn hypergraph_power(
    title: String,
    base: &FiniteSemiring,
    mut tuples: Vec<Vec<Elem>>,
    one_tuple: Option<Vec<Elem>>,
    target: &HypergraphSemiring,
    caps: &Caps,
) -> Result<WitnessReport> {
    let vertices = tuples.len();
    let width = tuples.first().map_or(0, Vec::len);
    tuples.extend(one_tuple);
    let alg = generate_in_power(base, &tuples, Some(base.top()), caps)?;
    let mut report = WitnessReport::new(title, alg.semiring.clone());
    report.claim("coordinates", true, format!("{width}"));
    top_ideal_claim(&mut report, base);
    let Some(zero) = alg.collapsed else {
        report.claim("quotient has a zero", false, "no generated tuple has a top coordinate");
        return Ok(report);
    };
    for c in check_rules(&alg.semiring, &alg.generators[..vertices], &target.hypergraph, &target.links, zero) {
        report.claim(c.name, c.holds, c.detail);
    }
    report.claim(
        "flat",
        alg.semiring.is_flat(),
        format!("{} elements", alg.semiring.len()),
    );
    let mut images = target.generators.clone();
    images.extend(target.one);
    isomorphism_claim(&mut report, &alg.generators, &target.semiring, &images)?;
    Ok(report)
}

/// `S_H` as a quotient of a subsemiring of `base^T`, `T` the set of all
/// `(k-1)`-in-`k` satisfactions of `H`.
///
/// The tuple of vertex `u` is `a` where a satisfaction gives `u` the value
/// 0, and `1` (or `b`) elsewhere.
pub fn robust_power_witness(h: &Hypergraph, base: RobustBase, caps: &Caps) -> Result<WitnessReport> {
    let target = build_hypergraph_semiring(h, false)?;
    let robust = robust2_check(h);
    if let Some(p) = &robust.failure {
        return Err(Error::precondition(format!(
            "not robustly satisfiable: partial satisfaction {p:?} does not extend"
        )));
    }
    let satisfactions = all_exact(h, caps.satisfactions).ok_or_else(|| Error::SizeCap {
        what: "satisfactions",
        size: count_exact(h),
        cap: caps.satisfactions as u128,
    })?;
    let k = h.uniformity();
    let (semiring, zero_value, one_value, name) = match base {
        RobustBase::S7 => {
            let s = fixtures::s7();
            let (a, one) = (s.element("a")?, s.element("1")?);
            (s, a, one, "S7".to_string())
        }
        RobustBase::ScAbk => {
            let word = format!("a{}", "b".repeat(k - 1));
            let s = word_semiring(&WordSpec::parse(WordVariant::Sc, &[&word])?, caps)?;
            let (a, b) = (s.element("a")?, s.element("b")?);
            (s, a, b, format!("Sc({word})"))
        }
    };
    let tuples = (0..h.vertex_count())
        .map(|u| {
            satisfactions
                .iter()
                .map(|phi| if phi[u] { one_value } else { zero_value })
                .collect()
        })
        .collect();
    let mut report = hypergraph_power(
        format!("robust power witness over {name}"),
        &semiring,
        tuples,
        None,
        &target,
        caps,
    )?;
    report.claims.insert(
        0,
        crate::report::Claim {
            name: "robustly satisfiable".into(),
            holds: true,
            detail: format!("{} partial satisfactions extend", robust.checked),
        },
    );
    Ok(report)
}

/// `S_F` (or `M_F`) as a quotient of a subsemiring of `E^T`, where `E` is the
/// semiring of a single edge and `T` a set of maps from `F` onto that edge.
///
/// `T` is every such map when there are at most `caps.satisfactions` of
/// them. Otherwise it is built from targeted searches: for each pair of
/// vertices in no common edge a map joining them and one separating them,
/// then for each pair of same-size subhyperedges not yet told apart a map
/// that does.
pub fn forest_power_witness(f: &Hypergraph, monoid: bool, caps: &Caps) -> Result<WitnessReport> {
    if !is_hyperforest(f) {
        return Err(Error::precondition("not a hyperforest"));
    }
    let target = build_hypergraph_semiring(f, monoid)?;
    let k = f.uniformity();
    let edge = build_hypergraph_semiring(&Hypergraph::single_edge(k), monoid)?;
    let maps = match all_edge_maps(f, caps.satisfactions) {
        Some(all) => all,
        None => targeted_edge_maps(f, &target, caps)?,
    };
    let tuples = (0..f.vertex_count())
        .map(|u| maps.iter().map(|phi| edge.generators[phi[u]]).collect())
        .collect();
    let one_tuple = edge.one.map(|one| vec![one; maps.len()]);
    hypergraph_power(
        format!("forest power witness over the {k}-edge semiring"),
        &edge.semiring,
        tuples,
        one_tuple,
        &target,
        caps,
    )
}

/// Order in which to colour vertices: along edges, so every edge's vertices
/// are checked as soon as they are coloured.
fn edge_order(f: &Hypergraph) -> Vec<Vertex> {
    let mut seen = vec![false; f.vertex_count()];
    let mut order = Vec::new();
    let inc = f.incidence();
    for start in 0..f.vertex_count() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in &inc[v] {
                for &w in &f.edges()[e] {
                    if !std::mem::replace(&mut seen[w], true) {
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    order
}

/// Maps `V -> {0..k-1}` that are injective on every edge, with `domains[v]`
/// a bitmask of allowed values. Calls `visit` on each; stops when it returns
/// false.
fn edge_maps(f: &Hypergraph, domains: &[u32], visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(
        i: usize,
        order: &[Vertex],
        f: &Hypergraph,
        inc: &[Vec<usize>],
        domains: &[u32],
        phi: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if i == order.len() {
            return visit(phi);
        }
        let v = order[i];
        for c in 0..f.uniformity() {
            if domains[v] >> c & 1 == 0 {
                continue;
            }
            let clash = inc[v]
                .iter()
                .any(|&e| f.edges()[e].iter().any(|&w| w != v && phi[w] == c));
            if clash {
                continue;
            }
            phi[v] = c;
            if !go(i + 1, order, f, inc, domains, phi, visit) {
                phi[v] = usize::MAX;
                return false;
            }
            phi[v] = usize::MAX;
        }
        true
    }
    let order = edge_order(f);
    let inc = f.incidence();
    let mut phi = vec![usize::MAX; f.vertex_count()];
    go(0, &order, f, &inc, domains, &mut phi, visit);
}

fn all_edge_maps(f: &Hypergraph, limit: usize) -> Option<Vec<Vec<usize>>> {
    let full = vec![(1u32 << f.uniformity()) - 1; f.vertex_count()];
    let mut out = Vec::new();
    let mut over = false;
    edge_maps(f, &full, &mut |phi| {
        if out.len() == limit {
            over = true;
            return false;
        }
        out.push(phi.to_vec());
        true
    });
    (!over).then_some(out)
}

fn first_edge_map(f: &Hypergraph, domains: &[u32]) -> Option<Vec<usize>> {
    let mut found = None;
    edge_maps(f, domains, &mut |phi| {
        found = Some(phi.to_vec());
        false
    });
    found
}

fn targeted_edge_maps(f: &Hypergraph, target: &HypergraphSemiring, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let k = f.uniformity();
    let n = f.vertex_count();
    let all = (1u32 << k) - 1;
    let mut maps: BTreeSet<Vec<usize>> = BTreeSet::new();
    let add = |m: Option<Vec<usize>>, maps: &mut BTreeSet<Vec<usize>>| -> Result<bool> {
        let Some(m) = m else { return Ok(false) };
        maps.insert(m);
        if maps.len() > caps.satisfactions {
            return Err(Error::SizeCap {
                what: "forest coordinates",
                size: maps.len() as u128,
                cap: caps.satisfactions as u128,
            });
        }
        Ok(true)
    };
    add(first_edge_map(f, &vec![all; n]), &mut maps)?;
    for u in 0..n {
        for v in u + 1..n {
            if f.is_subhyperedge(&[u, v]) {
                continue;
            }
            let mut domains = vec![all; n];
            let mut joined = false;
            for c in 0..k {
                domains[u] = 1 << c;
                domains[v] = 1 << c;
                if add(first_edge_map(f, &domains), &mut maps)? {
                    joined = true;
                    break;
                }
            }
            let _ = joined;
            let mut split = false;
            'split: for c in 0..k {
                for d in (0..k).filter(|&d| d != c) {
                    domains[u] = 1 << c;
                    domains[v] = 1 << d;
                    if add(first_edge_map(f, &domains), &mut maps)? {
                        split = true;
                        break 'split;
                    }
                }
            }
            let _ = split;
        }
    }
    // Same-size products that are not identified must differ somewhere.
    let sets: Vec<Vec<Vertex>> = target
        .elements
        .iter()
        .filter_map(|e| match e {
            super::HsElement::Small(s) => Some(s.clone()),
            _ => None,
        })
        .chain(target.links.sets.iter().cloned())
        .collect();
    let image = |phi: &[usize], s: &[Vertex]| s.iter().fold(0u32, |m, &v| m | 1 << phi[v]);
    for (i, a) in sets.iter().enumerate() {
        for b in sets[i + 1..].iter().filter(|b| b.len() == a.len()) {
            if a.len() + 1 == k && target.links.class_of_set(a) == target.links.class_of_set(b) {
                continue;
            }
            if maps.iter().any(|phi| image(phi, a) != image(phi, b)) {
                continue;
            }
            for &x in a.iter().filter(|x| !b.contains(x)) {
                let mut domains = vec![all; n];
                domains[x] = 1;
                for &y in b {
                    domains[y] &= all & !1;
                }
                if add(first_edge_map(f, &domains), &mut maps)? {
                    break;
                }
            }
        }
    }
    Ok(maps.into_iter().collect())
}

fn tuple_of(alg: &TupleAlgebra, x: Elem) -> Option<&[Elem]> {
    alg.tuples[x].as_deref()
}

/// `S_c(a1...an)` (or `M_c(a1...an)`) as a quotient of the subsemiring of
/// `S_7^n` generated by the tuples that are `1` except for an `a` in one
/// coordinate.
pub fn sinm_construction(n: usize, monoid: bool, caps: &Caps) -> Result<WitnessReport> {
    if n < 2 {
        return Err(Error::precondition("n must be at least 2"));
    }
    let s7 = fixtures::s7();
    let (one, a) = (s7.element("1")?, s7.element("a")?);
    let mut gens: Vec<Vec<Elem>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { a } else { one }).collect())
        .collect();
    if monoid {
        gens.push(vec![one; n]);
    }
    let alg = generate_in_power(&s7, &gens, Some(s7.top()), caps)?;
    let variant = if monoid { WordVariant::Mc } else { WordVariant::Sc };
    let word: String = (1..=n).map(|i| format!("a{i}")).collect();
    let target = word_semiring(&WordSpec::parse(variant, &[&word])?, caps)?;
    let mut images: Vec<Elem> = (1..=n)
        .map(|i| target.element(&format!("a{i}")))
        .collect::<Result<_>>()?;
    if monoid {
        images.push(target.element("1")?);
    }
    let mut report = WitnessReport::new(
        format!("{}({word}) inside a power of S7", if monoid { "Mc" } else { "Sc" }),
        alg.semiring.clone(),
    );
    report.claim("coordinates", true, format!("{n}"));
    top_ideal_claim(&mut report, &s7);
    report.claim("flat", alg.semiring.is_flat(), format!("{} elements", alg.semiring.len()));
    isomorphism_claim(&mut report, &alg.generators, &target, &images)?;
    Ok(report)
}

/// Distinct rearrangements of `letters`, in lexicographic order.
fn rearrangements<T: Ord + Clone>(letters: &[T], cap: usize) -> Result<Vec<Vec<T>>> {
    let mut current = letters.to_vec();
    current.sort();
    let mut out = vec![current.clone()];
    loop {
        // Next permutation.
        let Some(i) = (0..current.len().saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            return Ok(out);
        };
        let j = (i + 1..current.len()).rev().find(|&j| current[j] > current[i]).expect("exists");
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(current.clone());
        if out.len() > cap {
            return Err(Error::SizeCap {
                what: "rearrangements",
                size: out.len() as u128,
                cap: cap as u128,
            });
        }
    }
}

/// `S_c(a1...an)` as a quotient of the subsemiring of `S_c(w)^R`, `R` the
/// rearrangements of `w` and `n = |w|`, generated by the tuples reading off
/// the `i`-th letter of each rearrangement. The collapsed set is everything
/// not dividing the product of all generators.
pub fn sins_construction(w: &str, caps: &Caps) -> Result<WitnessReport> {
    let letters = split_symbols(w)?;
    let n = letters.len();
    if n < 2 || letters.iter().all(|l| *l == letters[0]) {
        return Err(Error::precondition(format!("{w} is a power of a single letter")));
    }
    let base = word_semiring(&WordSpec::parse(WordVariant::Sc, &[w])?, caps)?;
    let arrangements = rearrangements(&letters, caps.satisfactions)?;
    let gens: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            arrangements
                .iter()
                .map(|r| base.element(&r[i].to_string()))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let alg = generate_in_power(&base, &gens, Some(base.top()), caps)?;
    let s = &alg.semiring;
    let mut report = WitnessReport::new(format!("Sc(a1...a{n}) inside a power of Sc({w})"), s.clone());
    report.claim("coordinates", true, format!("{} rearrangements", arrangements.len()));
    top_ideal_claim(&mut report, &base);

    let whole = s.prod(alg.generators.iter().copied()).expect("n >= 2");
    let w_elem = base.element(&letters.iter().map(|l| l.to_string()).collect::<String>())?;
    let constant = tuple_of(&alg, whole).is_some_and(|t| t.iter().all(|&x| base.name(x) == base.name(w_elem)));
    let sorted_w = base.name(w_elem).to_string();
    report.claim(
        "product of the generators is w in every coordinate",
        constant,
        sorted_w,
    );

    // Every multiset of n generators multiplying to the whole product uses
    // each generator once.
    let mut bad = None;
    let mut counts = vec![0usize; n];
    'multisets: loop {
        if counts.iter().sum::<usize>() == n {
            let p = s
                .prod(counts.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat(alg.generators[i]).take(c)))
                .expect("nonempty");
            if p == whole && counts.iter().any(|&c| c != 1) {
                bad = Some(counts.clone());
                break;
            }
        }
        // Odometer over count vectors with entries up to n.
        let mut i = 0;
        loop {
            if i == n {
                break 'multisets;
            }
            if counts[i] < n {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
    report.claim(
        "only products of distinct generators reach w",
        bad.is_none(),
        match &bad {
            Some(c) => format!("generator multiplicities {c:?} also reach w"),
            None => "all generator multisets of size n checked".to_string(),
        },
    );

    let divides: Vec<bool> = s
        .elements()
        .map(|x| x == whole || s.elements().any(|y| s.mul(x, y) == whole))
        .collect();
    let outside: Vec<Elem> = s.elements().filter(|&x| !divides[x]).collect();
    let q = match ideal_quotient(s, &outside) {
        Ok(q) => {
            report.claim("non-divisors of w form an ideal and a filter", true, format!("{} collapsed", outside.len()));
            q
        }
        Err(e) => {
            report.claim("non-divisors of w form an ideal and a filter", false, e.to_string());
            return Ok(report);
        }
    };
    report.semiring = q.semiring.clone();
    report.claim("flat", q.semiring.is_flat(), format!("{} elements", q.semiring.len()));
    let word: String = (1..=n).map(|i| format!("a{i}")).collect();
    let target = word_semiring(&WordSpec::parse(WordVariant::Sc, &[&word])?, caps)?;
    let images: Vec<Elem> = (1..=n)
        .map(|i| target.element(&format!("a{i}")))
        .collect::<Result<_>>()?;
    let gens_q: Vec<Elem> = alg.generators.iter().map(|&g| q.projection[g]).collect();
    isomorphism_claim(&mut report, &gens_q, &target, &images)?;
    Ok(report)
}
