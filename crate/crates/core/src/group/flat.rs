use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::report::WitnessReport;
use crate::semiring::{
    adjoin, fresh_name, ideal_quotient, quotient_by_collapse, subsemiring_generated, verify_canonical_map, AdjoinKind,
    Elem, FiniteSemiring,
};

/// `G` with an absorbing top `0` and flat addition. With `with_zero`, an
/// additive identity is adjoined as the designated zero.
pub fn flat_extension(g: &FiniteGroup, with_zero: bool) -> FiniteSemiring {
    let n = g.len();
    let mut names = g.names().to_vec();
    names.push(fresh_name("0", g.names()));
    let top = n;
    let flat = FiniteSemiring::from_fn(
        names,
        |x, y| if x == y { x } else { top },
        |x, y| if x == top || y == top { top } else { g.mul(x, y) },
    )
    .expect("flat extension");
    if with_zero {
        adjoin(&flat, AdjoinKind::AdditiveZero).expect("adjoining a zero").semiring
    } else {
        flat
    }
}

fn names_of(s: &FiniteSemiring, xs: &[Elem]) -> String {
    let names: Vec<&str> = xs.iter().map(|&x| s.name(x)).collect();
    format!("{{{}}}", names.join(", "))
}

/// Builds the subsemiring generated by the group `carrier`, collapses the
/// proper sums `G+` and compares the result with the flat extension of the
/// group.
///
/// With `with_zero` the designated zero of `s` joins the generators and
/// stays a class of its own, and the comparison is with the flat extension
/// with zero. Every check is recorded in the report; an error is returned
/// only when the inputs break the preconditions.
pub fn extract_flat_group(s: &FiniteSemiring, carrier: &[Elem], with_zero: bool, caps: &Caps) -> Result<WitnessReport> {
    let group = FiniteGroup::from_semiring_subset(s, carrier)?;
    if group.len() < 2 {
        return Err(Error::precondition("the group must be nontrivial"));
    }
    let zero = if with_zero {
        Some(s.zero().ok_or_else(|| Error::precondition("no designated zero to keep"))?)
    } else {
        None
    };
    if zero.is_some_and(|z| carrier.contains(&z)) {
        return Err(Error::precondition("the zero cannot lie in a nontrivial group"));
    }
    let base = s.clone().with_constants(None, zero)?;
    let gens: Vec<Elem> = carrier.iter().copied().chain(zero).collect();
    let sub = subsemiring_generated(&base, &gens, caps)?;
    let sg = &sub.semiring;
    let local = |x: Elem| sub.inclusion.binary_search(&x).expect("generator is included");
    let in_group: Vec<bool> = {
        let mut v = vec![false; sg.len()];
        for &g in carrier {
            v[local(g)] = true;
        }
        v
    };
    let zero_local = zero.map(local);
    let plus: Vec<Elem> = sg
        .elements()
        .filter(|&x| !in_group[x] && Some(x) != zero_local)
        .collect();
    let in_plus = |x: Elem| plus.binary_search(&x).is_ok();

    let mut report = WitnessReport::new(
        format!("flat extension of the subgroup {}", names_of(s, carrier)),
        sg.clone(),
    );
    report.claim(
        "subsemiring",
        true,
        format!("{} elements generated, {} of them proper sums", sg.len(), plus.len()),
    );
    let antichain = carrier
        .iter()
        .all(|&x| carrier.iter().all(|&y| x == y || !s.leq(x, y)));
    report.claim("group is an antichain", antichain, "");
    if !report.claim("proper sums exist", !plus.is_empty(), "") {
        return Ok(report);
    }

    let mut ideal_failure = None;
    'ideal: for &x in &plus {
        for y in sg.elements().filter(|&y| Some(y) != zero_local) {
            for p in [sg.mul(x, y), sg.mul(y, x)] {
                if !in_plus(p) {
                    ideal_failure = Some(format!("{} * {} = {}", sg.name(x), sg.name(y), sg.name(p)));
                    break 'ideal;
                }
            }
        }
    }
    report.claim(
        "proper sums form a multiplicative ideal",
        ideal_failure.is_none(),
        ideal_failure.unwrap_or_default(),
    );
    let mut filter_failure = None;
    'filter: for &x in &plus {
        for y in sg.elements() {
            if sg.leq(x, y) && !in_plus(y) {
                filter_failure = Some(format!("{} <= {}", sg.name(x), sg.name(y)));
                break 'filter;
            }
        }
    }
    report.claim(
        "proper sums form an order filter",
        filter_failure.is_none(),
        filter_failure.unwrap_or_default(),
    );

    let quotient = if with_zero {
        quotient_by_collapse(sg, &plus)
    } else {
        ideal_quotient(sg, &plus)
    };
    let quotient = match quotient {
        Ok(q) => q,
        Err(e) => {
            report.claim("quotient", false, e.to_string());
            return Ok(report);
        }
    };
    report.claim("quotient", true, format!("{} elements", quotient.semiring.len()));

    let target = flat_extension(&group, with_zero);
    let target_top = group.len();
    let mut map = vec![0; quotient.semiring.len()];
    for x in sg.elements() {
        let image = if in_group[x] {
            carrier
                .iter()
                .position(|&g| local(g) == x)
                .expect("group element")
        } else if Some(x) == zero_local {
            target.zero().expect("target has a zero")
        } else {
            target_top
        };
        map[quotient.projection[x]] = image;
    }
    let verdict = verify_canonical_map(&quotient.semiring, &target, &map)?;
    report.claim(
        "isomorphism",
        verdict.is_isomorphism(),
        match &verdict.first_violation {
            Some(v) => format!("{v:?}"),
            None if verdict.is_isomorphism() => String::new(),
            None => "not bijective".into(),
        },
    );
    report.semiring = quotient.semiring;
    report.target = Some(target);
    report.map = Some(map);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEmbedding {
    /// The J-minimal idempotent chosen in the preimage of the group.
    pub idempotent: Elem,
    /// Sorted carrier of `e A_G e`.
    pub local_group: Vec<Elem>,
    /// `embedding[i]` is the image of the `i`-th group element.
    pub embedding: Vec<Elem>,
}

/// Given a surjective homomorphism `phi: A -> S` and a subgroup of `S`,
/// finds a copy of the subgroup inside the multiplicative reduct of `A`.
///
/// Takes the preimage `A_G`, an idempotent of it whose principal two-sided
/// ideal (in `A_G` with an identity adjoined) is minimal among idempotents,
/// ties going to the first in carrier order, and the group `H = e A_G e`.
/// The inverse of `phi` on `H` is the embedding.
pub fn group_quotient_embedding(
    a: &FiniteSemiring,
    s: &FiniteSemiring,
    phi: &[Elem],
    carrier: &[Elem],
) -> Result<GroupEmbedding> {
    let verdict = verify_canonical_map(a, s, phi)?;
    if !verdict.homomorphism || !verdict.surjective {
        return Err(Error::precondition("phi must be a surjective homomorphism"));
    }
    let group = FiniteGroup::from_semiring_subset(s, carrier)?;
    let in_g = |y: Elem| carrier.contains(&y);
    let ag: Vec<Elem> = a.elements().filter(|&x| in_g(phi[x])).collect();

    let ideal = |y: Elem| -> Vec<bool> {
        let mut member = vec![false; a.len()];
        member[y] = true;
        for &u in &ag {
            member[a.mul(u, y)] = true;
            member[a.mul(y, u)] = true;
            for &v in &ag {
                member[a.mul(a.mul(u, y), v)] = true;
            }
        }
        member
    };
    let idempotents: Vec<(Elem, Vec<bool>)> = ag
        .iter()
        .copied()
        .filter(|&x| a.mul(x, x) == x)
        .map(|x| (x, ideal(x)))
        .collect();
    let strictly_below = |p: &[bool], q: &[bool]| p.iter().zip(q).all(|(&x, &y)| !x || y) && p != q;
    let e = idempotents
        .iter()
        .find(|(_, j)| !idempotents.iter().any(|(_, k)| strictly_below(k, j)))
        .map(|(e, _)| *e)
        .ok_or_else(|| Error::structure("the preimage of the group has no idempotent"))?;

    let mut local: Vec<Elem> = ag.iter().map(|&x| a.mul(a.mul(e, x), e)).collect();
    local.sort_unstable();
    local.dedup();
    FiniteGroup::from_semiring_subset(a, &local)
        .map_err(|err| Error::structure(format!("e A_G e is not a group: {err}")))?;

    let mut embedding = Vec::with_capacity(carrier.len());
    for &g in carrier {
        let preimages: Vec<Elem> = local.iter().copied().filter(|&h| phi[h] == g).collect();
        match preimages[..] {
            [h] => embedding.push(h),
            [] => return Err(Error::structure(format!("{} has no preimage in e A_G e", s.name(g)))),
            _ => return Err(Error::structure(format!("phi is not injective on e A_G e at {}", s.name(g)))),
        }
    }
    for i in group.elements() {
        for j in group.elements() {
            if embedding[group.mul(i, j)] != a.mul(embedding[i], embedding[j]) {
                return Err(Error::structure("the embedding is not multiplicative"));
            }
        }
    }
    Ok(GroupEmbedding {
        idempotent: e,
        local_group: local,
        embedding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, quaternion};
    use crate::semiring::{power_semiring, product, verify_semiring_axioms};
    use crate::semigroup::FiniteSemigroup;
    use crate::fixtures;

    fn z2_semigroup() -> FiniteSemigroup {
        let g = cyclic(2);
        FiniteSemigroup::from_fn(g.names().to_vec(), |x, y| g.mul(x, y)).unwrap()
    }

    #[test]
    fn flat_extensions() {
        let trivial = flat_extension(&cyclic(1), false);
        assert_eq!(trivial.names(), ["e", "0"]);
        let z2 = flat_extension(&cyclic(2), false);
        assert_eq!(z2.len(), 3);
        assert!(verify_semiring_axioms(&z2).is_valid());
        assert!(z2.is_flat());
        let q8 = flat_extension(&quaternion(), false);
        assert_eq!(q8.len(), 9);
        let z2_zero = flat_extension(&cyclic(2), true);
        assert_eq!(z2_zero.len(), 4);
        assert_eq!(z2_zero.zero(), Some(3));
        assert!(verify_semiring_axioms(&z2_zero).is_valid());
    }

    #[test]
    fn extraction_from_power_of_z2() {
        let p = power_semiring(&z2_semigroup(), false, &Caps::default()).unwrap();
        let singletons = [p.element("e").unwrap(), p.element("g").unwrap()];
        let report = extract_flat_group(&p, &singletons, false, &Caps::default()).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.semiring.len(), 3);
        assert!(report.recheck().is_empty());
    }

    #[test]
    fn extraction_with_zero() {
        let p = power_semiring(&z2_semigroup(), true, &Caps::default()).unwrap();
        let singletons = [p.element("e").unwrap(), p.element("g").unwrap()];
        let report = extract_flat_group(&p, &singletons, true, &Caps::default()).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.semiring.len(), 4);
        assert!(extract_flat_group(&fixtures::s7(), &[0], true, &Caps::default()).is_err());
    }

    #[test]
    fn extraction_from_a_flat_group_is_the_identity() {
        let q8 = flat_extension(&quaternion(), false);
        let carrier: Vec<Elem> = (0..8).collect();
        let report = extract_flat_group(&q8, &carrier, false, &Caps::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.map.as_deref(), Some(&(0..9).collect::<Vec<_>>()[..]));
    }

    #[test]
    fn trivial_group_is_rejected() {
        let z2 = flat_extension(&cyclic(2), false);
        assert!(extract_flat_group(&z2, &[0], false, &Caps::default()).is_err());
        assert!(extract_flat_group(&z2, &[0, 2], false, &Caps::default()).is_err());
    }

    #[test]
    fn embedding_through_a_projection() {
        let s = flat_extension(&cyclic(2), false);
        let a = product(&s, &fixtures::s7(), &Caps::default()).unwrap();
        let phi: Vec<Elem> = a.elements().map(|x| x / 3).collect();
        let emb = group_quotient_embedding(&a, &s, &phi, &[0, 1]).unwrap();
        let names: Vec<&str> = emb.embedding.iter().map(|&x| a.name(x)).collect();
        assert_eq!(names, ["(e_0)", "(g_0)"]);
    }

    #[test]
    fn embedding_along_the_identity_is_inclusion() {
        let s = flat_extension(&quaternion(), false);
        let phi: Vec<Elem> = s.elements().collect();
        let carrier: Vec<Elem> = (0..8).collect();
        let emb = group_quotient_embedding(&s, &s, &phi, &carrier).unwrap();
        assert_eq!(emb.embedding, carrier);
    }

    #[test]
    fn embedding_rejects_a_non_surjective_map() {
        let s = flat_extension(&cyclic(2), false);
        assert!(group_quotient_embedding(&s, &s, &[0, 0, 2], &[0, 1]).is_err());
    }
}
