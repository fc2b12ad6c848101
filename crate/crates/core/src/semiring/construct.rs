//! Table-level constructions: products, joins, adjoined constants, quotients
//! and generated subsemirings.

use serde::{Deserialize, Serialize};

use super::{fresh_name, order_profile, verify_semiring_axioms, Elem, FiniteSemiring};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// `S^p` with componentwise operations.
///
/// The tuple `(x_1, ..., x_p)` sits at index `x_1 n^(p-1) + ... + x_p`, so the
/// carrier is in lexicographic order. Names are `(x_1_..._x_p)`; for `p = 1`
/// the input is returned unchanged.
pub fn direct_power(s: &FiniteSemiring, p: usize, caps: &Caps) -> Result<FiniteSemiring> {
    if p == 0 {
        return Err(Error::precondition("direct power needs at least one factor"));
    }
    if p == 1 {
        return Ok(s.clone());
    }
    let n = s.len();
    let size = (n as u128).checked_pow(p as u32).unwrap_or(u128::MAX);
    Caps::check("direct power", size, caps.carrier as u128)?;
    let size = size as usize;
    let digits = |mut v: usize| {
        let mut d = vec![0; p];
        for slot in d.iter_mut().rev() {
            *slot = v % n;
            v /= n;
        }
        d
    };
    let encode = |d: &[Elem]| d.iter().fold(0, |acc, &x| acc * n + x);
    let tuples: Vec<Vec<Elem>> = (0..size).map(digits).collect();
    let names = tuples
        .iter()
        .map(|d| {
            let parts: Vec<&str> = d.iter().map(|&x| s.name(x)).collect();
            format!("({})", parts.join("_"))
        })
        .collect();
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    let mut buf = vec![0; p];
    for x in &tuples {
        for y in &tuples {
            for i in 0..p {
                buf[i] = s.add(x[i], y[i]);
            }
            add.push(encode(&buf));
            for i in 0..p {
                buf[i] = s.mul(x[i], y[i]);
            }
            mul.push(encode(&buf));
        }
    }
    let lift = |c: Option<Elem>| c.map(|c| encode(&vec![c; p]));
    let result = FiniteSemiring::from_raw(names, add, mul, lift(s.one()), lift(s.zero()));
    super::check_names(result.names())?;
    Ok(result)
}

/// `S x T` with componentwise operations; `(x, y)` sits at `x |T| + y`.
///
/// A constant is lifted only when both factors designate it.
pub fn product(s: &FiniteSemiring, t: &FiniteSemiring, caps: &Caps) -> Result<FiniteSemiring> {
    let (n, m) = (s.len(), t.len());
    Caps::check("product", (n * m) as u128, caps.carrier as u128)?;
    let size = n * m;
    let names = (0..size)
        .map(|i| format!("({}_{})", s.name(i / m), t.name(i % m)))
        .collect();
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for i in 0..size {
        let (x1, y1) = (i / m, i % m);
        for j in 0..size {
            let (x2, y2) = (j / m, j % m);
            add.push(s.add(x1, x2) * m + t.add(y1, y2));
            mul.push(s.mul(x1, x2) * m + t.mul(y1, y2));
        }
    }
    let lift = |a: Option<Elem>, b: Option<Elem>| a.zip(b).map(|(a, b)| a * m + b);
    let result = FiniteSemiring::from_raw(
        names,
        add,
        mul,
        lift(s.one(), t.one()),
        lift(s.zero(), t.zero()),
    );
    super::check_names(result.names())?;
    Ok(result)
}

/// The 0-direct join of two flat semirings: their non-top parts side by side
/// under a shared top, with every mixed product equal to the top.
///
/// Names from `t` that clash with names from `s` get a numeric suffix. The
/// shared top keeps the name of the top of `s`.
pub fn zero_direct_join(s: &FiniteSemiring, t: &FiniteSemiring) -> Result<FiniteSemiring> {
    let top_s = join_top(s)
        .ok_or_else(|| Error::precondition("left operand of a 0-direct join must be flat"))?;
    let top_t = join_top(t)
        .ok_or_else(|| Error::precondition("right operand of a 0-direct join must be flat"))?;
    let left: Vec<Elem> = s.elements().filter(|&x| x != top_s).collect();
    let right: Vec<Elem> = t.elements().filter(|&x| x != top_t).collect();
    let size = left.len() + right.len() + 1;
    let top = size - 1;

    let mut names: Vec<String> = left.iter().map(|&x| s.name(x).to_string()).collect();
    let mut taken = names.clone();
    taken.push(s.name(top_s).to_string());
    for &y in &right {
        let name = fresh_name(t.name(y), &taken);
        taken.push(name.clone());
        names.push(name);
    }
    names.push(s.name(top_s).to_string());

    // Positions: left part, right part, then the shared top.
    let mut from_s = vec![top; s.len()];
    for (i, &x) in left.iter().enumerate() {
        from_s[x] = i;
    }
    let mut from_t = vec![top; t.len()];
    for (i, &y) in right.iter().enumerate() {
        from_t[y] = left.len() + i;
    }
    let side = |i: usize| -> Option<(bool, Elem)> {
        if i < left.len() {
            Some((true, left[i]))
        } else if i < top {
            Some((false, right[i - left.len()]))
        } else {
            None
        }
    };
    let mul = |i: usize, j: usize| match (side(i), side(j)) {
        (Some((true, x)), Some((true, y))) => from_s[s.mul(x, y)],
        (Some((false, x)), Some((false, y))) => from_t[t.mul(x, y)],
        _ => top,
    };
    let add = |i: usize, j: usize| if i == j { i } else { top };
    FiniteSemiring::from_fn(names, add, mul)
}

/// The top of a flat semiring; a one-element semiring counts as a bare top.
fn join_top(s: &FiniteSemiring) -> Option<Elem> {
    if s.len() == 1 {
        Some(0)
    } else {
        s.flat_top()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdjoinKind {
    /// A new additive identity that also absorbs multiplicatively; it becomes
    /// the designated zero.
    AdditiveZero,
    /// A new multiplicative identity, placed directly below the top and
    /// incomparable to everything else.
    MultiplicativeIdentity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjoined {
    pub semiring: FiniteSemiring,
    /// Index of the new element, or `None` when nothing was added.
    pub added: Option<Elem>,
    pub note: Option<String>,
}

/// Adjoins a new constant. The new element is appended to the carrier.
pub fn adjoin(s: &FiniteSemiring, kind: AdjoinKind) -> Result<Adjoined> {
    let n = s.len();
    let mut names = s.names().to_vec();
    match kind {
        AdjoinKind::AdditiveZero => {
            names.push(fresh_name("zero", s.names()));
            let z = n;
            let add = |x: Elem, y: Elem| match (x == z, y == z) {
                (true, _) => y,
                (_, true) => x,
                _ => s.add(x, y),
            };
            let mul = |x: Elem, y: Elem| if x == z || y == z { z } else { s.mul(x, y) };
            let semiring = FiniteSemiring::from_fn(names, add, mul)?.with_constants(s.one(), Some(z))?;
            Ok(Adjoined {
                semiring,
                added: Some(z),
                note: None,
            })
        }
        AdjoinKind::MultiplicativeIdentity => {
            if let Some(e) = s.identity_element() {
                return Ok(Adjoined {
                    semiring: s.clone(),
                    added: None,
                    note: Some(format!(
                        "{} is already a multiplicative identity; nothing adjoined",
                        s.name(e)
                    )),
                });
            }
            names.push(fresh_name("1", s.names()));
            let u = n;
            let top = s.top();
            let add = |x: Elem, y: Elem| match (x == u, y == u) {
                (true, true) => u,
                (true, false) | (false, true) => top,
                _ => s.add(x, y),
            };
            let mul = |x: Elem, y: Elem| {
                if x == u {
                    y
                } else if y == u {
                    x
                } else {
                    s.mul(x, y)
                }
            };
            let semiring = FiniteSemiring::from_fn(names, add, mul)?.with_constants(Some(u), s.zero())?;
            let report = verify_semiring_axioms(&semiring);
            if !report.is_valid() {
                return Err(Error::precondition(format!(
                    "adjoining an identity below the top breaks the axioms: {}",
                    report.describe(&semiring).join("; ")
                )));
            }
            Ok(Adjoined {
                semiring,
                added: Some(u),
                note: None,
            })
        }
    }
}

/// A quotient together with its canonical projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub semiring: FiniteSemiring,
    /// Image of every element of the original carrier.
    pub projection: Vec<Elem>,
    /// Index of the collapsed class in the quotient.
    pub class: Elem,
}

fn subset_mask(s: &FiniteSemiring, subset: &[Elem]) -> Result<Vec<bool>> {
    let mut mask = vec![false; s.len()];
    for &j in subset {
        if j >= s.len() {
            return Err(Error::structure(format!("subset element {j} outside the carrier")));
        }
        mask[j] = true;
    }
    if !mask.iter().any(|&b| b) {
        return Err(Error::precondition("collapsed subset is empty"));
    }
    Ok(mask)
}

/// Quotient by a subset that is a multiplicative ideal and an order filter.
pub fn ideal_quotient(s: &FiniteSemiring, ideal: &[Elem]) -> Result<Quotient> {
    let mask = subset_mask(s, ideal)?;
    if mask.iter().all(|&b| b) {
        return Err(Error::precondition("ideal must be a proper subset"));
    }
    for j in s.elements().filter(|&j| mask[j]) {
        for x in s.elements() {
            for (l, r) in [(x, j), (j, x)] {
                let p = s.mul(l, r);
                if !mask[p] {
                    return Err(Error::NotIdeal {
                        left: s.name(l).to_string(),
                        right: s.name(r).to_string(),
                        product: s.name(p).to_string(),
                    });
                }
            }
            if s.leq(j, x) && !mask[x] {
                return Err(Error::NotFilter {
                    lower: s.name(j).to_string(),
                    upper: s.name(x).to_string(),
                });
            }
        }
    }
    quotient_by_collapse(s, ideal)
}

/// Quotient by the equivalence that identifies the elements of `subset` and
/// nothing else, after checking it is a congruence.
///
/// The class is named after its least member in the order, or its first
/// minimal member in carrier order when there is no least one, and it takes
/// the carrier position of its first member.
pub fn quotient_by_collapse(s: &FiniteSemiring, subset: &[Elem]) -> Result<Quotient> {
    let mask = subset_mask(s, subset)?;
    let members: Vec<Elem> = s.elements().filter(|&j| mask[j]).collect();
    let first = members[0];

    let mut projection = vec![0; s.len()];
    let mut next = 0;
    let mut class = 0;
    for x in s.elements() {
        if mask[x] {
            if x == first {
                class = next;
                next += 1;
            }
        } else {
            projection[x] = next;
            next += 1;
        }
    }
    for &j in &members {
        projection[j] = class;
    }
    let size = next;

    for x in s.elements() {
        for (label, f) in [
            ("sum", &(|j: Elem| s.add(j, x)) as &dyn Fn(Elem) -> Elem),
            ("left product", &|j: Elem| s.mul(x, j)),
            ("right product", &|j: Elem| s.mul(j, x)),
        ] {
            let expect = projection[f(first)];
            if let Some(&j) = members.iter().find(|&&j| projection[f(j)] != expect) {
                return Err(Error::NotCongruence(format!(
                    "{label} with {} separates {} from {}",
                    s.name(x),
                    s.name(first),
                    s.name(j)
                )));
            }
        }
    }

    let profile = order_profile(s);
    let minimal: Vec<Elem> = members
        .iter()
        .copied()
        .filter(|&j| !members.iter().any(|&i| profile.lt(i, j)))
        .collect();
    let least = minimal
        .iter()
        .copied()
        .find(|&j| members.iter().all(|&i| profile.leq(j, i)))
        .unwrap_or(minimal[0]);

    let mut rep = vec![0; size];
    for x in s.elements() {
        if !mask[x] || x == first {
            rep[projection[x]] = x;
        }
    }
    let names: Vec<String> = (0..size)
        .map(|q| {
            if q == class {
                s.name(least).to_string()
            } else {
                s.name(rep[q]).to_string()
            }
        })
        .collect();
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for &x in &rep {
        for &y in &rep {
            add.push(projection[s.add(x, y)]);
            mul.push(projection[s.mul(x, y)]);
        }
    }
    let semiring = FiniteSemiring::from_raw(
        names,
        add,
        mul,
        s.one().map(|c| projection[c]),
        s.zero().map(|c| projection[c]),
    );
    Ok(Quotient {
        semiring,
        projection,
        class,
    })
}

/// A subsemiring with its inclusion into the ambient semiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsemiring {
    pub semiring: FiniteSemiring,
    /// `inclusion[i]` is the ambient index of element `i`; increasing.
    pub inclusion: Vec<Elem>,
    /// Size of the multiplicative closure of the generators.
    pub mult_closure: usize,
}

impl Subsemiring {
    /// Every element is a sum of distinct members of the multiplicative
    /// closure, so there are at most `2^m - 1` of them.
    pub fn within_sum_bound(&self) -> bool {
        let m = self.mult_closure as u32;
        m >= 127 || (self.semiring.len() as u128) < (1u128 << m)
    }
}

/// Closes `generators` (together with the designated constants of `s`) under
/// multiplication, then under addition.
pub fn subsemiring_generated(s: &FiniteSemiring, generators: &[Elem], caps: &Caps) -> Result<Subsemiring> {
    if generators.is_empty() && s.one().is_none() && s.zero().is_none() {
        return Err(Error::precondition("at least one generator is required"));
    }
    let n = s.len();
    let mut in_mult = vec![false; n];
    let mut mult: Vec<Elem> = Vec::new();
    for &g in generators.iter().chain(s.one().iter()).chain(s.zero().iter()) {
        if g >= n {
            return Err(Error::structure(format!("generator {g} outside the carrier")));
        }
        if !std::mem::replace(&mut in_mult[g], true) {
            mult.push(g);
        }
    }
    let mut done = 0;
    while done < mult.len() {
        let x = mult[done];
        done += 1;
        for i in 0..done {
            let y = mult[i];
            for p in [s.mul(x, y), s.mul(y, x)] {
                if !std::mem::replace(&mut in_mult[p], true) {
                    mult.push(p);
                }
            }
        }
    }
    let mult_closure = mult.len();

    let mut in_all = in_mult.clone();
    let mut all = mult.clone();
    let mut done = 0;
    while done < all.len() {
        let x = all[done];
        done += 1;
        for i in 0..done {
            let v = s.add(x, all[i]);
            if !std::mem::replace(&mut in_all[v], true) {
                all.push(v);
            }
        }
        Caps::check("generated subsemiring", all.len() as u128, caps.carrier as u128)?;
    }

    let inclusion: Vec<Elem> = s.elements().filter(|&x| in_all[x]).collect();
    let mut position = vec![usize::MAX; n];
    for (i, &x) in inclusion.iter().enumerate() {
        position[x] = i;
    }
    let size = inclusion.len();
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for &x in &inclusion {
        for &y in &inclusion {
            add.push(position[s.add(x, y)]);
            mul.push(position[s.mul(x, y)]);
        }
    }
    let names = inclusion.iter().map(|&x| s.name(x).to_string()).collect();
    let semiring = FiniteSemiring::from_raw(
        names,
        add,
        mul,
        s.one().map(|c| position[c]),
        s.zero().map(|c| position[c]),
    );
    Ok(Subsemiring {
        semiring,
        inclusion,
        mult_closure,
    })
}
