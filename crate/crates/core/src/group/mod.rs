//! Finite groups by multiplication table.

mod flat;
mod subgroups;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use flat::{extract_flat_group, flat_extension, group_quotient_embedding, GroupEmbedding};
pub use subgroups::{
    enumerate_subgroups, lower_central_series, multiplicative_subgroups, nonabelian_nilpotent_witness,
    MaximalSubgroup, SubgroupWitness,
};

use crate::error::{Error, Result};
use crate::semiring::format::{carrier, required, sections, single, table, write_table};
use crate::semiring::{check_names, flatten_table, Elem, FiniteSemiring};

/// Serializes as its text format.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct FiniteGroup {
    names: Vec<String>,
    mul: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
}

/// Problems found by [`verify_group`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub violations: Vec<String>,
}

impl GroupReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks associativity, the identity and two-sided inverses of a table.
pub fn verify_group_table(names: &[String], mul: &[Elem], identity: Elem) -> GroupReport {
    let n = names.len();
    let m = |x: Elem, y: Elem| mul[x * n + y];
    let mut violations = Vec::new();
    'assoc: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(m(x, y), z) != m(x, m(y, z)) {
                    violations.push(format!(
                        "not associative at ({}, {}, {})",
                        names[x], names[y], names[z]
                    ));
                    break 'assoc;
                }
            }
        }
    }
    if identity >= n {
        violations.push("identity outside the carrier".into());
        return GroupReport { violations };
    }
    for x in 0..n {
        if m(identity, x) != x || m(x, identity) != x {
            violations.push(format!("{} is not an identity for {}", names[identity], names[x]));
            break;
        }
    }
    for x in 0..n {
        if !(0..n).any(|y| m(x, y) == identity && m(y, x) == identity) {
            violations.push(format!("{} has no inverse", names[x]));
        }
    }
    GroupReport { violations }
}

/// Verifies an already constructed group; always valid for values built
/// through [`FiniteGroup::new`], but useful after deserialization.
pub fn verify_group(g: &FiniteGroup) -> GroupReport {
    verify_group_table(&g.names, &g.mul, g.identity)
}

impl FiniteGroup {
    /// Builds a group from a row-major table, rejecting tables that fail
    /// [`verify_group_table`].
    pub fn new(names: Vec<String>, mul: Vec<Vec<Elem>>, identity: Elem) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        let mul = flatten_table("mul", n, mul)?;
        Self::from_flat(names, mul, identity)
    }

    fn from_flat(names: Vec<String>, mul: Vec<Elem>, identity: Elem) -> Result<Self> {
        let report = verify_group_table(&names, &mul, identity);
        if !report.is_valid() {
            return Err(Error::structure(report.violations.join("; ")));
        }
        let n = names.len();
        let inverse = (0..n)
            .map(|x| (0..n).find(|&y| mul[x * n + y] == identity).expect("verified"))
            .collect();
        Ok(FiniteGroup {
            names,
            mul,
            identity,
            inverse,
        })
    }

    pub fn from_fn(names: Vec<String>, identity: Elem, mul: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        let n = names.len();
        let rows = (0..n).map(|x| (0..n).map(|y| mul(x, y)).collect()).collect();
        Self::new(names, rows, identity)
    }

    /// The group formed by `carrier` inside the multiplicative reduct of
    /// `s`, with elements in the order given.
    pub fn from_semiring_subset(s: &FiniteSemiring, carrier: &[Elem]) -> Result<Self> {
        if carrier.is_empty() {
            return Err(Error::precondition("a group needs at least one element"));
        }
        let mut position = vec![usize::MAX; s.len()];
        for (i, &x) in carrier.iter().enumerate() {
            if x >= s.len() || position[x] != usize::MAX {
                return Err(Error::precondition("subset has repeated or out-of-range elements"));
            }
            position[x] = i;
        }
        let mut mul = Vec::with_capacity(carrier.len() * carrier.len());
        for &x in carrier {
            for &y in carrier {
                let p = position[s.mul(x, y)];
                if p == usize::MAX {
                    return Err(Error::precondition(format!(
                        "{} * {} = {} leaves the subset",
                        s.name(x),
                        s.name(y),
                        s.name(s.mul(x, y))
                    )));
                }
                mul.push(p);
            }
        }
        let identity = (0..carrier.len())
            .find(|&e| (0..carrier.len()).all(|x| mul[e * carrier.len() + x] == x && mul[x * carrier.len() + e] == x))
            .ok_or_else(|| Error::precondition("subset has no identity"))?;
        let names = carrier.iter().map(|&x| s.name(x).to_string()).collect();
        Self::from_flat(names, mul, identity).map_err(|e| Error::precondition(e.to_string()))
    }

    /// The subgroup on `carrier` (indices into `self`), in the order given.
    pub fn restrict(&self, carrier: &[Elem]) -> Result<FiniteGroup> {
        let mut position = vec![usize::MAX; self.len()];
        for (i, &x) in carrier.iter().enumerate() {
            position[x] = i;
        }
        let mut mul = Vec::with_capacity(carrier.len() * carrier.len());
        for &x in carrier {
            for &y in carrier {
                let p = position[self.mul(x, y)];
                if p == usize::MAX {
                    return Err(Error::precondition("subset is not closed"));
                }
                mul.push(p);
            }
        }
        let identity = position[self.identity];
        if identity == usize::MAX {
            return Err(Error::precondition("subset misses the identity"));
        }
        let names = carrier.iter().map(|&x| self.names[x].clone()).collect();
        Self::from_flat(names, mul, identity)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.names.len() + y]
    }

    pub fn inverse(&self, x: Elem) -> Elem {
        self.inverse[x]
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        let xy = self.mul(x, y);
        self.mul(self.mul(self.inverse(x), self.inverse(y)), xy)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn order_of(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != self.identity {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements().map(|x| self.order_of(x)).fold(1, lcm)
    }

    /// Parses the group text format: `elements:`, `mul:` and `identity:`.
    pub fn from_text(text: &str) -> Result<Self> {
        let secs = sections(text, &["elements", "mul", "identity"])?;
        let names = carrier(required(text, &secs, "elements")?)?;
        let mul = table(&names, required(text, &secs, "mul")?)?;
        let identity = single(&names, required(text, &secs, "identity")?)?;
        Self::from_flat(names, mul, identity)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("elements:");
        for name in &self.names {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        write_table(&mut out, "mul", &self.names, |x, y| self.mul(x, y));
        out.push_str(&format!("identity: {}\n", self.names[self.identity]));
        out
    }
}

impl From<FiniteGroup> for String {
    fn from(g: FiniteGroup) -> String {
        g.to_text()
    }
}

impl TryFrom<String> for FiniteGroup {
    type Error = Error;

    fn try_from(text: String) -> Result<Self> {
        FiniteGroup::from_text(&text)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// The cyclic group of order `n` on `e, g, g2, ...`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    FiniteGroup::from_fn(names, 0, |x, y| (x + y) % n).expect("cyclic group")
}

/// The symmetric group on three points; `(01)` swaps 0 and 1, `(012)` sends
/// 0 to 1, 1 to 2 and 2 to 0. Products compose right to left.
pub fn symmetric3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let names = ["e", "(01)", "(02)", "(12)", "(012)", "(021)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_fn(names, 0, |x, y| {
        let composed = [perms[x][perms[y][0]], perms[x][perms[y][1]], perms[x][perms[y][2]]];
        perms.iter().position(|p| *p == composed).expect("closed")
    })
    .expect("symmetric group")
}

/// The quaternion group on `1, m, i, mi, j, mj, k, mk`, where `m` is -1.
pub fn quaternion() -> FiniteGroup {
    // Element 2u + s is the unit u (1, i, j, k) with sign s (0 for +).
    let unit = |a: usize, b: usize| -> (usize, usize) {
        // (sign, unit) of the product of units a and b.
        match (a, b) {
            (0, u) | (u, 0) => (0, u),
            (a, b) if a == b => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let names = ["1", "m", "i", "mi", "j", "mj", "k", "mk"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_fn(names, 0, |x, y| {
        let (s, u) = unit(x / 2, y / 2);
        2 * u + (s + x % 2 + y % 2) % 2
    })
    .expect("quaternion group")
}

/// Unitriangular 3x3 matrices over Z3, written `h{a}{b}{c}` for the matrix
/// with entries a, b above the diagonal and c in the corner. The product is
/// `(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')`.
pub fn heisenberg27() -> FiniteGroup {
    let decode = |x: usize| (x / 9, x / 3 % 3, x % 3);
    let names = (0..27)
        .map(|x| {
            let (a, b, c) = decode(x);
            format!("h{a}{b}{c}")
        })
        .collect();
    FiniteGroup::from_fn(names, 0, |x, y| {
        let (a, b, c) = decode(x);
        let (a2, b2, c2) = decode(y);
        ((a + a2) % 3) * 9 + ((b + b2) % 3) * 3 + (c + c2 + a * b2) % 3
    })
    .expect("Heisenberg group")
}
