//! Finite semigroups by multiplication table, and the flat completion of a
//! semigroup with zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::{check_names, Elem, FiniteSemiring};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    names: Vec<String>,
    mul: Vec<Elem>,
}

impl FiniteSemigroup {
    /// Builds a semigroup from a row-major table, checking totality and
    /// associativity.
    pub fn new(names: Vec<String>, mul: Vec<Vec<Elem>>) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        let mul = crate::semiring::flatten_table("mul", n, mul)?;
        let s = FiniteSemigroup { names, mul };
        if let Some((x, y, z)) = s.associativity_failure() {
            return Err(Error::structure(format!(
                "multiplication is not associative at ({}, {}, {})",
                s.name(x),
                s.name(y),
                s.name(z)
            )));
        }
        Ok(s)
    }

    pub fn from_fn(names: Vec<String>, mul: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        let n = names.len();
        let rows = (0..n).map(|x| (0..n).map(|y| mul(x, y)).collect()).collect();
        Self::new(names, rows)
    }

    /// The multiplicative reduct of a semiring; associativity is assumed.
    pub fn reduct(s: &FiniteSemiring) -> Self {
        let n = s.len();
        let mut mul = Vec::with_capacity(n * n);
        for x in s.elements() {
            mul.extend_from_slice(s.mul_row(x));
        }
        FiniteSemigroup {
            names: s.names().to_vec(),
            mul,
        }
    }

    fn associativity_failure(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
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

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.names.len() + y]
    }

    pub fn is_absorbing(&self, z: Elem) -> bool {
        self.elements().all(|x| self.mul(x, z) == z && self.mul(z, x) == z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupWithZero {
    pub semigroup: FiniteSemigroup,
    pub zero: Elem,
}

impl SemigroupWithZero {
    pub fn new(semigroup: FiniteSemigroup, zero: Elem) -> Result<Self> {
        if zero >= semigroup.len() {
            return Err(Error::structure("zero outside the carrier"));
        }
        if !semigroup.is_absorbing(zero) {
            return Err(Error::structure(format!(
                "{} is not a multiplicative zero",
                semigroup.name(zero)
            )));
        }
        Ok(SemigroupWithZero { semigroup, zero })
    }

    /// The multiplicative reduct of a flat semiring with its top as zero.
    pub fn from_flat(s: &FiniteSemiring) -> Result<Self> {
        let top = s
            .flat_top()
            .ok_or_else(|| Error::precondition("semiring is not flat"))?;
        Self::new(FiniteSemigroup::reduct(s), top)
    }
}

/// A failure of one of the 0-cancellative laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CancellationFailure {
    /// `x y = x z != 0` with `y != z`.
    Left { x: Elem, y: Elem, z: Elem },
    /// `y x = z x != 0` with `y != z`.
    Right { x: Elem, y: Elem, z: Elem },
}

impl CancellationFailure {
    pub fn describe(&self, t: &FiniteSemigroup) -> String {
        match *self {
            CancellationFailure::Left { x, y, z } => format!(
                "{x}*{y} = {x}*{z} = {p} is nonzero but {y} != {z}",
                x = t.name(x),
                y = t.name(y),
                z = t.name(z),
                p = t.name(t.mul(x, y))
            ),
            CancellationFailure::Right { x, y, z } => format!(
                "{y}*{x} = {z}*{x} = {p} is nonzero but {y} != {z}",
                x = t.name(x),
                y = t.name(y),
                z = t.name(z),
                p = t.name(t.mul(y, x))
            ),
        }
    }
}

/// First failure of the 0-cancellative laws, left law first, witnesses in
/// lexicographic order.
pub fn cancellation_failure(t: &SemigroupWithZero) -> Option<CancellationFailure> {
    let s = &t.semigroup;
    for x in s.elements() {
        for y in s.elements() {
            for z in s.elements().filter(|&z| z != y) {
                if s.mul(x, y) == s.mul(x, z) && s.mul(x, y) != t.zero {
                    return Some(CancellationFailure::Left { x, y, z });
                }
            }
        }
    }
    for x in s.elements() {
        for y in s.elements() {
            for z in s.elements().filter(|&z| z != y) {
                if s.mul(y, x) == s.mul(z, x) && s.mul(y, x) != t.zero {
                    return Some(CancellationFailure::Right { x, y, z });
                }
            }
        }
    }
    None
}

/// Equips `t` with the flat addition (`x + x = x`, anything else is the
/// zero), which gives a semiring exactly when `t` is 0-cancellative.
pub fn flat_completion(t: &SemigroupWithZero) -> Result<FiniteSemiring, CancellationFailure> {
    if let Some(failure) = cancellation_failure(t) {
        return Err(failure);
    }
    let s = &t.semigroup;
    let zero = t.zero;
    Ok(FiniteSemiring::from_fn(
        s.names().to_vec(),
        |x, y| if x == y { x } else { zero },
        |x, y| s.mul(x, y),
    )
    .expect("names were validated with the semigroup"))
}
