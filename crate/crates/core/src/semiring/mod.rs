//! Finite ai-semirings stored as operation tables.
//!
//! A [`FiniteSemiring`] is a carrier of named elements together with an
//! addition table and a multiplication table, plus optional designated
//! constants. Elements are referred to by their index in the carrier.
//! Nothing about the axioms is assumed at construction time; use
//! [`verify_semiring_axioms`] to check them.

mod construct;
pub(crate) mod format;
mod map;
mod order;
mod power;
mod tuples;
mod verify;
mod words;

pub mod laws;

pub use construct::{
    adjoin, direct_power, ideal_quotient, product, quotient_by_collapse, subsemiring_generated,
    zero_direct_join, Adjoined, AdjoinKind, Quotient, Subsemiring,
};
pub use map::{hom_from_generators, verify_canonical_map, MapVerdict, MapViolation};
pub use order::{order_profile, OrderProfile};
pub use power::power_semiring;
pub use tuples::{generate_in_power, TupleAlgebra};
pub use verify::{verify_semiring_axioms, Axiom, AxiomReport, AxiomViolation};
pub use words::{word_semiring, WordSpec, WordVariant};

use crate::error::{Error, Result};

/// Index of an element in a carrier.
pub type Elem = usize;

/// Serializes as its text format.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct FiniteSemiring {
    names: Vec<String>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    one: Option<Elem>,
    zero: Option<Elem>,
}

/// Element names match `[A-Za-z0-9_()*+]+`.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'(' | b')' | b'*' | b'+'))
}

pub(crate) fn check_names(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::structure("carrier is empty"));
    }
    let mut seen = std::collections::HashSet::new();
    for name in names {
        if !is_valid_name(name) {
            return Err(Error::structure(format!("invalid element name {name:?}")));
        }
        if !seen.insert(name.as_str()) {
            return Err(Error::structure(format!("duplicate element name {name:?}")));
        }
    }
    Ok(())
}

pub(crate) fn flatten_table(what: &str, n: usize, rows: Vec<Vec<Elem>>) -> Result<Vec<Elem>> {
    if rows.len() != n {
        return Err(Error::structure(format!(
            "{what} table has {} rows, expected {n}",
            rows.len()
        )));
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in rows.into_iter().enumerate() {
        if row.len() != n {
            return Err(Error::structure(format!(
                "{what} table row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(bad) = row.iter().find(|&&v| v >= n) {
            return Err(Error::structure(format!(
                "{what} table row {i} has entry {bad} outside the carrier"
            )));
        }
        flat.extend(row);
    }
    Ok(flat)
}

impl FiniteSemiring {
    /// Builds a semiring from row-major tables, checking only that the tables
    /// are total over the carrier.
    pub fn from_tables(
        names: Vec<String>,
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        one: Option<Elem>,
        zero: Option<Elem>,
    ) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        let add = flatten_table("add", n, add)?;
        let mul = flatten_table("mul", n, mul)?;
        for (label, c) in [("one", one), ("zero", zero)] {
            if let Some(c) = c {
                if c >= n {
                    return Err(Error::structure(format!(
                        "designated {label} {c} is outside the carrier"
                    )));
                }
            }
        }
        Ok(FiniteSemiring {
            names,
            add,
            mul,
            one,
            zero,
        })
    }

    /// Builds the tables by evaluating the two operations on every pair.
    pub fn from_fn(
        names: Vec<String>,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let n = names.len();
        let add_rows = (0..n).map(|x| (0..n).map(|y| add(x, y)).collect()).collect();
        let mul_rows = (0..n).map(|x| (0..n).map(|y| mul(x, y)).collect()).collect();
        Self::from_tables(names, add_rows, mul_rows, None, None)
    }

    /// Internal constructor for tables already known to be total.
    pub(crate) fn from_raw(
        names: Vec<String>,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        one: Option<Elem>,
        zero: Option<Elem>,
    ) -> Self {
        debug_assert_eq!(add.len(), names.len() * names.len());
        debug_assert_eq!(mul.len(), names.len() * names.len());
        FiniteSemiring {
            names,
            add,
            mul,
            one,
            zero,
        }
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

    /// Like [`index_of`](Self::index_of) but reports unknown names as errors.
    pub fn element(&self, name: &str) -> Result<Elem> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x * self.names.len() + y]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.names.len() + y]
    }

    pub fn one(&self) -> Option<Elem> {
        self.one
    }

    pub fn zero(&self) -> Option<Elem> {
        self.zero
    }

    /// Replaces the designated constants.
    pub fn with_constants(mut self, one: Option<Elem>, zero: Option<Elem>) -> Result<Self> {
        let n = self.len();
        if one.is_some_and(|c| c >= n) || zero.is_some_and(|c| c >= n) {
            return Err(Error::structure("designated constant outside the carrier"));
        }
        self.one = one;
        self.zero = zero;
        Ok(self)
    }

    /// Renames every element; the new names must be valid and distinct.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::structure("wrong number of names"));
        }
        check_names(&names)?;
        self.names = names;
        Ok(self)
    }

    pub fn add_row(&self, x: Elem) -> &[Elem] {
        let n = self.len();
        &self.add[x * n..(x + 1) * n]
    }

    pub fn mul_row(&self, x: Elem) -> &[Elem] {
        let n = self.len();
        &self.mul[x * n..(x + 1) * n]
    }

    /// `x <= y` in the order induced by addition (`x + y = y`).
    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.add(x, y) == y
    }

    /// The join of all elements, i.e. the greatest element of the
    /// semilattice order (assuming the axioms hold).
    pub fn top(&self) -> Elem {
        self.elements()
            .reduce(|acc, x| self.add(acc, x))
            .expect("carrier is nonempty")
    }

    /// An element acting as a two-sided multiplicative identity, read off
    /// the table (independent of the designated constant).
    pub fn identity_element(&self) -> Option<Elem> {
        self.elements()
            .find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Whether `z` absorbs under multiplication from both sides.
    pub fn is_mul_absorbing(&self, z: Elem) -> bool {
        self.elements()
            .all(|x| self.mul(z, x) == z && self.mul(x, z) == z)
    }

    /// Flat: at least two elements, the top absorbs multiplicatively and any
    /// two distinct elements add to the top.
    pub fn is_flat(&self) -> bool {
        if self.len() < 2 {
            return false;
        }
        let top = self.top();
        if !self.is_mul_absorbing(top) {
            return false;
        }
        self.elements().all(|x| {
            self.elements()
                .all(|y| self.add(x, y) == if x == y { x } else { top })
        })
    }

    /// Top element when the semiring is flat.
    pub fn flat_top(&self) -> Option<Elem> {
        self.is_flat().then(|| self.top())
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// `x^k` for `k >= 1`.
    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        assert!(k >= 1, "powers start at 1");
        (1..k).fold(x, |acc, _| self.mul(acc, x))
    }

    /// Sum of a nonempty list of elements.
    pub fn sum(&self, xs: impl IntoIterator<Item = Elem>) -> Option<Elem> {
        xs.into_iter().reduce(|a, b| self.add(a, b))
    }

    /// Product of a nonempty list of elements, left to right.
    pub fn prod(&self, xs: impl IntoIterator<Item = Elem>) -> Option<Elem> {
        xs.into_iter().reduce(|a, b| self.mul(a, b))
    }
}

/// Picks `base`, or `base` with a numeric suffix, so that it avoids `taken`.
pub(crate) fn fresh_name(base: &str, taken: &[String]) -> String {
    if !taken.iter().any(|t| t == base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|cand| !taken.iter().any(|t| t == cand))
        .expect("unbounded suffixes")
}
