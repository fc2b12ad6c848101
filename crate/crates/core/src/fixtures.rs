//! Built-in semirings and groups.

use crate::caps::Caps;
use crate::group::{cyclic, flat_extension, heisenberg27, quaternion, symmetric3, FiniteGroup};
use crate::semigroup::FiniteSemigroup;
use crate::semiring::{adjoin, power_semiring, word_semiring, AdjoinKind, FiniteSemiring, WordSpec, WordVariant};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// The three-element semiring on `1, a, 0`.
pub fn s7() -> FiniteSemiring {
    FiniteSemiring::from_tables(
        names(&["1", "a", "0"]),
        vec![vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]],
        vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
        None,
        None,
    )
    .expect("S7 tables")
}

/// `S_7` with an additive identity `zero` adjoined and designated.
pub fn s7_zero() -> FiniteSemiring {
    adjoin(&s7(), AdjoinKind::AdditiveZero).expect("adjoin").semiring
}

/// The two-element flat semiring on `1, 0`.
pub fn m2() -> FiniteSemiring {
    FiniteSemiring::from_tables(
        names(&["1", "0"]),
        vec![vec![0, 1], vec![1, 1]],
        vec![vec![0, 1], vec![1, 1]],
        None,
        None,
    )
    .expect("M2 tables")
}

/// The Brandt monoid on `0, 1, a, b, ab, ba` as 2x2 matrix units, with
/// addition the join of `1 < ab < 0`, `1 < ba < 0`, `a < 0`, `b < 0`.
pub fn b21() -> FiniteSemiring {
    // Row-major 0/1 entries of each matrix.
    const M: [[u8; 4]; 6] = [
        [0, 0, 0, 0],
        [1, 0, 0, 1],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [1, 0, 0, 0],
        [0, 0, 0, 1],
    ];
    let find = |m: [u8; 4]| M.iter().position(|x| *x == m).expect("closed under products");
    let mul = |x: usize, y: usize| {
        let (p, q) = (M[x], M[y]);
        find([
            p[0] * q[0] + p[1] * q[2],
            p[0] * q[1] + p[1] * q[3],
            p[2] * q[0] + p[3] * q[2],
            p[2] * q[1] + p[3] * q[3],
        ])
    };
    // Covers of the order; the join is the least common upper bound.
    let above: [&[usize]; 6] = [&[0], &[1, 4, 5, 0], &[2, 0], &[3, 0], &[4, 0], &[5, 0]];
    let leq = |x: usize, y: usize| above[x].contains(&y);
    let add = |x: usize, y: usize| {
        (0..6)
            .filter(|&z| leq(x, z) && leq(y, z))
            .find(|&z| (0..6).all(|w| !(leq(x, w) && leq(y, w)) || leq(z, w)))
            .expect("join exists")
    };
    FiniteSemiring::from_fn(names(&["0", "1", "a", "b", "ab", "ba"]), add, mul).expect("B21 tables")
}

pub fn sc_abb() -> FiniteSemiring {
    word(WordVariant::Sc, "abb")
}

pub fn sc_a1a2a3() -> FiniteSemiring {
    word(WordVariant::Sc, "a1a2a3")
}

fn word(variant: WordVariant, w: &str) -> FiniteSemiring {
    word_semiring(&WordSpec::parse(variant, &[w]).expect("word"), &Caps::default()).expect("word semiring")
}

pub fn flat_q8() -> FiniteSemiring {
    flat_extension(&quaternion(), false)
}

pub fn flat_heisenberg27() -> FiniteSemiring {
    flat_extension(&heisenberg27(), false)
}

/// Nonempty subsets of the quaternion group under union and complex product.
pub fn power_q8() -> FiniteSemiring {
    let q = quaternion();
    let t = FiniteSemigroup::from_fn(q.names().to_vec(), |x, y| q.mul(x, y)).expect("group is a semigroup");
    power_semiring(&t, false, &Caps::default()).expect("255 subsets")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Semiring(FiniteSemiring),
    Group(FiniteGroup),
}

pub const SEMIRING_NAMES: &[&str] = &[
    "s7",
    "b21",
    "m2",
    "sc_abb",
    "sc_a1a2a3",
    "s7_zero",
    "flat_q8",
    "flat_heisenberg27",
    "power_q8",
];

pub const GROUP_NAMES: &[&str] = &["z2", "z3", "z4", "s3", "q8", "heisenberg27"];

pub fn semiring(name: &str) -> Option<FiniteSemiring> {
    Some(match name {
        "s7" => s7(),
        "b21" => b21(),
        "m2" => m2(),
        "sc_abb" => sc_abb(),
        "sc_a1a2a3" => sc_a1a2a3(),
        "s7_zero" => s7_zero(),
        "flat_q8" => flat_q8(),
        "flat_heisenberg27" => flat_heisenberg27(),
        "power_q8" => power_q8(),
        _ => return None,
    })
}

pub fn group(name: &str) -> Option<FiniteGroup> {
    Some(match name {
        "z2" => cyclic(2),
        "z3" => cyclic(3),
        "z4" => cyclic(4),
        "s3" => symmetric3(),
        "q8" => quaternion(),
        "heisenberg27" => heisenberg27(),
        _ => return None,
    })
}

pub fn by_name(name: &str) -> Option<Fixture> {
    semiring(name)
        .map(Fixture::Semiring)
        .or_else(|| group(name).map(Fixture::Group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{order_profile, verify_semiring_axioms};

    #[test]
    fn small_fixtures_are_semirings() {
        for name in SEMIRING_NAMES.iter().filter(|n| **n != "power_q8") {
            let s = semiring(name).unwrap();
            assert!(verify_semiring_axioms(&s).is_valid(), "{name}");
        }
    }

    #[test]
    fn b21_addition_is_entrywise_and() {
        let b = b21();
        assert_eq!(b.name(b.add(1, 4)), "ab");
        assert_eq!(b.name(b.add(4, 5)), "0");
        assert_eq!(b.name(b.add(1, 2)), "0");
        assert_eq!(b.name(b.mul(2, 3)), "ab");
        assert_eq!(b.name(b.mul(3, 2)), "ba");
        assert_eq!(b.name(b.mul(2, 2)), "0");
        let p = order_profile(&b);
        assert_eq!(p.height, 2);
        assert!(!p.is_flat);
    }

    #[test]
    fn lookup() {
        assert!(matches!(by_name("q8"), Some(Fixture::Group(g)) if g.len() == 8));
        assert!(matches!(by_name("s7"), Some(Fixture::Semiring(s)) if s.len() == 3));
        assert!(by_name("nope").is_none());
        assert_eq!(s7_zero().names(), ["1", "a", "0", "zero"]);
    }
}
