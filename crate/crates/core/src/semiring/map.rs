use serde::{Deserialize, Serialize};

use super::{Elem, FiniteSemiring};
use crate::error::{Error, Result};

/// First failure of the homomorphism laws.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapViolation {
    Add { x: Elem, y: Elem },
    Mul { x: Elem, y: Elem },
    One,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapVerdict {
    pub homomorphism: bool,
    pub injective: bool,
    pub surjective: bool,
    pub first_violation: Option<MapViolation>,
}

impl MapVerdict {
    pub fn is_isomorphism(&self) -> bool {
        self.homomorphism && self.injective && self.surjective
    }

    pub fn is_embedding(&self) -> bool {
        self.homomorphism && self.injective
    }
}

/// Checks `f(x+y) = f(x)+f(y)`, `f(xy) = f(x)f(y)` and preservation of the
/// constants designated in both structures, and reports bijectivity.
pub fn verify_canonical_map(s: &FiniteSemiring, t: &FiniteSemiring, map: &[Elem]) -> Result<MapVerdict> {
    if map.len() != s.len() {
        return Err(Error::precondition(format!(
            "map has {} entries but the source has {} elements",
            map.len(),
            s.len()
        )));
    }
    if let Some(&bad) = map.iter().find(|&&v| v >= t.len()) {
        return Err(Error::precondition(format!("map value {bad} outside the target")));
    }
    let mut first_violation = None;
    'outer: for x in s.elements() {
        for y in s.elements() {
            if map[s.add(x, y)] != t.add(map[x], map[y]) {
                first_violation = Some(MapViolation::Add { x, y });
                break 'outer;
            }
            if map[s.mul(x, y)] != t.mul(map[x], map[y]) {
                first_violation = Some(MapViolation::Mul { x, y });
                break 'outer;
            }
        }
    }
    if first_violation.is_none() {
        if let (Some(a), Some(b)) = (s.one(), t.one()) {
            if map[a] != b {
                first_violation = Some(MapViolation::One);
            }
        }
    }
    if first_violation.is_none() {
        if let (Some(a), Some(b)) = (s.zero(), t.zero()) {
            if map[a] != b {
                first_violation = Some(MapViolation::Zero);
            }
        }
    }
    let mut hit = vec![false; t.len()];
    let mut injective = true;
    for &v in map {
        if std::mem::replace(&mut hit[v], true) {
            injective = false;
        }
    }
    Ok(MapVerdict {
        homomorphism: first_violation.is_none(),
        injective,
        surjective: hit.iter().all(|&h| h),
        first_violation,
    })
}

/// Extends `generators[i] -> images[i]` to the subsemiring of `s` the
/// generators produce, closing under both operations.
///
/// Returns `None` in a slot of the result for elements of `s` the generators
/// do not reach. An error means the assignment is not compatible with any
/// homomorphism: two expressions for the same element map to different
/// places.
pub fn hom_from_generators(
    s: &FiniteSemiring,
    generators: &[Elem],
    t: &FiniteSemiring,
    images: &[Elem],
) -> Result<Vec<Option<Elem>>> {
    if generators.len() != images.len() {
        return Err(Error::precondition("generators and images differ in length"));
    }
    let mut map: Vec<Option<Elem>> = vec![None; s.len()];
    let mut reached = Vec::new();
    let conflict = |x: Elem, old: Elem, new: Elem| {
        Error::precondition(format!(
            "generator images are inconsistent: {} would map to both {} and {}",
            s.name(x),
            t.name(old),
            t.name(new)
        ))
    };
    let assign = |map: &mut Vec<Option<Elem>>, reached: &mut Vec<Elem>, x: Elem, v: Elem| -> Result<bool> {
        match map[x] {
            Some(old) if old != v => Err(conflict(x, old, v)),
            Some(_) => Ok(false),
            None => {
                map[x] = Some(v);
                reached.push(x);
                Ok(true)
            }
        }
    };
    for (&g, &img) in generators.iter().zip(images) {
        assign(&mut map, &mut reached, g, img)?;
    }
    let mut done = 0;
    while done < reached.len() {
        let x = reached[done];
        done += 1;
        let fx = map[x].expect("reached elements are mapped");
        // Pair the new element with everything reached so far, itself included.
        let mut i = 0;
        while i < done {
            let y = reached[i];
            let fy = map[y].expect("reached elements are mapped");
            assign(&mut map, &mut reached, s.add(x, y), t.add(fx, fy))?;
            assign(&mut map, &mut reached, s.mul(x, y), t.mul(fx, fy))?;
            assign(&mut map, &mut reached, s.mul(y, x), t.mul(fy, fx))?;
            i += 1;
        }
    }
    Ok(map)
}
