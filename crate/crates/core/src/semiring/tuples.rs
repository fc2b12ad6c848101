use std::collections::HashMap;

use super::{Elem, FiniteSemiring};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Tuples wider than this get short generated names.
const NAMED_WIDTH: usize = 6;

/// A subsemiring of a power `base^T`, generated without building the power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleAlgebra {
    pub semiring: FiniteSemiring,
    /// The tuple behind each element; `None` for the collapsed class.
    pub tuples: Vec<Option<Vec<Elem>>>,
    /// Index of each generator, in the order they were given.
    pub generators: Vec<Elem>,
    pub collapsed: Option<Elem>,
}

impl TupleAlgebra {
    pub fn width(&self) -> usize {
        self.tuples.iter().flatten().map(Vec::len).next().unwrap_or(0)
    }
}

/// Closes `generators` under componentwise `+` and `.` in `base^T`, where
/// `T` is the common length of the generator tuples.
///
/// With `collapse = Some(z)`, every tuple having `z` as a coordinate is
/// replaced by a single class. When `z` is the top of `base` and absorbs
/// multiplicatively, those tuples form an ideal and filter of the generated
/// subsemiring, so the result is its ideal quotient.
pub fn generate_in_power(
    base: &FiniteSemiring,
    generators: &[Vec<Elem>],
    collapse: Option<Elem>,
    caps: &Caps,
) -> Result<TupleAlgebra> {
    let width = generators
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::precondition("at least one generator is required"))?;
    if width == 0 {
        return Err(Error::precondition("tuples must have at least one coordinate"));
    }
    for g in generators {
        if g.len() != width {
            return Err(Error::precondition("generator tuples differ in length"));
        }
        if g.iter().any(|&x| x >= base.len()) {
            return Err(Error::structure("generator coordinate outside the base carrier"));
        }
    }
    if let Some(z) = collapse {
        if z >= base.len() || z != base.top() || !base.is_mul_absorbing(z) {
            return Err(Error::precondition(
                "only an absorbing top can be collapsed coordinatewise",
            ));
        }
    }

    // The collapsed class is keyed by the empty tuple.
    let normalize = |t: Vec<Elem>| -> Vec<Elem> {
        match collapse {
            Some(z) if t.contains(&z) => Vec::new(),
            _ => t,
        }
    };
    let combine = |x: &[Elem], y: &[Elem], op: fn(&FiniteSemiring, Elem, Elem) -> Elem| -> Vec<Elem> {
        if x.is_empty() || y.is_empty() {
            return Vec::new();
        }
        normalize(x.iter().zip(y).map(|(&a, &b)| op(base, a, b)).collect())
    };

    let mut index: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut found: Vec<Vec<Elem>> = Vec::new();
    let mut gen_index = Vec::with_capacity(generators.len());
    let mut insert = |t: Vec<Elem>, found: &mut Vec<Vec<Elem>>| -> Result<usize> {
        if let Some(&i) = index.get(&t) {
            return Ok(i);
        }
        Caps::check("generated tuple algebra", found.len() as u128 + 1, caps.carrier as u128)?;
        index.insert(t.clone(), found.len());
        found.push(t);
        Ok(found.len() - 1)
    };
    for g in generators {
        gen_index.push(insert(normalize(g.clone()), &mut found)?);
    }
    let mut done = 0;
    while done < found.len() {
        let x = found[done].clone();
        done += 1;
        for i in 0..done {
            let y = found[i].clone();
            insert(combine(&x, &y, FiniteSemiring::add), &mut found)?;
            insert(combine(&x, &y, FiniteSemiring::mul), &mut found)?;
            insert(combine(&y, &x, FiniteSemiring::mul), &mut found)?;
        }
    }

    // Move the collapsed class to the end.
    let size = found.len();
    let mut order: Vec<usize> = (0..size).filter(|&i| !found[i].is_empty()).collect();
    let collapsed_at = (0..size).find(|&i| found[i].is_empty());
    order.extend(collapsed_at);
    let mut position = vec![0; size];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let lookup: HashMap<&[Elem], usize> = found
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), position[i]))
        .collect();

    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for &i in &order {
        for &j in &order {
            add.push(lookup[combine(&found[i], &found[j], FiniteSemiring::add).as_slice()]);
            mul.push(lookup[combine(&found[i], &found[j], FiniteSemiring::mul).as_slice()]);
        }
    }
    let names = order
        .iter()
        .enumerate()
        .map(|(p, &i)| {
            let t = &found[i];
            if t.is_empty() {
                base.name(collapse.expect("only collapsing creates the empty key")).to_string()
            } else if width <= NAMED_WIDTH {
                let parts: Vec<&str> = t.iter().map(|&c| base.name(c)).collect();
                format!("({})", parts.join("_"))
            } else {
                format!("t{p}")
            }
        })
        .collect();
    let semiring = FiniteSemiring::from_raw(names, add, mul, None, None);
    let tuples = order
        .iter()
        .map(|&i| (!found[i].is_empty()).then(|| found[i].clone()))
        .collect();
    Ok(TupleAlgebra {
        semiring,
        tuples,
        generators: gen_index.into_iter().map(|i| position[i]).collect(),
        collapsed: collapsed_at.map(|i| position[i]),
    })
}
