use super::FiniteSemiring;
use crate::caps::Caps;
use crate::error::Result;
use crate::semigroup::FiniteSemigroup;

/// The power semiring of a semigroup: subsets under union and the complex
/// product `AB = {ab : a in A, b in B}`.
///
/// Without `include_empty` the carrier is the nonempty subsets; with it the
/// empty set is added as the designated zero. Subsets are ordered by their
/// bitmask, a singleton is named after its element and larger subsets are
/// written `(x+y+...)`.
pub fn power_semiring(t: &FiniteSemigroup, include_empty: bool, caps: &Caps) -> Result<FiniteSemiring> {
    let n = t.len();
    let subsets: u128 = if n >= 127 { u128::MAX } else { (1u128 << n) - u128::from(!include_empty) };
    Caps::check("power semiring", subsets, caps.power_semiring as u128)?;

    let full = 1usize << n;
    // row[a][B] = {a} B, built from B without its lowest element.
    let mut row = vec![0usize; n * full];
    for a in 0..n {
        for b in 1..full {
            let low = b.trailing_zeros() as usize;
            row[a * full + b] = row[a * full + (b & (b - 1))] | (1 << t.mul(a, low));
        }
    }
    let mut product = vec![0usize; full * full];
    for a in 1..full {
        let low = a.trailing_zeros() as usize;
        let rest = a & (a - 1);
        for b in 0..full {
            product[a * full + b] = product[rest * full + b] | row[low * full + b];
        }
    }

    let first = usize::from(!include_empty);
    let index = |mask: usize| mask - first;
    let masks: Vec<usize> = (first..full).collect();
    let names = masks
        .iter()
        .map(|&m| match m.count_ones() {
            0 => "empty".to_string(),
            1 => t.name(m.trailing_zeros() as usize).to_string(),
            _ => {
                let parts: Vec<&str> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| t.name(i)).collect();
                format!("({})", parts.join("+"))
            }
        })
        .collect();
    let size = masks.len();
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for &a in &masks {
        for &b in &masks {
            add.push(index(a | b));
            mul.push(index(product[a * full + b]));
        }
    }
    let zero = include_empty.then_some(0);
    let s = FiniteSemiring::from_raw(names, add, mul, None, zero);
    super::check_names(s.names())?;
    Ok(s)
}
