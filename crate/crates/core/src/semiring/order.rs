use serde::{Deserialize, Serialize};

use super::{Elem, FiniteSemiring};

/// The semilattice order of an ai-semiring: `x <= y` iff `x + y = y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderProfile {
    n: usize,
    leq: Vec<bool>,
    /// Number of elements in a longest chain, minus one.
    pub height: usize,
    pub is_flat: bool,
    pub top: Option<Elem>,
}

impl OrderProfile {
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    /// Elements `y` with `x < y` and nothing strictly between.
    pub fn covers(&self, x: Elem) -> Vec<Elem> {
        (0..self.n)
            .filter(|&y| self.lt(x, y) && !(0..self.n).any(|z| self.lt(x, z) && self.lt(z, y)))
            .collect()
    }

    /// Whether the elements of `set` are pairwise incomparable.
    pub fn is_antichain(&self, set: &[Elem]) -> bool {
        set.iter()
            .all(|&x| set.iter().all(|&y| x == y || !self.leq(x, y)))
    }

    pub fn is_upward_closed(&self, set: &[bool]) -> bool {
        (0..self.n).all(|x| !set[x] || (0..self.n).all(|y| !self.leq(x, y) || set[y]))
    }
}

/// Computes the order, its height and flatness. Assumes the semilattice laws.
pub fn order_profile(s: &FiniteSemiring) -> OrderProfile {
    let n = s.len();
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = s.leq(x, y);
        }
    }
    // Longest chain ending at each element. Processing in order of the number
    // of elements below makes every predecessor final before it is read.
    let below: Vec<usize> = (0..n)
        .map(|y| (0..n).filter(|&x| x != y && leq[x * n + y]).count())
        .collect();
    let mut by_rank: Vec<Elem> = (0..n).collect();
    by_rank.sort_by_key(|&y| below[y]);
    let mut chain = vec![0usize; n];
    for &y in &by_rank {
        chain[y] = (0..n)
            .filter(|&x| x != y && leq[x * n + y])
            .map(|x| chain[x] + 1)
            .max()
            .unwrap_or(0);
    }
    let height = chain.iter().copied().max().unwrap_or(0);
    let top = (0..n).find(|&t| (0..n).all(|x| leq[x * n + t]));
    OrderProfile {
        n,
        leq,
        height,
        is_flat: s.is_flat(),
        top,
    }
}
