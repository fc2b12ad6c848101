use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{colourable, girth, solve_exact, ExactOutcome, Hypergraph, Vertex};
use crate::error::{Error, Result};

/// What the generated hypergraph must fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HardTarget {
    /// No colouring with `colours` colours leaves every edge non-monochromatic.
    NotColourable,
    /// No assignment makes exactly `k - 1` vertices of every edge true.
    NotExact,
}

/// Parameters for [`random_hard_hypergraph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardSearch {
    pub n: usize,
    pub k: usize,
    /// Every cycle must have at least this many edges.
    pub girth: usize,
    /// The result must not be colourable with this many colours.
    pub colours: usize,
    pub target: HardTarget,
    pub seed: u64,
    /// Candidate edges drawn, over all restarts.
    pub budget: u64,
}

impl HardSearch {
    pub fn new(n: usize, k: usize, girth: usize, colours: usize, seed: u64) -> Self {
        HardSearch {
            n,
            k,
            girth,
            colours,
            target: HardTarget::NotColourable,
            seed,
            budget: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum HardSearchOutcome {
    /// Both certificates were recomputed from scratch on `hypergraph`.
    Found {
        hypergraph: Hypergraph,
        seed: u64,
        /// `girth(hypergraph)`, `None` meaning no cycle.
        girth: Option<usize>,
        colours: usize,
        draws: u64,
        restarts: u64,
    },
    BudgetExhausted {
        seed: u64,
        draws: u64,
        restarts: u64,
        /// Most edges reached by any attempt.
        best_edges: usize,
    },
}

impl HardSearchOutcome {
    pub fn hypergraph(&self) -> Option<&Hypergraph> {
        match self {
            HardSearchOutcome::Found { hypergraph, .. } => Some(hypergraph),
            HardSearchOutcome::BudgetExhausted { .. } => None,
        }
    }
}

/// Seeded local search for a `k`-uniform hypergraph of girth at least
/// `girth` that fails the target property.
///
/// The search keeps a solution (a colouring, or an assignment) of the current
/// edges and adds a random edge that the solution violates and that keeps the
/// girth, then asks the solver for a new solution. When no such edge fits, it
/// drops a random edge the solution already satisfies. It stops when the
/// solver finds no solution, and both certificates are then recomputed on the
/// result. Running out of draws is reported, never papered over.
pub fn random_hard_hypergraph(p: &HardSearch) -> Result<HardSearchOutcome> {
    if p.k < 2 || p.n < p.k {
        return Err(Error::precondition("need 2 <= k <= n"));
    }
    if p.target == HardTarget::NotColourable && !(2..=64).contains(&p.colours) {
        return Err(Error::precondition("colours must be between 2 and 64"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut draws = 0u64;
    let mut removals = 0u64;
    let mut best_edges = 0;
    let mut a = Attempt::new(p.n);
    let classes = match p.target {
        HardTarget::NotColourable => p.colours,
        HardTarget::NotExact => 2,
    };
    let mut state: Vec<usize> = (0..p.n).map(|_| rng.gen_range(0..classes)).collect();
    let tries = 20 * p.n as u64;
    while draws < p.budget {
        let mut placed = false;
        for _ in 0..tries {
            if draws >= p.budget {
                break;
            }
            draws += 1;
            let Some(edge) = draw_violated(p, &state, classes, &mut rng) else {
                continue;
            };
            if a.can_add(&edge, p.girth) {
                a.add(edge);
                placed = true;
                break;
            }
        }
        if !placed {
            let satisfied: Vec<usize> = (0..a.edges.len())
                .filter(|&i| !violated(p, &state, &a.edges[i]))
                .collect();
            match satisfied.choose(&mut rng) {
                Some(&i) => {
                    a.remove(i);
                    removals += 1;
                }
                None => state = (0..p.n).map(|_| rng.gen_range(0..classes)).collect(),
            }
            continue;
        }
        best_edges = best_edges.max(a.edges.len());
        let h = a.to_hypergraph(p.k);
        match solve(p, &h) {
            Some(c) => state = scatter(c, classes, &a, &mut rng),
            None => {
                let g = girth(&h);
                let girth_ok = g.is_none_or(|g| g >= p.girth);
                if girth_ok && solve(p, &h).is_none() {
                    return Ok(HardSearchOutcome::Found {
                        hypergraph: h,
                        seed: p.seed,
                        girth: g,
                        colours: p.colours,
                        draws,
                        restarts: removals,
                    });
                }
                return Err(Error::structure("generated instance failed its certificates"));
            }
        }
    }
    Ok(HardSearchOutcome::BudgetExhausted {
        seed: p.seed,
        draws,
        restarts: removals,
        best_edges,
    })
}

fn solve(p: &HardSearch, h: &Hypergraph) -> Option<Vec<usize>> {
    match p.target {
        HardTarget::NotColourable => colourable(h, p.colours),
        HardTarget::NotExact => match solve_exact(h) {
            ExactOutcome::Satisfiable(a) => Some(a.into_iter().map(usize::from).collect()),
            ExactOutcome::Unsatisfiable { .. } => None,
        },
    }
}

fn violated(p: &HardSearch, state: &[usize], e: &[Vertex]) -> bool {
    match p.target {
        HardTarget::NotColourable => e.iter().all(|&v| state[v] == state[e[0]]),
        HardTarget::NotExact => e.iter().filter(|&&v| state[v] == 1).count() != p.k - 1,
    }
}

fn draw_violated(p: &HardSearch, state: &[usize], classes: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vertex>> {
    let mut edge: Vec<Vertex> = match p.target {
        HardTarget::NotColourable => {
            let class = rng.gen_range(0..classes);
            let members: Vec<Vertex> = (0..p.n).filter(|&v| state[v] == class).collect();
            if members.len() < p.k {
                return None;
            }
            members.choose_multiple(rng, p.k).copied().collect()
        }
        HardTarget::NotExact => {
            let all: Vec<Vertex> = (0..p.n).collect();
            let e: Vec<Vertex> = all.choose_multiple(rng, p.k).copied().collect();
            if !violated(p, state, &e) {
                return None;
            }
            e
        }
    };
    edge.sort_unstable();
    Some(edge)
}

/// Keeps the solver's values on covered vertices and randomises the rest,
/// so uncovered vertices keep landing in every class.
fn scatter(mut c: Vec<usize>, classes: usize, a: &Attempt, rng: &mut ChaCha8Rng) -> Vec<usize> {
    for (v, col) in c.iter_mut().enumerate() {
        if a.inc[v].is_empty() {
            *col = rng.gen_range(0..classes);
        }
    }
    c
}

struct Attempt {
    edges: Vec<Vec<Vertex>>,
    inc: Vec<Vec<usize>>,
}

impl Attempt {
    fn new(n: usize) -> Self {
        Attempt {
            edges: Vec::new(),
            inc: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, e: Vec<Vertex>) {
        for &v in &e {
            self.inc[v].push(self.edges.len());
        }
        self.edges.push(e);
    }

    fn remove(&mut self, i: usize) {
        self.edges.swap_remove(i);
        self.inc.iter_mut().for_each(|l| l.clear());
        for (j, e) in self.edges.iter().enumerate() {
            for &v in e {
                self.inc[v].push(j);
            }
        }
    }

    fn to_hypergraph(&self, k: usize) -> Hypergraph {
        Hypergraph::new(self.inc.len(), k, self.edges.clone()).expect("distinct edges")
    }

    /// A new edge closes a cycle of length `L + 1` for every path of `L`
    /// edges between two of its vertices, so it keeps girth `>= g` iff no
    /// two of its vertices are joined by a path of at most `g - 2` edges.
    fn can_add(&self, e: &[Vertex], g: usize) -> bool {
        if self.edges.iter().any(|f| f == e) {
            return false;
        }
        if g <= 2 {
            return true;
        }
        let limit = g - 2;
        let n = self.inc.len();
        let mut dist = vec![usize::MAX; n];
        for (i, &source) in e.iter().enumerate() {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[source] = 0;
            let mut queue = VecDeque::from([source]);
            while let Some(x) = queue.pop_front() {
                if dist[x] == limit {
                    continue;
                }
                for &f in &self.inc[x] {
                    for &y in &self.edges[f] {
                        if dist[y] == usize::MAX {
                            dist[y] = dist[x] + 1;
                            if e[i + 1..].contains(&y) {
                                return false;
                            }
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_unconstrained() {
        let p = HardSearch::new(7, 3, 2, 2, 1);
        let out = random_hard_hypergraph(&p).unwrap();
        let h = out.hypergraph().expect("a 7-vertex 2-chromatic-breaking instance");
        assert!(colourable(h, 2).is_none());
    }

    #[test]
    fn girth_four_with_certificates() {
        let p = HardSearch::new(30, 3, 4, 2, 7);
        match random_hard_hypergraph(&p).unwrap() {
            HardSearchOutcome::Found { hypergraph, girth: g, .. } => {
                assert!(g.is_none_or(|g| g >= 4));
                assert_eq!(girth(&hypergraph), g);
                assert!(colourable(&hypergraph, 2).is_none());
            }
            HardSearchOutcome::BudgetExhausted { draws, .. } => assert!(draws >= p.budget),
        }
    }

    #[test]
    fn deterministic() {
        let p = HardSearch::new(12, 3, 3, 2, 99);
        assert_eq!(random_hard_hypergraph(&p).unwrap(), random_hard_hypergraph(&p).unwrap());
    }

    #[test]
    fn not_exact_small() {
        let p = HardSearch {
            target: HardTarget::NotExact,
            ..HardSearch::new(9, 3, 2, 2, 5)
        };
        let h = random_hard_hypergraph(&p).unwrap().hypergraph().cloned().expect("an instance");
        assert!(!solve_exact(&h).is_satisfiable());
    }

    #[test]
    fn tiny_budget_reports_exhaustion() {
        let mut p = HardSearch::new(40, 3, 5, 3, 3);
        p.budget = 10;
        assert!(matches!(
            random_hard_hypergraph(&p).unwrap(),
            HardSearchOutcome::BudgetExhausted { draws: 10, .. }
        ));
    }
}
