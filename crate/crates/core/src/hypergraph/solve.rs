use serde::{Deserialize, Serialize};

use super::{Hypergraph, Vertex};

/// Result of a `(k-1)`-in-`k` search. `true` is the value 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactOutcome {
    Satisfiable(Vec<bool>),
    /// The whole search tree was explored without a solution.
    Unsatisfiable { nodes: u64 },
}

impl ExactOutcome {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, ExactOutcome::Satisfiable(_))
    }

    pub fn assignment(&self) -> Option<&[bool]> {
        match self {
            ExactOutcome::Satisfiable(a) => Some(a),
            ExactOutcome::Unsatisfiable { .. } => None,
        }
    }
}

const FREE: u8 = 2;

/// Backtracking over "which vertex of this edge is the 0", with unit
/// propagation: a 0 forces 1 on every edge-mate, and an edge whose other
/// vertices are all 1 forces 0 on the last.
struct Exact<'a> {
    h: &'a Hypergraph,
    inc: Vec<Vec<usize>>,
    value: Vec<u8>,
    trail: Vec<Vertex>,
    nodes: u64,
}

impl<'a> Exact<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        Exact {
            h,
            inc: h.incidence(),
            value: vec![FREE; h.n],
            trail: Vec::new(),
            nodes: 0,
        }
    }

    fn set(&mut self, v: Vertex, b: u8, queue: &mut Vec<Vertex>) -> bool {
        match self.value[v] {
            FREE => {
                self.value[v] = b;
                self.trail.push(v);
                queue.push(v);
                true
            }
            x => x == b,
        }
    }

    fn propagate(&mut self, mut queue: Vec<Vertex>) -> bool {
        while let Some(v) = queue.pop() {
            for ei in 0..self.inc[v].len() {
                let e = self.inc[v][ei];
                let edge = &self.h.edges[e];
                let mut zeros = 0;
                let mut free = 0;
                let mut last_free = 0;
                for &u in edge {
                    match self.value[u] {
                        0 => zeros += 1,
                        FREE => {
                            free += 1;
                            last_free = u;
                        }
                        _ => {}
                    }
                }
                if zeros > 1 || (zeros == 0 && free == 0) {
                    return false;
                }
                if zeros == 1 && free > 0 {
                    let edge = edge.clone();
                    for u in edge {
                        if self.value[u] == FREE && !self.set(u, 1, &mut queue) {
                            return false;
                        }
                    }
                } else if zeros == 0 && free == 1 && !self.set(last_free, 0, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail");
            self.value[v] = FREE;
        }
    }

    /// Edge with no 0 yet and the fewest free vertices.
    fn branch_edge(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (i, e) in self.h.edges.iter().enumerate() {
            if e.iter().any(|&u| self.value[u] == 0) {
                continue;
            }
            let free = e.iter().filter(|&&u| self.value[u] == FREE).count();
            if best.is_none_or(|(_, f)| free < f) {
                best = Some((i, free));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Calls `visit` on each solution of the edge constraints (vertices in
    /// no edge stay free); stops when it returns false.
    fn search(&mut self, visit: &mut dyn FnMut(&[u8]) -> bool) -> bool {
        self.nodes += 1;
        let Some(e) = self.branch_edge() else {
            return visit(&self.value);
        };
        let candidates: Vec<Vertex> = self.h.edges[e]
            .iter()
            .copied()
            .filter(|&u| self.value[u] == FREE)
            .collect();
        for zero in candidates {
            let mark = self.trail.len();
            let mut queue = Vec::new();
            let ok = self.set(zero, 0, &mut queue) && self.propagate(queue);
            if ok && !self.search(visit) {
                self.undo(mark);
                return false;
            }
            self.undo(mark);
        }
        true
    }

    fn pin(&mut self, pins: &[(Vertex, bool)]) -> bool {
        let mut queue = Vec::new();
        for &(v, b) in pins {
            if !self.set(v, b as u8, &mut queue) {
                return false;
            }
        }
        // Edges with every vertex pinned never enter the queue loop twice,
        // so check all of them once.
        let all: Vec<Vertex> = (0..self.h.n).filter(|&v| self.value[v] != FREE).collect();
        queue.extend(all);
        self.propagate(queue)
    }
}

/// A `(k-1)`-in-`k` satisfaction extending `pins`, or proof by exhaustion
/// that none exists. Vertices in no edge get 1 unless pinned.
pub fn solve_exact_pinned(h: &Hypergraph, pins: &[(Vertex, bool)]) -> ExactOutcome {
    let mut s = Exact::new(h);
    if !s.pin(pins) {
        return ExactOutcome::Unsatisfiable { nodes: 1 };
    }
    let mut found = None;
    s.search(&mut |value| {
        found = Some(value.iter().map(|&x| x != 0).collect());
        false
    });
    match found {
        Some(a) => ExactOutcome::Satisfiable(a),
        None => ExactOutcome::Unsatisfiable { nodes: s.nodes },
    }
}

pub fn solve_exact(h: &Hypergraph) -> ExactOutcome {
    solve_exact_pinned(h, &[])
}

/// Number of satisfactions over all `n` vertices.
pub fn count_exact(h: &Hypergraph) -> u128 {
    let mut s = Exact::new(h);
    let mut total = 0u128;
    s.search(&mut |value| {
        let free = value.iter().filter(|&&x| x == FREE).count() as u32;
        total += 1u128 << free;
        true
    });
    total
}

/// Every satisfaction, in search order; `None` if there are more than
/// `limit`.
pub fn all_exact(h: &Hypergraph, limit: usize) -> Option<Vec<Vec<bool>>> {
    let mut s = Exact::new(h);
    let mut out: Vec<Vec<bool>> = Vec::new();
    let mut over = false;
    s.search(&mut |value| {
        let free: Vec<usize> = (0..value.len()).filter(|&v| value[v] == FREE).collect();
        if free.len() >= 64 || out.len() + (1usize << free.len()) > limit {
            over = true;
            return false;
        }
        for bits in 0..1u64 << free.len() {
            let mut a: Vec<bool> = value.iter().map(|&x| x != 0).collect();
            for (i, &v) in free.iter().enumerate() {
                a[v] = bits >> i & 1 == 1;
            }
            out.push(a);
        }
        true
    });
    (!over).then_some(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustVerdict {
    pub robust: bool,
    /// The first valid partial satisfaction that does not extend.
    pub failure: Option<Vec<(Vertex, bool)>>,
    /// Partial satisfactions tried.
    pub checked: usize,
}

/// Tries every valid partial satisfaction of at most two vertices: the empty
/// one, each vertex at 0 and at 1, and each pair at (1,1), (0,1), (1,0), and
/// (0,0) when the pair lies in no edge.
pub fn robust2_check(h: &Hypergraph) -> RobustVerdict {
    let mut partials: Vec<Vec<(Vertex, bool)>> = vec![vec![]];
    for v in 0..h.n {
        partials.push(vec![(v, false)]);
        partials.push(vec![(v, true)]);
    }
    for x in 0..h.n {
        for y in x + 1..h.n {
            for (a, b) in [(true, true), (false, true), (true, false)] {
                partials.push(vec![(x, a), (y, b)]);
            }
            if !h.is_subhyperedge(&[x, y]) {
                partials.push(vec![(x, false), (y, false)]);
            }
        }
    }
    // One solution covers many partials; only search for the ones no known
    // solution already extends.
    let mut known: Vec<Vec<bool>> = Vec::new();
    let checked = partials.len();
    for p in partials {
        if known.iter().any(|s| p.iter().all(|&(v, b)| s[v] == b)) {
            continue;
        }
        match solve_exact_pinned(h, &p) {
            ExactOutcome::Satisfiable(s) => known.push(s),
            ExactOutcome::Unsatisfiable { .. } => {
                return RobustVerdict {
                    robust: false,
                    failure: Some(p),
                    checked,
                }
            }
        }
    }
    RobustVerdict {
        robust: true,
        failure: None,
        checked,
    }
}

/// A colouring with `l` colours and no monochromatic edge, or `None`.
///
/// Backtracking over vertex domains: once all but one vertex of an edge
/// carry the same colour, the last loses that colour. Branches on a vertex
/// with the fewest remaining colours, and only ever opens one new colour.
pub fn colourable(h: &Hypergraph, l: usize) -> Option<Vec<usize>> {
    assert!((1..=64).contains(&l), "between 1 and 64 colours");
    if h.k == 1 && h.edge_count() > 0 {
        return None;
    }
    let full: u64 = if l == 64 { u64::MAX } else { (1 << l) - 1 };
    let mut c = Colour {
        h,
        inc: h.incidence(),
        domain: vec![full; h.n],
        colour: vec![usize::MAX; h.n],
        trail: Vec::new(),
    };
    if c.search(0) {
        Some(c.colour.iter().map(|&x| if x == usize::MAX { 0 } else { x }).collect())
    } else {
        None
    }
}

struct Colour<'a> {
    h: &'a Hypergraph,
    inc: Vec<Vec<usize>>,
    domain: Vec<u64>,
    colour: Vec<usize>,
    /// (vertex, previous domain, was assigned)
    trail: Vec<(Vertex, u64, bool)>,
}

impl Colour<'_> {
    fn assign(&mut self, v: Vertex, col: usize) -> bool {
        let mut queue = vec![(v, col)];
        while let Some((v, col)) = queue.pop() {
            if self.colour[v] != usize::MAX {
                if self.colour[v] != col {
                    return false;
                }
                continue;
            }
            if self.domain[v] >> col & 1 == 0 {
                return false;
            }
            self.trail.push((v, self.domain[v], true));
            self.colour[v] = col;
            self.domain[v] = 1 << col;
            for &e in &self.inc[v] {
                let edge = &self.h.edges[e];
                let mut free = None;
                let mut free_count = 0;
                let mut mono = true;
                for &u in edge {
                    match self.colour[u] {
                        usize::MAX => {
                            free_count += 1;
                            free = Some(u);
                        }
                        x => mono &= x == col,
                    }
                }
                if !mono {
                    continue;
                }
                match (free_count, free) {
                    (0, _) => return false,
                    (1, Some(u)) => {
                        let d = self.domain[u] & !(1 << col);
                        if d != self.domain[u] {
                            self.trail.push((u, self.domain[u], false));
                            self.domain[u] = d;
                        }
                        match d.count_ones() {
                            0 => return false,
                            1 => queue.push((u, d.trailing_zeros() as usize)),
                            _ => {}
                        }
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, d, assigned) = self.trail.pop().expect("trail");
            self.domain[v] = d;
            if assigned {
                self.colour[v] = usize::MAX;
            }
        }
    }

    fn search(&mut self, used: usize) -> bool {
        let mut pick: Option<(Vertex, u32, usize)> = None;
        for v in 0..self.h.n {
            if self.colour[v] != usize::MAX || self.inc[v].is_empty() {
                continue;
            }
            let size = self.domain[v].count_ones();
            let degree = self.inc[v].len();
            if pick.is_none_or(|(_, s, d)| size < s || (size == s && degree > d)) {
                pick = Some((v, size, degree));
            }
        }
        let Some((v, _, _)) = pick else {
            return true;
        };
        let colours = self.domain[v];
        for col in 0..64 {
            if colours >> col & 1 == 0 {
                continue;
            }
            // Colours above `used` are interchangeable; try only the first.
            if col > used {
                break;
            }
            let mark = self.trail.len();
            if self.assign(v, col) && self.search(used.max(col + 1)) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}
