//! Uniform hypergraphs: girth, hyperforests, links, exact satisfaction and
//! colouring.

mod random;
mod solve;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use random::{random_hard_hypergraph, HardSearch, HardSearchOutcome, HardTarget};
pub use solve::{
    all_exact, colourable, count_exact, robust2_check, solve_exact, solve_exact_pinned, ExactOutcome,
    RobustVerdict,
};

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    /// Each edge sorted; edges in insertion order.
    edges: Vec<Vec<Vertex>>,
}

impl Hypergraph {
    /// Checks that every edge has `k` distinct vertices below `n` and that
    /// no edge repeats.
    pub fn new(n: usize, k: usize, edges: Vec<Vec<Vertex>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::structure("edges must have at least one vertex"));
        }
        let mut seen = BTreeSet::new();
        let mut sorted = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            if e.len() != k {
                return Err(Error::structure(format!("edge {i} has {} vertices, expected {k}", e.len())));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::structure(format!("edge {i} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::structure(format!("edge {i} has vertex {v}, but there are only {n}")));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::structure(format!("edge {i} is a repeat")));
            }
            sorted.push(e);
        }
        Ok(Hypergraph { n, k, edges: sorted })
    }

    /// The hypergraph with one edge on vertices `0..k`.
    pub fn single_edge(k: usize) -> Self {
        Hypergraph::new(k, k, vec![(0..k).collect()]).expect("one edge")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge indices at each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        let inc = self.incidence();
        (0..self.n).filter(|&v| inc[v].is_empty()).collect()
    }

    /// Whether `set` lies inside some edge.
    pub fn is_subhyperedge(&self, set: &[Vertex]) -> bool {
        self.edges.iter().any(|e| set.iter().all(|v| e.binary_search(v).is_ok()))
    }

    /// The edge containing `set`, if exactly one does.
    pub fn unique_edge_containing(&self, set: &[Vertex]) -> Option<usize> {
        let mut hits = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| set.iter().all(|v| e.binary_search(v).is_ok()));
        match (hits.next(), hits.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    /// Edges inside `vertices`, renumbered in the order given.
    pub fn induced(&self, vertices: &[Vertex]) -> Hypergraph {
        let mut position = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| position[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| position[v]).collect())
            .collect();
        Hypergraph::new(vertices.len(), self.k, edges).expect("induced edges are valid")
    }

    /// A copy with one more edge, or an error if it is invalid or present.
    pub fn with_edge(&self, edge: Vec<Vertex>) -> Result<Hypergraph> {
        let mut edges = self.edges.clone();
        edges.push(edge);
        Hypergraph::new(self.n, self.k, edges)
    }

    /// Header `k n m`, then one edge per line. `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty());
        let numbers = |line: usize, l: &str| -> Result<Vec<usize>> {
            let mut out = Vec::new();
            let mut offset = 0;
            for tok in l.split_whitespace() {
                offset = l[offset..].find(tok).expect("token") + offset;
                out.push(
                    tok.parse()
                        .map_err(|_| Error::parse(line, offset, format!("expected a number, found {tok:?}")))?,
                );
                offset += tok.len();
            }
            Ok(out)
        };
        let (line, header) = lines.next().ok_or_else(|| Error::parse(1, 0, "missing header \"k n m\""))?;
        let header = numbers(line, header)?;
        let [k, n, m] = header[..] else {
            return Err(Error::parse(line, 0, "header must be \"k n m\""));
        };
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let e = numbers(line, l)?;
            if e.len() != k {
                return Err(Error::parse(line, 0, format!("edge has {} vertices, expected {k}", e.len())));
            }
            edges.push(e);
        }
        if edges.len() != m {
            return Err(Error::parse(
                text.lines().count().max(1),
                0,
                format!("header announces {m} edges but {} follow", edges.len()),
            ));
        }
        Hypergraph::new(n, k, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.k, self.n, self.edges.len());
        for e in &self.edges {
            let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl std::str::FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Hypergraph::from_text(s)
    }
}

/// Number of edges in a shortest cycle, `None` for a hyperforest.
///
/// A cycle alternates distinct vertices and distinct edges, each vertex
/// lying in the edges before and after it, and has at least two edges. These
/// are exactly the cycles of the vertex-edge incidence graph, halved.
pub fn girth(h: &Hypergraph) -> Option<usize> {
    let n = h.n;
    // Incidence graph: vertices 0..n, edges n..n+m.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + h.edges.len()];
    for (i, e) in h.edges.iter().enumerate() {
        for &v in e {
            adj[v].push(n + i);
            adj[n + i].push(v);
        }
    }
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for source in 0..adj.len() {
        if adj[source].is_empty() {
            continue;
        }
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[source] = 0;
        parent[source] = usize::MAX;
        queue.clear();
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 >= best {
                break;
            }
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best / 2)
}

/// Whether repeatedly removing leaves (edges meeting the remaining edges in
/// at most one vertex) removes every edge.
pub fn is_hyperforest(h: &Hypergraph) -> bool {
    let mut alive = vec![true; h.edges.len()];
    let mut degree = vec![0usize; h.n];
    for e in &h.edges {
        for &v in e {
            degree[v] += 1;
        }
    }
    let mut left = h.edges.len();
    loop {
        let leaf = (0..h.edges.len()).find(|&i| alive[i] && h.edges[i].iter().filter(|&&v| degree[v] > 1).count() <= 1);
        match leaf {
            Some(i) => {
                alive[i] = false;
                left -= 1;
                for &v in &h.edges[i] {
                    degree[v] -= 1;
                }
            }
            None => return left == 0,
        }
    }
}

/// The `(k-1)`-subhyperedges grouped into link classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkPartition {
    /// All `(k-1)`-subhyperedges, sorted.
    pub sets: Vec<Vec<Vertex>>,
    /// `class_of[i]` is the class of `sets[i]`.
    pub class_of: Vec<usize>,
    /// Members of each class, as indices into `sets`; classes ordered by
    /// their first member.
    pub classes: Vec<Vec<usize>>,
    /// The vertex completing every member of each class to an edge.
    pub completing: Vec<Vertex>,
}

impl LinkPartition {
    pub fn class_of_set(&self, set: &[Vertex]) -> Option<usize> {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.sets.binary_search(&s).ok().map(|i| self.class_of[i])
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut x = x;
    while parent[x] != root {
        let next = parent[x];
        parent[x] = root;
        x = next;
    }
    root
}

/// Union-find over the link relation, then a check that each class is a
/// clique with a single completing vertex.
pub fn link_partition(h: &Hypergraph) -> Result<LinkPartition> {
    if h.k < 2 {
        return Err(Error::precondition("link classes need edges of size at least 2"));
    }
    if let Some(g) = girth(h).filter(|&g| g < 4) {
        return Err(Error::precondition(format!("girth {g} is below 4")));
    }
    let mut sets: Vec<Vec<Vertex>> = Vec::new();
    for e in &h.edges {
        for skip in 0..h.k {
            let mut s = e.clone();
            s.remove(skip);
            sets.push(s);
        }
    }
    sets.sort();
    sets.dedup();
    let index = |s: &[Vertex]| sets.binary_search_by(|t| t.as_slice().cmp(s)).expect("listed");

    // Completions of each set: the vertices w with set + w an edge.
    let mut completions: Vec<Vec<Vertex>> = vec![Vec::new(); sets.len()];
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); h.n];
    for e in &h.edges {
        for (skip, &w) in e.iter().enumerate() {
            let mut s = e.clone();
            s.remove(skip);
            let i = index(&s);
            completions[i].push(w);
            by_vertex[w].push(i);
        }
    }
    let mut parent: Vec<usize> = (0..sets.len()).collect();
    for members in &by_vertex {
        for pair in members.windows(2) {
            let (a, b) = (find(&mut parent, pair[0]), find(&mut parent, pair[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut class_of = vec![usize::MAX; sets.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = vec![usize::MAX; sets.len()];
    for i in 0..sets.len() {
        let r = find(&mut parent, i);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(Vec::new());
        }
        class_of[i] = root_class[r];
        classes[root_class[r]].push(i);
    }
    let mut completing = Vec::with_capacity(classes.len());
    for members in &classes {
        let shared: BTreeSet<Vertex> = members
            .iter()
            .map(|&i| completions[i].iter().copied().collect::<BTreeSet<_>>())
            .reduce(|a, b| a.intersection(&b).copied().collect())
            .expect("nonempty class");
        match shared.iter().next() {
            Some(&w) if shared.len() == 1 => completing.push(w),
            _ => {
                return Err(Error::structure(format!(
                    "link class of {:?} is not a clique",
                    sets[members[0]]
                )))
            }
        }
    }
    Ok(LinkPartition {
        sets,
        class_of,
        classes,
        completing,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GPlus {
    /// `V_G` together with every edge meeting it in two or more vertices,
    /// sorted.
    pub vertices: Vec<Vertex>,
    /// Induced on `vertices`, numbered in that order.
    pub induced: Hypergraph,
    /// `k * C(|V_G|, 2) + |V_G|`.
    pub bound: usize,
}

impl GPlus {
    pub fn within_bound(&self) -> bool {
        self.vertices.len() <= self.bound
    }
}

pub fn gplus_closure(h: &Hypergraph, vg: &[Vertex]) -> Result<GPlus> {
    let mut inside = vec![false; h.n];
    for &v in vg {
        if v >= h.n {
            return Err(Error::precondition(format!("vertex {v} out of range")));
        }
        inside[v] = true;
    }
    let mut all: BTreeSet<Vertex> = vg.iter().copied().collect();
    let g = all.len();
    for e in &h.edges {
        if e.iter().filter(|&&v| inside[v]).count() >= 2 {
            all.extend(e.iter().copied());
        }
    }
    let vertices: Vec<Vertex> = all.into_iter().collect();
    Ok(GPlus {
        induced: h.induced(&vertices),
        vertices,
        bound: h.k * g * g.saturating_sub(1) / 2 + g,
    })
}
