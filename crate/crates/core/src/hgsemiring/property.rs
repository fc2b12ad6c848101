//! Cyclic elements and the triple properties.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{girth, solve_exact, ExactOutcome, Hypergraph};
use crate::semiring::laws::{element_index_period, index_period};
use crate::semiring::{order_profile, Elem, FiniteSemiring};

/// `g` is cyclic when `g^n = g` for some `n >= 2`.
pub fn cyclicity_profile(s: &FiniteSemiring) -> Vec<bool> {
    s.elements().map(|x| element_index_period(s, x).0 == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealCheck {
    pub noncyclic: Vec<Elem>,
    pub holds: bool,
    /// `(x, y)` with `x <= y`, `y` noncyclic and `x` cyclic.
    pub violation: Option<(Elem, Elem)>,
}

/// Whether the noncyclic elements are closed downwards in the order.
pub fn noncyclic_order_ideal(s: &FiniteSemiring) -> IdealCheck {
    let cyclic = cyclicity_profile(s);
    let noncyclic: Vec<Elem> = s.elements().filter(|&x| !cyclic[x]).collect();
    let violation = noncyclic
        .iter()
        .flat_map(|&y| s.elements().map(move |x| (x, y)))
        .find(|&(x, y)| cyclic[x] && s.leq(x, y));
    IdealCheck {
        noncyclic,
        holds: violation.is_none(),
        violation,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TripleMode {
    OneInThree,
    TwoInThree,
}

impl TripleMode {
    fn count(self) -> usize {
        match self {
            TripleMode::OneInThree => 1,
            TripleMode::TwoInThree => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TripleMode::OneInThree => "1-in-3",
            TripleMode::TwoInThree => "2-in-3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointOutcome {
    /// `d` works for all `triples` qualifying triples.
    Witnessed { d: Elem, triples: usize },
    /// No triple has all its permuted products below `c`.
    Vacuous,
    /// For every candidate `d`, a qualifying triple where `d` occurs the
    /// wrong number of times.
    Fails { refutations: Vec<(Elem, [Elem; 3])> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointVerdict {
    pub c: Elem,
    pub outcome: PointOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub property: String,
    pub holds: bool,
    /// One entry per noncyclic element, in carrier order.
    pub points: Vec<PointVerdict>,
}

impl PropertyVerdict {
    pub fn describe(&self, s: &FiniteSemiring) -> Vec<String> {
        self.points
            .iter()
            .map(|p| {
                let c = s.name(p.c);
                match &p.outcome {
                    PointOutcome::Witnessed { d, .. } => format!("c={c}, d={}", s.name(*d)),
                    PointOutcome::Vacuous => format!("c={c}: vacuous"),
                    PointOutcome::Fails { .. } => format!("c={c}: no d works"),
                }
            })
            .collect()
    }
}

/// At each noncyclic `c`, looks for `d` such that every triple whose six
/// permuted products are `<= c` contains `d` exactly once (or twice). The
/// first such `d` in carrier order is reported.
pub fn one_in_three_property(s: &FiniteSemiring, mode: TripleMode) -> PropertyVerdict {
    let n = s.len();
    let order = order_profile(s);
    let cyclic = cyclicity_profile(s);
    let mut points = Vec::new();
    for c in s.elements().filter(|&c| !cyclic[c]) {
        let below = |x: Elem| order.leq(x, c);
        let mut triples: Vec<[Elem; 3]> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let (xy, yx) = (s.mul(x, y), s.mul(y, x));
                for z in 0..n {
                    let qualifies = below(s.mul(xy, z))
                        && below(s.mul(yx, z))
                        && below(s.mul(z, xy))
                        && below(s.mul(z, yx))
                        && below(s.mul(s.mul(x, z), y))
                        && below(s.mul(s.mul(y, z), x));
                    if qualifies {
                        triples.push([x, y, z]);
                    }
                }
            }
        }
        let hits = |d: Elem, t: &[Elem; 3]| t.iter().filter(|&&v| v == d).count();
        let outcome = if triples.is_empty() {
            PointOutcome::Vacuous
        } else {
            let good = s
                .elements()
                .find(|&d| triples.iter().all(|t| hits(d, t) == mode.count()));
            match good {
                Some(d) => PointOutcome::Witnessed {
                    d,
                    triples: triples.len(),
                },
                None => PointOutcome::Fails {
                    refutations: s
                        .elements()
                        .map(|d| {
                            let t = triples.iter().find(|t| hits(d, t) != mode.count()).expect("d fails");
                            (d, *t)
                        })
                        .collect(),
                },
            }
        };
        points.push(PointVerdict { c, outcome });
    }
    PropertyVerdict {
        property: mode.label().to_string(),
        holds: points.iter().all(|p| !matches!(p.outcome, PointOutcome::Fails { .. })),
        points,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum H23Verdict {
    /// Names of the hypotheses that `S` fails.
    HypothesesFail { failed: Vec<String> },
    /// No `2`-in-`3` satisfaction exists, so `S_H` is not in the variety.
    NotInVariety { property: String, search_nodes: u64 },
    /// `H` is satisfiable and nothing follows.
    Inconclusive { satisfaction: Vec<bool> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H23Report {
    pub index_period: (usize, usize),
    pub one_in_three: PropertyVerdict,
    pub two_in_three: PropertyVerdict,
    pub noncyclic_ideal: IdealCheck,
    pub verdict: H23Verdict,
}

/// For a 3-uniform `H` of girth at least 5: if `S` has the 1-in-3 or the
/// 2-in-3 property and its noncyclic elements form an order ideal, then
/// `S_H` in the variety of `S` forces a 2-in-3 satisfaction of `H`. Checks
/// the hypotheses, then searches for the satisfaction.
pub fn h23_verdict(s: &FiniteSemiring, h: &Hypergraph) -> Result<H23Report> {
    if h.uniformity() != 3 {
        return Err(Error::precondition("the hypergraph must be 3-uniform"));
    }
    if let Some(g) = girth(h).filter(|&g| g < 5) {
        return Err(Error::precondition(format!("girth {g} is below 5")));
    }
    let one_in_three = one_in_three_property(s, TripleMode::OneInThree);
    let two_in_three = one_in_three_property(s, TripleMode::TwoInThree);
    let noncyclic_ideal = noncyclic_order_ideal(s);
    let mut failed = Vec::new();
    if !one_in_three.holds && !two_in_three.holds {
        failed.push("1-in-3 or 2-in-3 property".to_string());
    }
    if !noncyclic_ideal.holds {
        failed.push("noncyclic elements form an order ideal".to_string());
    }
    let verdict = if !failed.is_empty() {
        H23Verdict::HypothesesFail { failed }
    } else {
        let property = if one_in_three.holds { "1-in-3" } else { "2-in-3" }.to_string();
        match solve_exact(h) {
            ExactOutcome::Satisfiable(satisfaction) => H23Verdict::Inconclusive { satisfaction },
            ExactOutcome::Unsatisfiable { nodes } => H23Verdict::NotInVariety {
                property,
                search_nodes: nodes,
            },
        }
    };
    Ok(H23Report {
        index_period: index_period(s),
        one_in_three,
        two_in_three,
        noncyclic_ideal,
        verdict,
    })
}
