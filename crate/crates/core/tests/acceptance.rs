//! Acceptance criteria, one line each. Run with
//! `cargo test -p aisemiring --test acceptance`.
//!
//! Every check below recomputes its expected values by brute force in this
//! file, or compares against values stated in the source paper.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use aisemiring::group::{extract_flat_group, heisenberg27, nonabelian_nilpotent_witness, FiniteGroup};
use aisemiring::hgsemiring::{
    build_hypergraph_semiring, forest_power_witness, noncyclic_order_ideal, one_in_three_property,
    robust_power_witness, sinm_construction, sins_construction, PointOutcome, RobustBase, TripleMode,
};
use aisemiring::hypergraph::{
    colourable, count_exact, girth, gplus_closure, is_hyperforest, link_partition, robust2_check, solve_exact,
    ExactOutcome, Hypergraph,
};
use aisemiring::semigroup::{flat_completion, FiniteSemigroup, SemigroupWithZero};
use aisemiring::semiring::laws::index_period;
use aisemiring::semiring::{
    hom_from_generators, verify_canonical_map, verify_semiring_axioms, word_semiring, WordSpec, WordVariant,
};
use aisemiring::term::{
    exact_cover_term, holds_identity, identity_separation_search, m2_decide, s7_decide, Identity, SearchBounds,
    SearchOutcome, Symbol,
};
use aisemiring::{fixtures, Caps, Elem, FiniteSemiring, WitnessReport};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "fixture soundness", budget: secs(5), run: fixture_soundness },
        Criterion { id: 2, name: "S7 and M2 decision procedures", budget: secs(60), run: decision_equivalence },
        Criterion { id: 3, name: "exact hitting sets and t = t^2", budget: secs(60), run: hitting_sets },
        Criterion { id: 4, name: "0-cancellativity and flat completion", budget: secs(30), run: zero_cancellative },
        Criterion { id: 5, name: "separating identities", budget: secs(60), run: separation },
        Criterion { id: 6, name: "hypergraph solvers", budget: secs(120), run: solvers },
        Criterion { id: 7, name: "girth-4 hypergraph properties", budget: secs(120), run: girth_four_properties },
        Criterion { id: 8, name: "witness constructions", budget: secs(60), run: witnesses },
        Criterion { id: 9, name: "single edge consistency triangle", budget: secs(30), run: triangle },
        Criterion { id: 10, name: "1-in-3 and 2-in-3 verdicts", budget: secs(10), run: property_verdicts },
        Criterion { id: 11, name: "group pipeline", budget: secs(120), run: group_pipeline },
        Criterion { id: 12, name: "G+ closure", budget: secs(120), run: gplus },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.contains(f.as_str()) || c.id.to_string() == *f) {
            continue;
        }
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let (mark, detail) = match result {
            Ok(d) if took <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("over budget; {d}")),
            Err(e) => ("FAIL", e),
        };
        if mark == "FAIL" {
            failed += 1;
        }
        println!(
            "[{mark}] {:>2} {} ({:.2}s of {}s): {detail}",
            c.id,
            c.name,
            took.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

// ---------------------------------------------------------------- 1

/// `B_2^1` as partial injections of `{0, 1}`: a map is a pair of optional
/// images, product is composition (left first), and sum is intersection of
/// graphs.
fn b21_oracle() -> FiniteSemiring {
    type P = [Option<u8>; 2];
    let maps: [(&str, P); 6] = [
        ("0", [None, None]),
        ("1", [Some(0), Some(1)]),
        ("a", [Some(1), None]),
        ("b", [None, Some(0)]),
        ("ab", [Some(0), None]),
        ("ba", [None, Some(1)]),
    ];
    let find = |p: P| maps.iter().position(|m| m.1 == p).expect("closed");
    let mul = |x: Elem, y: Elem| {
        let (f, g) = (maps[x].1, maps[y].1);
        find([0, 1].map(|i| f[i].and_then(|j| g[j as usize])))
    };
    let add = |x: Elem, y: Elem| {
        let (f, g) = (maps[x].1, maps[y].1);
        find([0, 1].map(|i| if f[i] == g[i] { f[i] } else { None }))
    };
    let names = maps.iter().map(|m| m.0.to_string()).collect();
    FiniteSemiring::from_fn(names, add, mul).unwrap()
}

/// Some bijection preserving both tables.
fn isomorphic(s: &FiniteSemiring, t: &FiniteSemiring) -> bool {
    fn extend(s: &FiniteSemiring, t: &FiniteSemiring, map: &mut Vec<Elem>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == s.len() {
            return s.elements().all(|x| {
                s.elements().all(|y| {
                    t.mul(map[x], map[y]) == map[s.mul(x, y)] && t.add(map[x], map[y]) == map[s.add(x, y)]
                })
            });
        }
        for j in t.elements() {
            if !used[j] {
                used[j] = true;
                map.push(j);
                if extend(s, t, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    s.len() == t.len() && extend(s, t, &mut Vec::new(), &mut vec![false; t.len()])
}

fn fixture_soundness() -> Outcome {
    let names = ["s7", "b21", "m2", "sc_abb", "s7_zero", "flat_q8", "flat_heisenberg27", "power_q8"];
    for n in names {
        let s = fixtures::semiring(n).unwrap();
        let r = verify_semiring_axioms(&s);
        ensure(r.is_valid(), || format!("{n}: {}", r.describe(&s).join("; ")))?;
    }
    ensure(isomorphic(&fixtures::b21(), &b21_oracle()), || {
        "B21 differs from partial injections under intersection".into()
    })?;
    Ok(format!("{} fixtures verified; B21 matches partial injections", names.len()))
}

// ---------------------------------------------------------------- 2

const VARS: [&str; 4] = ["x", "y", "z", "w"];

fn all_words(vars: usize, max_len: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| VARS[..vars].iter().map(move |v| format!("{w}{v}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn all_terms(vars: usize, max_len: usize, summands: usize) -> Vec<String> {
    assert!(summands <= 2);
    let words = all_words(vars, max_len);
    let mut out: Vec<String> = words.clone();
    if summands == 2 {
        for (i, u) in words.iter().enumerate() {
            for v in &words[i + 1..] {
                out.push(format!("{u} + {v}"));
            }
        }
    }
    out
}

fn random_term(rng: &mut ChaCha8Rng, vars: usize, max_len: usize, summands: usize) -> String {
    let n = rng.gen_range(1..=summands);
    let words: Vec<String> = (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).map(|_| VARS[rng.gen_range(0..vars)]).collect()
        })
        .collect();
    words.join(" + ")
}

fn decision_equivalence() -> Outcome {
    let caps = Caps::default();
    let (s7, m2) = (fixtures::s7(), fixtures::m2());
    let check = |text: &str| -> Result<(), String> {
        let id = Identity::parse(text).map_err(|e| e.to_string())?;
        let truth_s7 = holds_identity(&s7, &id.left, &id.right, &caps).map_err(|e| e.to_string())?.holds();
        let truth_m2 = holds_identity(&m2, &id.left, &id.right, &caps).map_err(|e| e.to_string())?.holds();
        ensure(s7_decide(&id.left, &id.right) == truth_s7, || format!("S7 disagrees on {text}"))?;
        ensure(m2_decide(&id.left, &id.right) == truth_m2, || format!("M2 disagrees on {text}"))
    };
    let terms = all_terms(2, 3, 2);
    for u in &terms {
        for v in &terms {
            check(&format!("{u} = {v}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10_000 {
        let text = format!("{} = {}", random_term(&mut rng, 4, 4, 4), random_term(&mut rng, 4, 4, 4));
        check(&text)?;
    }
    Ok(format!(
        "0 disagreements over {} exhaustive and 10000 random identities",
        terms.len() * terms.len()
    ))
}

// ---------------------------------------------------------------- 3

fn hitting_sets() -> Outcome {
    let caps = Caps::default();
    let s7 = fixtures::s7();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut with, mut literal_disagreements) = (0, 0);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=4);
        let sets: Vec<u32> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..(1u32 << n))).collect();
        let family: Vec<BTreeSet<Symbol>> = sets
            .iter()
            .map(|&m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| Symbol::letter(VARS[i].chars().next().unwrap())).collect())
            .collect();
        let exact = (0..1u32 << n).any(|y| sets.iter().all(|&s| (s & y).count_ones() == 1));
        let t = exact_cover_term(&family).map_err(|e| e.to_string())?;
        let holds = holds_identity(&s7, &t, &t.mul(&t), &caps).map_err(|e| e.to_string())?.holds();
        // An assignment sending Y to a and the rest to 1 makes t equal to a
        // exactly when Y meets every member once; a is the only element
        // with a^2 != a. So the identity fails iff such a Y exists.
        ensure(holds != exact, || format!("family {sets:?} on {n} variables: holds={holds}, exact={exact}"))?;
        with += usize::from(exact);
        literal_disagreements += usize::from(holds != exact);
    }
    Ok(format!(
        "t = t^2 fails exactly when an exact hitting set exists, 1000 families ({with} with one); \
         the literal 'holds iff exists' reading disagrees on all {literal_disagreements}"
    ))
}

// ---------------------------------------------------------------- 4

fn zero_cancellative() -> Outcome {
    let names: Vec<String> = ["p", "q", "r"].iter().map(|s| s.to_string()).collect();
    let (mut tables, mut completed) = (0, 0);
    for code in 0..3usize.pow(9) {
        let mul: Vec<Vec<Elem>> = (0..3).map(|x| (0..3).map(|y| code / 3usize.pow(3 * x + y as u32) % 3).collect()).collect();
        let m = |x: Elem, y: Elem| mul[x][y];
        let associative = (0..3).all(|x| (0..3).all(|y| (0..3).all(|z| m(m(x, y), z) == m(x, m(y, z)))));
        if !associative {
            continue;
        }
        let Some(zero) = (0..3).find(|&z| (0..3).all(|x| m(z, x) == z && m(x, z) == z)) else {
            continue;
        };
        tables += 1;
        let left = (0..3).all(|x| (0..3).all(|y| (0..3).all(|z| m(x, y) != m(x, z) || m(x, y) == zero || y == z)));
        let right = (0..3).all(|x| (0..3).all(|y| (0..3).all(|z| m(y, x) != m(z, x) || m(y, x) == zero || y == z)));
        let t = SemigroupWithZero::new(FiniteSemigroup::new(names.clone(), mul.clone()).unwrap(), zero).unwrap();
        let result = flat_completion(&t);
        ensure(result.is_ok() == (left && right), || format!("table {mul:?}, zero {zero}"))?;
        if let Ok(s) = result {
            ensure(verify_semiring_axioms(&s).is_valid(), || format!("completion of {mul:?} is not a semiring"))?;
            completed += 1;
        }
    }
    Ok(format!("0 disagreements over {tables} associative tables with zero ({completed} complete)"))
}

// ---------------------------------------------------------------- 5

fn separation() -> Outcome {
    let caps = Caps::default();
    let (s7, sc) = (fixtures::s7(), fixtures::sc_abb());
    let bounds = SearchBounds { vars: 8, length: 4, summands: 2, linear: false };
    let start = Instant::now();
    let SearchOutcome::Found { identity, .. } =
        identity_separation_search(&s7, &sc, &bounds, &caps).map_err(|e| e.to_string())?
    else {
        return Err("nothing separates S7 from Sc(abb)".into());
    };
    let first = start.elapsed();
    ensure(identity == Identity::parse("xx = xxx").unwrap(), || format!("found {identity}"))?;
    ensure(first < secs(30), || format!("S7 side took {first:?}"))?;

    let start = Instant::now();
    let bounds = SearchBounds { vars: 8, length: 4, summands: 1, linear: true };
    let SearchOutcome::Found { identity, .. } =
        identity_separation_search(&sc, &s7, &bounds, &caps).map_err(|e| e.to_string())?
    else {
        return Err("nothing separates Sc(abb) from S7".into());
    };
    let second = start.elapsed();
    ensure(second < secs(30), || format!("Sc(abb) side took {second:?}"))?;
    // 4-nilpotent: both sides single products of four distinct variables,
    // so the identity says every product of four elements is the same.
    let sides = [&identity.left, &identity.right];
    let nilpotent = sides.iter().all(|t| t.len() == 1 && t.words().all(|w| w.len() == 4));
    ensure(nilpotent, || format!("{identity} is not a 4-nilpotency identity"))?;
    for (s, want) in [(&sc, true), (&s7, false)] {
        let h = holds_identity(s, &identity.left, &identity.right, &caps).map_err(|e| e.to_string())?;
        ensure(h.holds() == want, || format!("{identity} evaluates wrongly"))?;
    }
    Ok(format!("xx = xxx in {first:.2?}; {identity} in {second:.2?}"))
}

// ---------------------------------------------------------------- 6

fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, k: usize, m: usize) -> Hypergraph {
    let all: Vec<usize> = (0..n).collect();
    let edges: BTreeSet<Vec<usize>> = (0..m)
        .map(|_| {
            let mut e: Vec<usize> = all.choose_multiple(rng, k).copied().collect();
            e.sort_unstable();
            e
        })
        .collect();
    Hypergraph::new(n, k, edges.into_iter().collect()).unwrap()
}

fn exact_by_enumeration(h: &Hypergraph) -> u128 {
    (0..1u32 << h.vertex_count())
        .filter(|a| h.edges().iter().all(|e| e.iter().filter(|&&v| a >> v & 1 == 0).count() == 1))
        .count() as u128
}

fn colourings_by_enumeration(h: &Hypergraph, l: usize) -> bool {
    let n = h.vertex_count();
    let total = l.pow(n as u32);
    (0..total).any(|code| {
        let colour = |v: usize| code / l.pow(v as u32) % l;
        h.edges().iter().all(|e| e.iter().any(|&v| colour(v) != colour(e[0])))
    })
}

fn random_hyperforest(rng: &mut ChaCha8Rng, k: usize, max_n: usize) -> Hypergraph {
    let mut edges: Vec<Vec<usize>> = vec![(0..k).collect()];
    let mut n = k;
    while n + k - 1 <= max_n && rng.gen_bool(0.85) {
        let mut e: Vec<usize> = if rng.gen_bool(0.8) { vec![rng.gen_range(0..n)] } else { vec![n] };
        if e[0] == n {
            n += 1;
        }
        while e.len() < k {
            e.push(n);
            n += 1;
        }
        edges.push(e);
    }
    Hypergraph::new(n, k, edges).unwrap()
}

fn solvers() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut sat, mut col3) = (0, 0);
    for i in 0..500 {
        let k = if i % 2 == 0 { 3 } else { 4 };
        let n = rng.gen_range(k..=15);
        let m = rng.gen_range(1..=2 * n);
        let h = random_hypergraph(&mut rng, n, k, m);
        let count = exact_by_enumeration(&h);
        match solve_exact(&h) {
            ExactOutcome::Satisfiable(a) => {
                ensure(count > 0, || format!("solver found a satisfaction of an unsatisfiable\n{h}"))?;
                let ok = h.edges().iter().all(|e| e.iter().filter(|&&v| !a[v]).count() == 1);
                ensure(ok, || format!("invalid satisfaction for\n{h}"))?;
                sat += 1;
            }
            ExactOutcome::Unsatisfiable { .. } => ensure(count == 0, || format!("missed a satisfaction of\n{h}"))?,
        }
        ensure(count_exact(&h) == count, || format!("count differs on\n{h}"))?;
        let levels: &[usize] = if n <= 9 { &[2, 3] } else { &[2] };
        for &l in levels {
            let truth = colourings_by_enumeration(&h, l);
            match colourable(&h, l) {
                Some(c) => {
                    ensure(truth, || format!("{l}-colouring of a non-colourable\n{h}"))?;
                    let ok = c.iter().all(|&x| x < l) && h.edges().iter().all(|e| e.iter().any(|&v| c[v] != c[e[0]]));
                    ensure(ok, || format!("invalid {l}-colouring of\n{h}"))?;
                }
                None => ensure(!truth, || format!("missed a {l}-colouring of\n{h}"))?,
            }
            col3 += usize::from(l == 3);
        }
    }
    for i in 0..100 {
        let f = random_hyperforest(&mut rng, 3 + i % 2, 30);
        ensure(is_hyperforest(&f), || format!("generator made a cycle\n{f}"))?;
        let v = robust2_check(&f);
        ensure(v.robust, || format!("hyperforest not 2-robust ({:?})\n{f}", v.failure))?;
    }
    Ok(format!(
        "500 instances agree with enumeration ({sat} satisfiable, {col3} also checked with 3 colours); 100 hyperforests 2-robust"
    ))
}

// ---------------------------------------------------------------- 7

/// Random edges, each kept only if the girth stays at least `g`.
fn random_girth_at_least(rng: &mut ChaCha8Rng, n: usize, k: usize, g: usize, tries: usize) -> Hypergraph {
    let all: Vec<usize> = (0..n).collect();
    let mut h = Hypergraph::new(n, k, vec![]).unwrap();
    for _ in 0..tries {
        let e: Vec<usize> = all.choose_multiple(rng, k).copied().collect();
        if let Ok(next) = h.with_edge(e) {
            if girth(&next).is_none_or(|x| x >= g) {
                h = next;
            }
        }
    }
    h
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| {
            subsets(last, size - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

fn in_some_edge(h: &Hypergraph, set: &[usize]) -> bool {
    h.edges().iter().any(|e| set.iter().all(|v| e.contains(v)))
}

fn girth_four_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut linked_pairs = 0;
    for i in 0..200 {
        let k = 3 + i % 2;
        let n = rng.gen_range(2 * k..=18);
        let h = random_girth_at_least(&mut rng, n, k, 4, 3 * n);
        ensure(girth(&h).is_none_or(|g| g >= 4), || format!("girth below 4\n{h}"))?;
        // (I)
        for (a, e) in h.edges().iter().enumerate() {
            for f in &h.edges()[a + 1..] {
                let shared = e.iter().filter(|v| f.contains(v)).count();
                ensure(shared <= 1, || format!("edges {e:?} and {f:?} share {shared}"))?;
            }
        }
        // (II), (III)
        for size in 2..=k {
            for s in subsets(n, size) {
                let pairs = subsets(size, 2).iter().all(|p| in_some_edge(&h, &[s[p[0]], s[p[1]]]));
                let sub = in_some_edge(&h, &s);
                ensure(sub == pairs, || format!("{s:?}: subhyperedge {sub}, pairs {pairs}\n{h}"))?;
                ensure(h.is_subhyperedge(&s) == sub, || format!("library disagrees on {s:?}"))?;
            }
        }
        // (IV)
        let mut sets: Vec<Vec<usize>> = subsets(n, k - 1).into_iter().filter(|s| in_some_edge(&h, s)).collect();
        sets.sort();
        let edge = |s: &[usize], v: usize| {
            let mut e = s.to_vec();
            e.push(v);
            e.sort_unstable();
            !s.contains(&v) && h.edges().contains(&e)
        };
        let linked = |a: &[usize], b: &[usize]| a != b && (0..n).any(|v| edge(a, v) && edge(b, v));
        let mut comp: Vec<usize> = (0..sets.len()).collect();
        fn root(c: &mut [usize], x: usize) -> usize {
            if c[x] == x { x } else { let r = root(c, c[x]); c[x] = r; r }
        }
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                if linked(&sets[a], &sets[b]) {
                    linked_pairs += 1;
                    let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
                    comp[ra] = rb;
                }
            }
        }
        let lp = link_partition(&h).map_err(|e| e.to_string())?;
        ensure(lp.sets == sets, || "library lists different (k-1)-subhyperedges".into())?;
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                let same = root(&mut comp, a) == root(&mut comp, b);
                ensure(!same || linked(&sets[a], &sets[b]), || {
                    format!("class of {:?} and {:?} is not a clique\n{h}", sets[a], sets[b])
                })?;
                ensure(same == (lp.class_of[a] == lp.class_of[b]), || {
                    format!("library classes differ at {:?}, {:?}", sets[a], sets[b])
                })?;
            }
        }
    }
    Ok(format!("200 instances, 0 violations of (I)-(IV); {linked_pairs} linked pairs seen"))
}

// ---------------------------------------------------------------- 8

fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
    Hypergraph::new(n, edges[0].len(), edges.iter().map(|e| e.to_vec()).collect()).unwrap()
}

fn certified(r: &WitnessReport, what: &str) -> Result<(), String> {
    let iso = r.find("isomorphism").is_some_and(|c| c.holds);
    let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
    ensure(r.passed() && iso, || format!("{what}: failing claims {failed:?}"))?;
    let problems = r.recheck();
    ensure(problems.is_empty(), || format!("{what}: recheck found {problems:?}"))?;
    let t = r.target.as_ref().ok_or_else(|| format!("{what}: no target"))?;
    let v = verify_canonical_map(&r.semiring, t, r.map.as_ref().unwrap()).map_err(|e| e.to_string())?;
    ensure(v.is_isomorphism(), || format!("{what}: map is not an isomorphism"))
}

fn witnesses() -> Outcome {
    let caps = Caps::default();
    let shapes = [
        ("single edge", hg(3, &[&[0, 1, 2]])),
        ("two disjoint edges", hg(6, &[&[0, 1, 2], &[3, 4, 5]])),
        ("2-edge path", hg(5, &[&[0, 1, 2], &[2, 3, 4]])),
        ("3-edge star", hg(7, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]])),
    ];
    let mut sizes = Vec::new();
    for (name, h) in &shapes {
        let t = Instant::now();
        for base in [RobustBase::S7, RobustBase::ScAbk] {
            let r = robust_power_witness(h, base, &caps).map_err(|e| format!("{name}: {e}"))?;
            certified(&r, &format!("{name} over {base:?}"))?;
        }
        let r = forest_power_witness(h, false, &caps).map_err(|e| format!("{name}: {e}"))?;
        certified(&r, &format!("{name} forest"))?;
        ensure(t.elapsed() < secs(60), || format!("{name} took {:?}", t.elapsed()))?;
        sizes.push(r.semiring.len());
    }
    for n in 2..=4 {
        let r = sinm_construction(n, false, &caps).map_err(|e| e.to_string())?;
        certified(&r, &format!("sinm {n}"))?;
        ensure(r.semiring.len() == 1 << n, || format!("sinm {n} has {} elements", r.semiring.len()))?;
    }
    let r = sins_construction("abb", &caps).map_err(|e| e.to_string())?;
    certified(&r, "sins abb")?;
    Ok(format!("4 shapes x 3 witnesses (sizes {sizes:?}), sinm n=2..4, sins(abb)"))
}

// ---------------------------------------------------------------- 9

fn triangle() -> Outcome {
    let caps = Caps::default();
    let hs = build_hypergraph_semiring(&Hypergraph::single_edge(3), false).map_err(|e| e.to_string())?;
    let sc = word_semiring(&WordSpec::parse(WordVariant::Sc, &["a1a2a3"]).unwrap(), &caps).map_err(|e| e.to_string())?;
    let images: Vec<Elem> = ["a1", "a2", "a3"].iter().map(|n| sc.element(n).unwrap()).collect();
    let map = hom_from_generators(&hs.semiring, &hs.generators, &sc, &images).map_err(|e| e.to_string())?;
    let map: Vec<Elem> = map.into_iter().collect::<Option<_>>().ok_or("S_e is not generated by its vertices")?;
    let v = verify_canonical_map(&hs.semiring, &sc, &map).map_err(|e| e.to_string())?;
    ensure(v.is_isomorphism(), || "S_e is not isomorphic to Sc(a1a2a3)".into())?;

    let r = sinm_construction(3, false, &caps).map_err(|e| e.to_string())?;
    let target = r.target.as_ref().ok_or("sinm has no target")?;
    ensure(target.names() == sc.names(), || "sinm target is not Sc(a1a2a3)".into())?;
    let v = verify_canonical_map(&r.semiring, &sc, r.map.as_ref().unwrap()).map_err(|e| e.to_string())?;
    ensure(v.is_isomorphism(), || "sinm(3) is not isomorphic to Sc(a1a2a3)".into())?;
    Ok("S_e ~ Sc(a1a2a3) ~ sinm(3), 8 elements each".into())
}

// ---------------------------------------------------------------- 10

fn property_verdicts() -> Outcome {
    let (s7, b21, sc) = (fixtures::s7(), fixtures::b21(), fixtures::sc_abb());
    let v = one_in_three_property(&s7, TripleMode::OneInThree);
    ensure(v.holds && v.describe(&s7) == ["c=a, d=a"], || format!("S7 1-in-3: {:?}", v.describe(&s7)))?;
    let v = one_in_three_property(&s7, TripleMode::TwoInThree);
    ensure(v.holds && v.describe(&s7) == ["c=a, d=1"], || format!("S7 2-in-3: {:?}", v.describe(&s7)))?;

    let v = one_in_three_property(&b21, TripleMode::OneInThree);
    ensure(v.holds, || format!("B21 1-in-3: {:?}", v.describe(&b21)))?;
    let a = b21.element("a").unwrap();
    let at_a = v.points.iter().find(|p| p.c == a).ok_or("a is not noncyclic in B21")?;
    ensure(matches!(at_a.outcome, PointOutcome::Witnessed { d, triples: 3 } if d == a), || {
        format!("B21 at a: {:?}", at_a.outcome)
    })?;

    let v = one_in_three_property(&sc, TripleMode::TwoInThree);
    let abb = sc.element("abb").unwrap();
    let at = v.points.iter().find(|p| p.c == abb).ok_or("abb is cyclic?")?;
    ensure(v.holds && matches!(at.outcome, PointOutcome::Witnessed { d, .. } if sc.name(d) == "b"), || {
        format!("Sc(abb) 2-in-3: {:?}", v.describe(&sc))
    })?;
    let vacuous = v.points.iter().filter(|p| p.c != abb).all(|p| p.outcome == PointOutcome::Vacuous);
    ensure(vacuous, || "other noncyclic elements of Sc(abb) are not vacuous".into())?;
    let v = one_in_three_property(&sc, TripleMode::OneInThree);
    ensure(v.describe(&sc).contains(&"c=abb, d=a".to_string()), || format!("Sc(abb) 1-in-3: {:?}", v.describe(&sc)))?;

    for (name, s) in [("S7", &s7), ("B21", &b21), ("Sc(abb)", &sc)] {
        ensure(noncyclic_order_ideal(s).holds, || format!("{name}: noncyclic elements are not a down-set"))?;
    }
    ensure(index_period(&s7) == (2, 1), || format!("index-period of S7 is {:?}", index_period(&s7)))?;
    Ok("S7 (a,a) and (a,1); B21 at a via a on 3 triples; Sc(abb) at abb via b and a; ideals hold; S7 is (2,1)".into())
}

// ---------------------------------------------------------------- 11

fn group_pipeline() -> Outcome {
    let caps = Caps::default();
    let p = fixtures::power_q8();
    let q = aisemiring::group::quaternion();
    let w = nonabelian_nilpotent_witness(&p, &caps).map_err(|e| e.to_string())?.ok_or("no witness in P(Q8)")?;
    let names: BTreeSet<&str> = w.carrier.iter().map(|&x| p.name(x)).collect();
    let singletons: BTreeSet<&str> = q.names().iter().map(String::as_str).collect();
    ensure(names == singletons, || format!("witness is {names:?}"))?;
    let r = extract_flat_group(&p, &w.carrier, false, &caps).map_err(|e| e.to_string())?;
    certified(&r, "flat Q8 inside P(Q8)")?;
    let t = r.target.as_ref().unwrap();
    ensure(t.len() == 9 && isomorphic(t, &fixtures::flat_q8()), || "target is not the flat Q8".into())?;

    let h = heisenberg27();
    let (order, exponent, abelian, class) = group_facts(&h);
    ensure((order, exponent, abelian, class) == (27, 3, false, Some(2)), || {
        format!("Heisenberg: order {order}, exponent {exponent}, abelian {abelian}, class {class:?}")
    })?;
    let flat = fixtures::flat_heisenberg27();
    ensure(verify_semiring_axioms(&flat).is_valid(), || "flat Heisenberg fails the axioms".into())?;
    Ok(format!("Q8 singletons found in P(Q8) ({} elements) and certified; Heisenberg 27/3/nonabelian/class 2", p.len()))
}

/// Order, exponent, commutativity and nilpotency class (up to 3), from the
/// multiplication table alone.
fn group_facts(g: &FiniteGroup) -> (usize, usize, bool, Option<usize>) {
    let e = g.identity();
    let n = g.len();
    let inv = |x: Elem| (0..n).find(|&y| g.mul(x, y) == e).unwrap();
    let order = |x: Elem| (1..=n).find(|&k| (0..k).fold(e, |acc, _| g.mul(acc, x)) == e).unwrap();
    let exponent = (0..n).map(order).fold(1, |a, b| a * b / (1..=a.min(b)).rev().find(|d| a % d == 0 && b % d == 0).unwrap());
    let comm = |x: Elem, y: Elem| g.mul(g.mul(inv(x), inv(y)), g.mul(x, y));
    let abelian = (0..n).all(|x| (0..n).all(|y| g.mul(x, y) == g.mul(y, x)));
    // Subgroup generated by commutators [x, y] with x in the previous term.
    let next = |prev: &BTreeSet<Elem>| {
        let mut s: BTreeSet<Elem> = prev.iter().flat_map(|&x| (0..n).map(move |y| (x, y))).map(|(x, y)| comm(x, y)).collect();
        s.insert(e);
        loop {
            let more: BTreeSet<Elem> = s.iter().flat_map(|&a| s.iter().map(move |&b| (a, b))).map(|(a, b)| g.mul(a, b)).collect();
            if more.is_subset(&s) {
                return s;
            }
            s.extend(more);
        }
    };
    let mut term: BTreeSet<Elem> = (0..n).collect();
    let mut class = None;
    for c in 0..=3 {
        if term.len() == 1 {
            class = Some(c);
            break;
        }
        term = next(&term);
    }
    (n, exponent, abelian, class)
}

// ---------------------------------------------------------------- 12

/// No cycle iff the vertex-edge incidence graph is a forest; union-find
/// over incidences finds the first one that closes a cycle.
fn forest_oracle(h: &Hypergraph) -> bool {
    let n = h.vertex_count();
    let m = h.edge_count();
    let mut parent: Vec<usize> = (0..n + m).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        if p[x] == x { x } else { let r = root(p, p[x]); p[x] = r; r }
    }
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            let (a, b) = (root(&mut parent, v), root(&mut parent, n + i));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    true
}

fn gplus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut forests, mut worst) = (0, 0.0f64);
    for i in 0..100 {
        let k = 3 + i % 2;
        let g = rng.gen_range(4..=9);
        let n = rng.gen_range(12..=40);
        let h = random_girth_at_least(&mut rng, n, k, g, 2 * n);
        ensure(girth(&h).is_none_or(|x| x >= g), || "girth certificate failed".into())?;
        let size = rng.gen_range(1..=12.min(n));
        let all: Vec<usize> = (0..n).collect();
        let vg: Vec<usize> = all.choose_multiple(&mut rng, size).copied().collect();
        let c = gplus_closure(&h, &vg).map_err(|e| e.to_string())?;
        let mut expect: BTreeSet<usize> = vg.iter().copied().collect();
        for e in h.edges() {
            if e.iter().filter(|v| vg.contains(v)).count() >= 2 {
                expect.extend(e);
            }
        }
        ensure(c.vertices == expect.into_iter().collect::<Vec<_>>(), || format!("closure of {vg:?} differs"))?;
        let bound = k * size * (size - 1) / 2 + size;
        ensure(c.vertices.len() <= bound, || format!("|G+| = {} > {bound}", c.vertices.len()))?;
        worst = worst.max(c.vertices.len() as f64 / bound as f64);
        if girth(&h).is_none_or(|x| x > c.vertices.len()) {
            ensure(forest_oracle(&c.induced) && is_hyperforest(&c.induced), || {
                format!("induced G+ of {vg:?} has a cycle")
            })?;
            forests += 1;
        }
    }
    Ok(format!(
        "100 closures within k*C(|V_G|,2)+|V_G| (max ratio {worst:.2}); {forests} with girth > |V_G+| induce hyperforests"
    ))
}
