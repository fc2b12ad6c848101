use std::path::Path;
use std::process::{Command, Output};

use aisemiring::{fixtures, FiniteSemiring};
use serde_json::Value;

fn aisr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aisr"))
        .args(args)
        .env_remove("AISR_CAPS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn s7_one_in_three_report() {
    let o = aisr(&["check", "s7", "--axioms", "--one-in-three"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1-in-3: c=a, d=a"));
}

#[test]
fn mutated_table_fails_axioms() {
    let dir = tempfile::tempdir().unwrap();
    // a*0 = a instead of 0, so a(0a) = a but (a0)a = 0.
    let mut text = fixtures::s7().to_text();
    text = text.replacen("mul:\n  1 a 0\n  a 0 0", "mul:\n  1 a 0\n  a 0 a", 1);
    assert_ne!(text, fixtures::s7().to_text());
    let f = write(dir.path(), "bad.txt", &text);
    let o = aisr(&["check", &f, "--axioms"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("axioms: FAIL"));
}

/// Index and period by iterating powers in the fixture table.
fn index_period_oracle(s: &FiniteSemiring) -> (usize, usize) {
    let mut worst = (1, 1);
    for x in s.elements() {
        let mut seen = vec![x];
        loop {
            let next = s.mul(*seen.last().unwrap(), x);
            if let Some(i) = seen.iter().position(|&y| y == next) {
                let (k, p) = (i + 1, seen.len() - i);
                worst = (worst.0.max(k), num_lcm(worst.1, p));
                break;
            }
            seen.push(next);
        }
    }
    worst
}

fn num_lcm(a: usize, b: usize) -> usize {
    let g = (1..=a.min(b)).rev().find(|d| a % d == 0 && b % d == 0).unwrap();
    a / g * b
}

#[test]
fn b21_index_period_is_computed() {
    let (k, p) = index_period_oracle(&fixtures::b21());
    let o = aisr(&["check", "b21", "--index-period"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(&format!("index-period: ({k},{p})")));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "broken.txt", "elements: 1 a\nadd:\n 1 a\n");
    let o = aisr(&["check", &f]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert_eq!(code(&aisr(&["check", "no_such_fixture"])), 2);
    assert_eq!(code(&aisr(&["fixtures", "nope"])), 2);
}

#[test]
fn word_mc_a_is_s7() {
    let o = aisr(&["construct", "word", "--variant", "Mc", "--words", "a"]);
    assert_eq!(code(&o), 0);
    let s = FiniteSemiring::from_text(&stdout(&o)).unwrap();
    assert_eq!(s.names(), fixtures::s7().names());
    for x in s.elements() {
        for y in s.elements() {
            assert_eq!(s.mul(x, y), fixtures::s7().mul(x, y));
            assert_eq!(s.add(x, y), fixtures::s7().add(x, y));
        }
    }
}

#[test]
fn hypergraph_semiring_of_one_edge() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "edge.hg", "3 3 1\n0 1 2\n");
    let out = dir.path().join("sh.txt");
    let o = aisr(&["construct", "hypergraph", "--file", &f, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = FiniteSemiring::from_text(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(s.len(), 8);
    assert_eq!(s.len(), fixtures::sc_a1a2a3().len());
}

#[test]
fn reports_recheck_and_detect_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let o = aisr(&["--json", "construct", "sinm", "--n", "3"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert!(doc["seed"].is_null());
    let claims = doc["result"]["report"]["claims"].as_array().unwrap();
    assert!(claims.iter().any(|c| c["name"] == "isomorphism" && c["holds"] == true));
    let good = write(dir.path(), "good.json", &stdout(&o));
    assert_eq!(code(&aisr(&["recheck", &good])), 0);

    let mut bad = doc.clone();
    bad["result"]["report"]["map"][0] = Value::from(7);
    let bad = write(dir.path(), "bad.json", &bad.to_string());
    assert_eq!(code(&aisr(&["recheck", &bad])), 1);
}

#[test]
fn solve_reports_unsat_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.hg", "3 4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n");
    let o = aisr(&["hypergraph", "solve", "--file", &k4]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("UNSAT"));
    let path = write(dir.path(), "path.hg", "3 5 2\n0 1 2\n2 3 4\n");
    let o = aisr(&["--json", "hypergraph", "solve", "--file", &path]);
    assert_eq!(code(&o), 0);
    let a: Vec<bool> = serde_json::from_value(json(&o)["result"]["assignment"].clone()).unwrap();
    for e in [[0, 1, 2], [2, 3, 4]] {
        assert_eq!(e.iter().filter(|&&v| !a[v]).count(), 1);
    }
}

#[test]
fn random_budget_and_determinism() {
    let o = aisr(&[
        "hypergraph", "random", "--n", "40", "--k", "3", "--girth", "5", "--no-colour", "3", "--budget", "10",
    ]);
    assert_eq!(code(&o), 3);
    let args = [
        "--json", "hypergraph", "random", "--n", "40", "--k", "3", "--girth", "5", "--no-exact", "--seed", "11",
    ];
    let (a, b) = (aisr(&args), aisr(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["seed"], 11);
    let h: aisemiring::hypergraph::Hypergraph =
        serde_json::from_value(doc["result"]["Found"]["hypergraph"].clone()).unwrap();
    assert!(aisemiring::hypergraph::girth(&h).is_none_or(|g| g >= 5));
    assert!(!aisemiring::hypergraph::solve_exact(&h).is_satisfiable());
}

#[test]
fn gplus_lists_the_closure() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h.hg", "3 7 3\n0 1 2\n2 3 4\n4 5 6\n");
    let o = aisr(&["hypergraph", "gplus", "--file", &f, "--vertices", "1,2,5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("closure: 0 1 2 5"));
}

#[test]
fn caps_come_from_the_environment() {
    let run = |caps: &str| {
        Command::new(env!("CARGO_BIN_EXE_aisr"))
            .args(["construct", "sinm", "--n", "3"])
            .env("AISR_CAPS", caps)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("carrier=4")), 3);
    assert_eq!(code(&run("bogus=1")), 2);
}

#[test]
fn separation_search() {
    let o = aisr(&["identities", "separate", "s7", "sc_abb", "--vars", "1", "--length", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("separating identity: xx = xxx"));
    let o = aisr(&["identities", "check", "s7", "--identity", "xx = xxx", "--identity", "x = xx"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn group_fixture_structure() {
    let o = aisr(&["check", "heisenberg27"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("order 27, exponent 3, nonabelian, nilpotent of class 2"));
}
