use std::path::PathBuf;

use aisemiring::hgsemiring::{h23_verdict, H23Verdict};
use aisemiring::hypergraph::{
    colourable, girth, gplus_closure, is_hyperforest, random_hard_hypergraph, robust2_check, solve_exact,
    ExactOutcome, HardSearch, HardSearchOutcome, HardTarget, Hypergraph,
};
use aisemiring::Caps;
use clap::{Args, Subcommand};
use serde_json::json;

use crate::input;
use crate::output::{CliError, Outcome, Status};

#[derive(Args)]
pub struct FileArg {
    /// Hypergraph file: header `k n m`, then one edge per line.
    #[arg(long)]
    file: PathBuf,
}

#[derive(Subcommand)]
pub enum HyperCmd {
    /// Length of a shortest cycle.
    Girth(FileArg),
    /// Exit 0 iff the hypergraph has no cycle.
    Forest(FileArg),
    /// A (k-1)-in-k satisfaction, or UNSAT (exit 1).
    Solve(FileArg),
    /// Whether every valid partial satisfaction on two vertices extends.
    Robust(FileArg),
    /// A colouring with no monochromatic edge, or exit 1.
    Colour {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, default_value_t = 2)]
        colours: usize,
    },
    /// Seeded search for a hypergraph of large girth failing a property.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        girth: usize,
        /// Not colourable with this many colours.
        #[arg(long, conflicts_with = "no_exact")]
        no_colour: Option<usize>,
        /// Not (k-1)-in-k satisfiable.
        #[arg(long)]
        no_exact: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidate edges to draw before giving up (exit 3).
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
    },
    /// Close a vertex set under edges meeting it twice.
    Gplus {
        #[command(flatten)]
        file: FileArg,
        /// Comma-separated vertices.
        #[arg(long, value_delimiter = ',')]
        vertices: Vec<usize>,
    },
    /// What the 1-in-3/2-in-3 criterion says about S_H and a semiring.
    H23 {
        #[command(flatten)]
        file: FileArg,
        /// Fixture name or file.
        #[arg(long)]
        semiring: String,
    },
}

fn bits(a: &[bool]) -> String {
    a.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn run(cmd: HyperCmd, _caps: &Caps) -> Result<Outcome, CliError> {
    match cmd {
        HyperCmd::Girth(f) => {
            let h = input::hypergraph(&f.file)?;
            let g = girth(&h);
            let text = match g {
                Some(g) => format!("girth: {g}\n"),
                None => "girth: none (no cycle)\n".to_string(),
            };
            Ok(Outcome::new(Status::Pass, text, json!({ "girth": g })))
        }
        HyperCmd::Forest(f) => {
            let h = input::hypergraph(&f.file)?;
            let forest = is_hyperforest(&h);
            let text = format!("hyperforest: {}\n", if forest { "yes" } else { "no" });
            Ok(Outcome::new(Status::from_bool(forest), text, json!({ "hyperforest": forest })))
        }
        HyperCmd::Solve(f) => {
            let h = input::hypergraph(&f.file)?;
            Ok(match solve_exact(&h) {
                ExactOutcome::Satisfiable(a) => Outcome::new(
                    Status::Pass,
                    format!("satisfaction: {}\n", bits(&a)),
                    json!({ "satisfiable": true, "assignment": a }),
                ),
                ExactOutcome::Unsatisfiable { nodes } => Outcome::new(
                    Status::Fail,
                    format!("UNSAT after {nodes} search nodes\n"),
                    json!({ "satisfiable": false, "nodes": nodes }),
                ),
            })
        }
        HyperCmd::Robust(f) => {
            let h = input::hypergraph(&f.file)?;
            let v = robust2_check(&h);
            let mut text = format!("robust: {} ({} partial satisfactions)\n", if v.robust { "yes" } else { "no" }, v.checked);
            if let Some(p) = &v.failure {
                let parts: Vec<String> = p.iter().map(|(x, b)| format!("{x}={}", u8::from(*b))).collect();
                text.push_str(&format!("does not extend: {}\n", parts.join(" ")));
            }
            Ok(Outcome::new(Status::from_bool(v.robust), text, json!(v)))
        }
        HyperCmd::Colour { file, colours } => {
            let h = input::hypergraph(&file.file)?;
            if !(1..=64).contains(&colours) {
                return Err(CliError::input("colours must be between 1 and 64"));
            }
            Ok(match colourable(&h, colours) {
                Some(c) => {
                    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    Outcome::new(
                        Status::Pass,
                        format!("colouring: {}\n", parts.join(" ")),
                        json!({ "colourable": true, "colouring": c }),
                    )
                }
                None => Outcome::new(
                    Status::Fail,
                    format!("not {colours}-colourable\n"),
                    json!({ "colourable": false }),
                ),
            })
        }
        HyperCmd::Random {
            n,
            k,
            girth,
            no_colour,
            no_exact,
            seed,
            budget,
        } => {
            let (target, colours) = match (no_colour, no_exact) {
                (_, true) => (HardTarget::NotExact, 2),
                (Some(l), false) => (HardTarget::NotColourable, l),
                (None, false) => return Err(CliError::input("give --no-colour L or --no-exact")),
            };
            let p = HardSearch {
                target,
                budget,
                ..HardSearch::new(n, k, girth, colours, seed)
            };
            let outcome = random_hard_hypergraph(&p)?;
            let (status, text) = match &outcome {
                HardSearchOutcome::Found {
                    hypergraph,
                    girth: g,
                    draws,
                    ..
                } => {
                    let what = match target {
                        HardTarget::NotColourable => format!("not {colours}-colourable"),
                        HardTarget::NotExact => format!("not {}-in-{k} satisfiable", k - 1),
                    };
                    let g = g.map_or("none".to_string(), |g| g.to_string());
                    (Status::Pass, format!("# girth {g}, {what}, {draws} draws\n{hypergraph}"))
                }
                HardSearchOutcome::BudgetExhausted { draws, best_edges, .. } => (
                    Status::Budget,
                    format!("budget exhausted after {draws} draws (best attempt {best_edges} edges)\n"),
                ),
            };
            let mut out = Outcome::new(status, text, json!(outcome));
            out.seed = Some(seed);
            Ok(out)
        }
        HyperCmd::Gplus { file, vertices } => {
            let h = input::hypergraph(&file.file)?;
            let g = gplus_closure(&h, &vertices)?;
            let parts: Vec<String> = g.vertices.iter().map(|v| v.to_string()).collect();
            let text = format!(
                "closure: {}\nsize {} within bound {}: {}\n# induced\n{}",
                parts.join(" "),
                g.vertices.len(),
                g.bound,
                if g.within_bound() { "yes" } else { "no" },
                g.induced
            );
            Ok(Outcome::new(Status::from_bool(g.within_bound()), text, json!(g)))
        }
        HyperCmd::H23 { file, semiring } => {
            let h: Hypergraph = input::hypergraph(&file.file)?;
            let s = input::semiring(&semiring)?;
            let r = h23_verdict(&s, &h)?;
            let (status, line) = match &r.verdict {
                H23Verdict::HypothesesFail { failed } => {
                    (Status::Fail, format!("hypotheses fail: {}", failed.join("; ")))
                }
                H23Verdict::NotInVariety { property, search_nodes } => (
                    Status::Pass,
                    format!("S_H is not in the variety ({property} property; UNSAT after {search_nodes} nodes)"),
                ),
                H23Verdict::Inconclusive { satisfaction } => (
                    Status::Fail,
                    format!("inconclusive: H has the satisfaction {}", bits(satisfaction)),
                ),
            };
            let text = format!(
                "1-in-3: {}\n2-in-3: {}\nnoncyclic-ideal: {}\nverdict: {line}\n",
                r.one_in_three.describe(&s).join("; "),
                r.two_in_three.describe(&s).join("; "),
                if r.noncyclic_ideal.holds { "holds" } else { "fails" },
            );
            Ok(Outcome::new(status, text, json!(r)))
        }
    }
}
