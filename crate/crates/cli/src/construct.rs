use std::path::{Path, PathBuf};

use aisemiring::group::flat_extension;
use aisemiring::hgsemiring::{
    build_hypergraph_semiring, forest_power_witness, robust_power_witness, sinm_construction, sins_construction,
    RobustBase,
};
use aisemiring::semigroup::FiniteSemigroup;
use aisemiring::semiring::{
    adjoin, ideal_quotient, power_semiring, verify_semiring_axioms, word_semiring, zero_direct_join, AdjoinKind,
    WordSpec, WordVariant,
};
use aisemiring::{Caps, FiniteSemiring, WitnessReport};
use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::input;
use crate::output::{CliError, Outcome, Status};

#[derive(Args)]
pub struct OutArg {
    /// Also write the semiring, in the table format, to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Base {
    S7,
    /// Sc(ab^{k-1}).
    Sc,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Adjoin {
    /// Additive identity, absorbing for multiplication.
    Zero,
    /// Multiplicative identity.
    One,
}

#[derive(Subcommand)]
pub enum ConstructCmd {
    /// Flat extension of a group.
    FlatGroup {
        #[arg(long)]
        group: String,
        /// Also adjoin an additive zero.
        #[arg(long)]
        zero: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Word semiring S(W), M(W), Sc(W) or Mc(W).
    Word {
        #[arg(long)]
        variant: WordVariant,
        /// Comma-separated words.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        words: Vec<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Power semiring of the multiplicative reduct of a semiring or group.
    Power {
        #[arg(long)]
        of: String,
        /// Include the empty set.
        #[arg(long)]
        empty: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Hypergraph semiring of a hypergraph file.
    Hypergraph {
        #[arg(long)]
        file: PathBuf,
        /// Adjoin the identity (M_H instead of S_H).
        #[arg(long)]
        monoid: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Collapse a multiplicative ideal that is an order filter.
    IdealQuotient {
        input: String,
        /// Comma-separated element names.
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// 0-direct join of two flat semirings.
    ZeroJoin {
        left: String,
        right: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Adjoin a zero or an identity.
    Adjoin {
        input: String,
        #[arg(long)]
        kind: Adjoin,
        #[command(flatten)]
        out: OutArg,
    },
    /// Sc(a1...an) inside a power of S7.
    Sinm {
        #[arg(long)]
        n: usize,
        /// Build Mc(a1...an) instead.
        #[arg(long)]
        monoid: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Sc(a1...an) inside a power of Sc(w).
    Sins {
        #[arg(long)]
        word: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// S_H inside a power of S7 or Sc(ab^{k-1}), for a 2-robust H.
    RobustWitness {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value = "s7")]
        base: Base,
        #[command(flatten)]
        out: OutArg,
    },
    /// S_F inside a power of S_e, for a hyperforest F.
    ForestWitness {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        monoid: bool,
        #[command(flatten)]
        out: OutArg,
    },
}

pub fn run(cmd: ConstructCmd, caps: &Caps) -> Result<Outcome, CliError> {
    match cmd {
        ConstructCmd::FlatGroup { group, zero, out } => {
            plain(flat_extension(&input::group(&group)?, zero), &out)
        }
        ConstructCmd::Word { variant, words, out } => {
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            plain(word_semiring(&WordSpec::parse(variant, &refs)?, caps)?, &out)
        }
        ConstructCmd::Power { of, empty, out } => {
            let t = if input::is_group(&of) {
                let g = input::group(&of)?;
                FiniteSemigroup::from_fn(g.names().to_vec(), |x, y| g.mul(x, y))?
            } else {
                FiniteSemigroup::reduct(&input::semiring(&of)?)
            };
            plain(power_semiring(&t, empty, caps)?, &out)
        }
        ConstructCmd::Hypergraph { file, monoid, out } => {
            let h = input::hypergraph(&file)?;
            let hs = build_hypergraph_semiring(&h, monoid)?;
            let mut r = WitnessReport::new(
                format!("hypergraph semiring of {}", file.display()),
                hs.semiring.clone(),
            );
            let axioms = verify_semiring_axioms(&hs.semiring);
            r.claim("semiring axioms", axioms.is_valid(), axioms.describe(&hs.semiring).join("; "));
            r.claims.extend(hs.rules());
            witness(r, &out)
        }
        ConstructCmd::IdealQuotient { input: i, ideal, out } => {
            let s = input::semiring(&i)?;
            let ideal = input::elements(&s, &ideal)?;
            plain(ideal_quotient(&s, &ideal)?.semiring, &out)
        }
        ConstructCmd::ZeroJoin { left, right, out } => {
            plain(zero_direct_join(&input::semiring(&left)?, &input::semiring(&right)?)?, &out)
        }
        ConstructCmd::Adjoin { input: i, kind, out } => {
            let kind = match kind {
                Adjoin::Zero => AdjoinKind::AdditiveZero,
                Adjoin::One => AdjoinKind::MultiplicativeIdentity,
            };
            let a = adjoin(&input::semiring(&i)?, kind)?;
            let mut o = plain(a.semiring, &out)?;
            if let Some(note) = a.note {
                o.text = format!("# {note}\n{}", o.text);
                o.json["note"] = json!(note);
            }
            Ok(o)
        }
        ConstructCmd::Sinm { n, monoid, out } => witness(sinm_construction(n, monoid, caps)?, &out),
        ConstructCmd::Sins { word, out } => witness(sins_construction(&word, caps)?, &out),
        ConstructCmd::RobustWitness { file, base, out } => {
            let base = match base {
                Base::S7 => RobustBase::S7,
                Base::Sc => RobustBase::ScAbk,
            };
            witness(robust_power_witness(&input::hypergraph(&file)?, base, caps)?, &out)
        }
        ConstructCmd::ForestWitness { file, monoid, out } => {
            witness(forest_power_witness(&input::hypergraph(&file)?, monoid, caps)?, &out)
        }
    }
}

fn write(s: &FiniteSemiring, out: &OutArg) -> Result<(), CliError> {
    if let Some(path) = &out.out {
        std::fs::write(path, s.to_text()).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

/// A construction with nothing to certify beyond the axioms, which are
/// checked anyway.
fn plain(s: FiniteSemiring, out: &OutArg) -> Result<Outcome, CliError> {
    write(&s, out)?;
    let axioms = verify_semiring_axioms(&s);
    let mut text = s.to_text();
    if !axioms.is_valid() {
        text.push_str(&format!("# FAIL axioms: {}\n", axioms.describe(&s).join("; ")));
    }
    let json = json!({ "semiring": s, "axioms": axioms.is_valid() });
    Ok(Outcome::new(Status::from_bool(axioms.is_valid()), text, json))
}

fn witness(r: WitnessReport, out: &OutArg) -> Result<Outcome, CliError> {
    write(&r.semiring, out)?;
    let json = json!({ "semiring": r.semiring, "report": r });
    Ok(Outcome::new(Status::from_bool(r.passed()), r.to_text(), json))
}

pub fn recheck(path: &Path) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let result = &doc["result"];
    let mut problems = Vec::new();
    let name;
    if result.get("report").is_some() {
        let r: WitnessReport = serde_json::from_value(result["report"].clone())
            .map_err(|e| CliError::input(format!("report: {e}")))?;
        problems.extend(r.recheck());
        problems.extend(r.failures().map(|c| format!("claim {:?} is recorded as failing", c.name)));
        name = r.title;
    } else if result.get("semiring").is_some() {
        let s: FiniteSemiring = serde_json::from_value(result["semiring"].clone())
            .map_err(|e| CliError::input(format!("semiring: {e}")))?;
        let axioms = verify_semiring_axioms(&s);
        problems.extend(axioms.describe(&s));
        name = format!("semiring with {} elements", s.len());
    } else {
        return Err(CliError::input("no semiring or report in the document"));
    }
    let mut out = format!("{name}\n");
    if problems.is_empty() {
        out.push_str("recheck: ok\n");
    }
    for p in &problems {
        out.push_str(&format!("recheck: FAIL {p}\n"));
    }
    Ok(Outcome::new(
        Status::from_bool(problems.is_empty()),
        out,
        json!({ "title": name, "problems": problems }),
    ))
}
