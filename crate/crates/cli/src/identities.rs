use std::path::PathBuf;

use aisemiring::term::{
    holds_identity, identity_separation_search, m2_decide, parse_identity_file, s7_decide, Identity, SearchBounds,
    SearchOutcome,
};
use aisemiring::Caps;
use clap::{Args, Subcommand};
use serde_json::json;

use crate::input;
use crate::output::{CliError, Outcome, Status};

#[derive(Args)]
pub struct IdentityList {
    /// An identity such as `xy + x = x`; repeatable.
    #[arg(long = "identity")]
    identities: Vec<String>,
    /// File with one identity per line.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl IdentityList {
    fn load(&self) -> Result<Vec<Identity>, CliError> {
        let mut out = self
            .identities
            .iter()
            .map(|t| Identity::parse(t).map_err(CliError::from))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(path) = &self.file {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            let parsed = parse_identity_file(&text).map_err(|e| {
                let mut err = CliError::from(e);
                err.message = format!("{}: {}", path.display(), err.message);
                err
            })?;
            out.extend(parsed.into_iter().map(|(l, r)| Identity::new(l.normalize(), r.normalize())));
        }
        if out.is_empty() {
            return Err(CliError::input("no identities given"));
        }
        Ok(out)
    }
}

#[derive(Subcommand)]
pub enum IdentitiesCmd {
    /// Check identities in a semiring by exhaustive evaluation.
    Check {
        /// Fixture name or file.
        input: String,
        #[command(flatten)]
        list: IdentityList,
    },
    /// Decide identities in S7 and M2 from their delta families.
    Decide {
        #[command(flatten)]
        list: IdentityList,
    },
    /// Find an identity true in the first semiring and false in the second.
    Separate {
        holds_in: String,
        fails_in: String,
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 3)]
        length: usize,
        #[arg(long, default_value_t = 2)]
        summands: usize,
        /// Only words without repeated variables.
        #[arg(long)]
        linear: bool,
    },
}

pub fn run(cmd: IdentitiesCmd, caps: &Caps) -> Result<Outcome, CliError> {
    match cmd {
        IdentitiesCmd::Check { input, list } => {
            let s = input::semiring(&input)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut all = true;
            for id in list.load()? {
                let check = holds_identity(&s, &id.left, &id.right, caps)?;
                all &= check.holds();
                match check.counterexample() {
                    None => text.push_str(&format!("{id}: holds\n")),
                    Some(c) => text.push_str(&format!("{id}: FAIL {}\n", c.describe(&s))),
                }
                rows.push(json!({ "identity": id.to_string(), "holds": check.holds(), "check": check }));
            }
            Ok(Outcome::new(Status::from_bool(all), text, json!(rows)))
        }
        IdentitiesCmd::Decide { list } => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for id in list.load()? {
                let (s7, m2) = (s7_decide(&id.left, &id.right), m2_decide(&id.left, &id.right));
                let word = |b: bool| if b { "holds" } else { "fails" };
                text.push_str(&format!("{id}: S7 {}, M2 {}\n", word(s7), word(m2)));
                rows.push(json!({ "identity": id.to_string(), "s7": s7, "m2": m2 }));
            }
            Ok(Outcome::new(Status::Pass, text, json!(rows)))
        }
        IdentitiesCmd::Separate {
            holds_in,
            fails_in,
            vars,
            length,
            summands,
            linear,
        } => {
            let s = input::semiring(&holds_in)?;
            let t = input::semiring(&fails_in)?;
            let bounds = SearchBounds {
                vars,
                length,
                summands,
                linear,
            };
            let outcome = identity_separation_search(&s, &t, &bounds, caps)?;
            let (status, text) = match &outcome {
                SearchOutcome::Found {
                    identity,
                    counterexample,
                    candidates,
                } => (
                    Status::Pass,
                    format!(
                        "separating identity: {identity}\nfails in the second: {}\ncandidates tried: {candidates}\n",
                        counterexample.describe(&t)
                    ),
                ),
                SearchOutcome::NoneWithinBounds { candidates } => (
                    Status::Fail,
                    format!("no separating identity within bounds ({candidates} candidates)\n"),
                ),
            };
            Ok(Outcome::new(status, text, json!(outcome)))
        }
    }
}
