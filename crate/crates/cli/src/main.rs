//! `aisr`: build, check and compare finite ai-semirings from the shell.
//!
//! Exit codes: 0 everything checked passed, 1 a check failed, 2 the input
//! could not be used, 3 a search ran out of budget or hit a size cap.

mod check;
mod construct;
mod hyper;
mod identities;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::{CliError, Outcome};

#[derive(Parser)]
#[command(name = "aisr", version, about = "Finite additively idempotent semirings")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verifiers on a semiring or group (fixture name or file).
    Check(check::CheckArgs),
    /// Build a semiring and print it, with a witness report where one applies.
    #[command(subcommand)]
    Construct(construct::ConstructCmd),
    /// Hypergraph utilities.
    #[command(subcommand)]
    Hypergraph(hyper::HyperCmd),
    /// Check, decide and search for identities.
    #[command(subcommand)]
    Identities(identities::IdentitiesCmd),
    /// List the built-in fixtures, or print one.
    Fixtures {
        name: Option<String>,
    },
    /// Re-verify a JSON report written by `construct --json`.
    Recheck {
        report: std::path::PathBuf,
    },
}

fn run(cmd: Command) -> Result<Outcome, CliError> {
    let caps = input::caps()?;
    match cmd {
        Command::Check(args) => check::run(args, &caps),
        Command::Construct(c) => construct::run(c, &caps),
        Command::Hypergraph(c) => hyper::run(c, &caps),
        Command::Identities(c) => identities::run(c, &caps),
        Command::Fixtures { name } => input::fixtures(name.as_deref()),
        Command::Recheck { report } => construct::recheck(&report),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let result = run(cli.command);
    output::emit(name, cli.json, result)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Construct(_) => "construct",
        Command::Hypergraph(_) => "hypergraph",
        Command::Identities(_) => "identities",
        Command::Fixtures { .. } => "fixtures",
        Command::Recheck { .. } => "recheck",
    }
}
