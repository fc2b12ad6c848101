use std::path::Path;

use aisemiring::fixtures::{self, GROUP_NAMES, SEMIRING_NAMES};
use aisemiring::group::{verify_group, FiniteGroup};
use aisemiring::hypergraph::Hypergraph;
use aisemiring::semiring::verify_semiring_axioms;
use aisemiring::{Caps, Elem, FiniteSemiring};
use serde_json::json;

use crate::output::{CliError, Outcome, Status};

/// Caps from `AISR_CAPS` (`carrier=8192,group=64`), else the defaults.
pub fn caps() -> Result<Caps, CliError> {
    match std::env::var("AISR_CAPS") {
        Ok(text) => Caps::parse_overrides(&text).map_err(|e| CliError::input(format!("AISR_CAPS: {e}"))),
        Err(_) => Ok(Caps::default()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: aisemiring::Error) -> CliError {
    let mut err = CliError::from(e);
    err.message = format!("{}: {}", path.display(), err.message);
    err
}

/// A fixture name, or a path to a file in the table format. Fixtures are
/// verified before they are handed out.
pub fn semiring(arg: &str) -> Result<FiniteSemiring, CliError> {
    if let Some(s) = fixtures::semiring(arg) {
        let report = verify_semiring_axioms(&s);
        if !report.is_valid() {
            return Err(CliError {
                code: 1,
                message: format!("fixture {arg} fails its verifier: {}", report.describe(&s).join("; ")),
            });
        }
        return Ok(s);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::input(format!(
            "{arg:?} is neither a fixture ({}) nor a file",
            SEMIRING_NAMES.join(", ")
        )));
    }
    FiniteSemiring::from_text(&read(path)?).map_err(|e| in_file(path, e))
}

pub fn group(arg: &str) -> Result<FiniteGroup, CliError> {
    if let Some(g) = fixtures::group(arg) {
        let report = verify_group(&g);
        if !report.is_valid() {
            return Err(CliError {
                code: 1,
                message: format!("fixture {arg} fails its verifier"),
            });
        }
        return Ok(g);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::input(format!(
            "{arg:?} is neither a group fixture ({}) nor a file",
            GROUP_NAMES.join(", ")
        )));
    }
    FiniteGroup::from_text(&read(path)?).map_err(|e| in_file(path, e))
}

/// Whether `arg` names a group rather than a semiring: a group fixture, or a
/// file with an `identity:` key.
pub fn is_group(arg: &str) -> bool {
    if fixtures::group(arg).is_some() {
        return true;
    }
    if fixtures::semiring(arg).is_some() {
        return false;
    }
    std::fs::read_to_string(arg).is_ok_and(|t| t.lines().any(|l| l.trim_start().starts_with("identity:")))
}

pub fn hypergraph(path: &Path) -> Result<Hypergraph, CliError> {
    Hypergraph::from_text(&read(path)?).map_err(|e| in_file(path, e))
}

/// Comma-separated element names.
pub fn elements(s: &FiniteSemiring, list: &str) -> Result<Vec<Elem>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| s.element(t).map_err(CliError::from))
        .collect()
}

pub fn fixtures(name: Option<&str>) -> Result<Outcome, CliError> {
    match name {
        Some(name) => {
            if fixtures::group(name).is_some() {
                let g = group(name)?;
                let text = g.to_text();
                Ok(Outcome::new(Status::Pass, text.clone(), json!({ "name": name, "group": text })))
            } else if fixtures::semiring(name).is_some() {
                let s = semiring(name)?;
                let text = s.to_text();
                Ok(Outcome::new(Status::Pass, text.clone(), json!({ "name": name, "semiring": text })))
            } else {
                Err(CliError::input(format!("no fixture named {name:?}")))
            }
        }
        None => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for &n in SEMIRING_NAMES {
                let s = semiring(n)?;
                text.push_str(&format!("{n:<20} semiring, {} elements, verified\n", s.len()));
                rows.push(json!({ "name": n, "kind": "semiring", "size": s.len(), "verified": true }));
            }
            for &n in GROUP_NAMES {
                let g = group(n)?;
                text.push_str(&format!("{n:<20} group, order {}, verified\n", g.len()));
                rows.push(json!({ "name": n, "kind": "group", "size": g.len(), "verified": true }));
            }
            Ok(Outcome::new(Status::Pass, text, json!(rows)))
        }
    }
}
