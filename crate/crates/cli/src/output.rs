use std::process::ExitCode;

use aisemiring::Error;
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Budget,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Budget => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Budget => "budget-exhausted",
        }
    }
}

/// What a command produced: a text body, the same content as JSON, and the
/// seed it ran with.
pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub json: Value,
    pub seed: Option<u64>,
}

impl Outcome {
    pub fn new(status: Status, text: String, json: Value) -> Self {
        Outcome {
            status,
            text,
            json,
            seed: None,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeCap { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub fn emit(command: &str, json: bool, result: Result<Outcome, CliError>) -> ExitCode {
    match result {
        Ok(out) => {
            if json {
                let doc = json!({
                    "tool": "aisr",
                    "version": VERSION,
                    "command": command,
                    "seed": out.seed,
                    "status": out.status.label(),
                    "result": out.json,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                let seed = out.seed.map_or("none".to_string(), |s| s.to_string());
                println!("# aisr {VERSION} {command} seed={seed}");
                print!("{}", out.text);
                if !out.text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(out.status.code())
        }
        Err(e) => {
            if json {
                let doc = json!({
                    "tool": "aisr",
                    "version": VERSION,
                    "command": command,
                    "seed": null,
                    "status": "error",
                    "error": e.message,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
