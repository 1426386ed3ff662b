//! `gpd`: JSON in, JSON out. The payload goes to stdout with sorted keys;
//! messages go to stderr. Exit codes are 0 for ok, 1 for a violated
//! invariant and 2 for any other error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use groupoidify::degroupoidify::{generating_function, inner_product, matrix, vector};
use groupoidify::groupoid::GroupoidTables;
use groupoidify::interchange::{groupoid_from_tables, OverTables, SpanTables};
use groupoidify::span::{compose, set_pullback_cap, DEFAULT_PULLBACK_CAP};
use groupoidify::{hecke, oscillator, selftest};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "gpd", version, about = "Exact degroupoidification of finite groupoids and spans")]
struct Cli {
    /// Cap on candidate triples examined by a weak pullback.
    #[arg(long, global = true, env = "GPD_CAP", default_value_t = DEFAULT_PULLBACK_CAP)]
    cap: u64,
    /// Also write the full result record (status, payload, timing) to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cardinality of a groupoid given by explicit tables.
    Card { groupoid: PathBuf },
    /// Vector of a groupoid over a base.
    Vector { over: PathBuf },
    /// Matrix of a span.
    Matrix { span: PathBuf },
    /// The composite span T∘S.
    Compose { t: PathBuf, s: PathBuf },
    /// Cardinality of the inner product groupoid.
    Inner { phi: PathBuf, psi: PathBuf },
    /// Generating function of a groupoid over finite sets by size.
    Genfun {
        over: PathBuf,
        #[arg(long)]
        max: usize,
    },
    /// Oscillator checks.
    Osc {
        #[command(subcommand)]
        action: OscAction,
    },
    /// Hecke algebra checks.
    Hecke {
        #[command(subcommand)]
        action: HeckeAction,
    },
    /// The algebraic laws on seeded random data.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum OscAction {
    /// Commutation, normal ordering and diagram counts at a size bound.
    Verify {
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum HeckeAction {
    /// Geometric relations, orbits and structure constants over a prime field.
    Verify {
        #[arg(long)]
        q: u32,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("bad JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Library(#[from] groupoidify::Error),
}

impl Failure {
    fn is_violation(&self) -> bool {
        matches!(self, Failure::Library(groupoidify::Error::Violation(_)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Serialize)]
struct CommandResult {
    status: Status,
    payload: Value,
    timing_ms: u128,
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|source| Failure::Read { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| Failure::Json { path: path.into(), source })
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

/// A report whose `ok` flag decides between ok and violation.
fn report(x: impl Serialize) -> (Status, Value) {
    let value = to_value(x);
    let ok = value.get("ok").and_then(Value::as_bool).unwrap_or(false);
    (if ok { Status::Ok } else { Status::Violation }, value)
}

fn execute(command: &Command) -> Result<(Status, Value), Failure> {
    let ok = |v: Value| Ok((Status::Ok, v));
    match command {
        Command::Card { groupoid } => {
            let tables: GroupoidTables = read(groupoid)?;
            ok(to_value(groupoid_from_tables(&tables)?.cardinality()))
        }
        Command::Vector { over } => ok(to_value(vector(&read::<OverTables>(over)?.import()?))),
        Command::Matrix { span } => ok(to_value(matrix(&read::<SpanTables>(span)?.import()?))),
        Command::Compose { t, s } => {
            let (t, s) = (read::<SpanTables>(t)?.import()?, read::<SpanTables>(s)?.import()?);
            ok(to_value(SpanTables::export(&compose(&t, &s)?)?))
        }
        Command::Inner { phi, psi } => {
            let (phi, psi) = (read::<OverTables>(phi)?.import()?, read::<OverTables>(psi)?.import()?);
            ok(to_value(inner_product(&phi, &psi)?))
        }
        Command::Genfun { over, max } => ok(to_value(generating_function(&read::<OverTables>(over)?.import()?, *max)?)),
        Command::Osc { action: OscAction::Verify { max_n } } => Ok(report(oscillator::verify(*max_n)?)),
        Command::Hecke { action: HeckeAction::Verify { q } } => Ok(report(hecke::verify(*q)?)),
        Command::Selftest { seed } => Ok(report(selftest::run(*seed))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_pullback_cap(cli.cap);
    let started = Instant::now();
    let (status, payload) = match execute(&cli.command) {
        Ok(result) => result,
        Err(failure) => {
            eprintln!("gpd: {failure}");
            let status = if failure.is_violation() { Status::Violation } else { Status::Error };
            let key = if status == Status::Violation { "violation" } else { "error" };
            (status, serde_json::json!({ key: failure.to_string() }))
        }
    };
    let timing_ms = started.elapsed().as_millis();
    if status != Status::Error {
        println!("{}", serde_json::to_string_pretty(&payload).expect("JSON values serialize"));
    }
    if let Some(path) = &cli.json_out {
        let record = CommandResult { status, payload, timing_ms };
        let text = serde_json::to_string_pretty(&to_value(&record)).expect("JSON values serialize");
        if let Err(source) = fs::write(path, text + "\n") {
            eprintln!("gpd: {}", Failure::Write { path: path.clone(), source });
            return ExitCode::from(Status::Error.exit_code());
        }
    }
    ExitCode::from(status.exit_code())
}
