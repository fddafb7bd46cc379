//! `crlab`: batch front end for crlab-core.
//!
//! Exit codes: 0 success, 1 failed verdict, 2 parse or validation error.

mod io;
mod report;
mod selftest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crlab_core::borel_search::search_max_dimension_with;
use crlab_core::commrank::{
    check_dimension_bound, satisfies_rank_condition, BoundStatus, DEFAULT_TRIALS,
};
use crlab_core::constructions::{BuiltSpace, Family, FamilySpec};
use crlab_core::exact_linalg::field::init_prime;
use crlab_core::triangularize::triangularize_rank_one;
use crlab_core::verify::{flanders_check, structure_check};
use crlab_core::{RuleSet, StructureStatus};

use io::Space;

#[derive(Parser, Debug)]
#[command(
    name = "crlab",
    version,
    about = "Exact experiments on matrix spaces with bounded commutator rank"
)]
struct Cli {
    /// Add wall time to the report. Reports are otherwise byte-reproducible.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a named construction to a subspace file.
    Construct {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        /// Column count for `flanders` (defaults to n).
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        variant: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Commutator-rank profile and dimension-bound check.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also test the rank condition at this level.
        #[arg(long)]
        k: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simultaneous triangularization of a rank-one commutator family.
    Triangularize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive search over triangular-invariant spaces.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value = "full")]
        rules: RuleSet,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Match an equality-case space against the known normal forms.
    VerifyStructure {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bound identities and the exceptional-space table.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Io(String),
    Compute(String),
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }

    pub fn io(msg: impl Into<String>) -> Self {
        CliError::Io(msg.into())
    }

    fn json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Parse(m) => ("parse", m),
            CliError::Io(m) => ("io", m),
            CliError::Compute(m) => ("compute", m),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

impl From<crlab_core::Error> for CliError {
    fn from(e: crlab_core::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

/// Result of a command: the report and whether its verdict passed.
struct Done {
    report: Value,
    ok: bool,
    output: Option<PathBuf>,
}

fn emit(value: &Value, output: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn analyze(
    file: &Path,
    trials: usize,
    seed: u64,
    k: Option<usize>,
) -> Result<(Value, bool), CliError> {
    match io::read_space(file)? {
        Space::Square(v) => {
            let b = check_dimension_bound(&v, trials, seed)?;
            let ok = !matches!(b.status, BoundStatus::Fail { .. });
            let condition = match k {
                Some(k) => Some(report::rank_verdict(
                    k,
                    &satisfies_rank_condition(&v, k, trials, seed)?,
                )),
                None => None,
            };
            let value = json!({
                "profile": report::profile(&b.profile),
                "bound": report::bound(&b),
                "rank_condition": condition,
            });
            Ok((value, ok))
        }
        Space::Rect(v) => {
            let r = flanders_check(&v, trials, seed);
            Ok((json!({ "flanders": report::flanders(&r) }), r.pass))
        }
    }
}

fn run(command: &Command) -> Result<Done, CliError> {
    let done = |report, ok, output: &Option<PathBuf>| Done {
        report,
        ok,
        output: output.clone(),
    };
    match command {
        Command::Construct {
            family,
            n,
            k,
            l,
            cols,
            variant,
            output,
        } => {
            let spec = FamilySpec {
                family: *family,
                n: *n,
                k: *k,
                l: *l,
                cols: *cols,
                variant: variant.clone(),
            };
            let space = match spec.build()? {
                BuiltSpace::Square(v) => Space::Square(v),
                BuiltSpace::Rect(v) => Space::Rect(v),
            };
            io::write_space(output, &space)?;
            let dim = match &space {
                Space::Square(v) => v.dim(),
                Space::Rect(v) => v.dim(),
            };
            let report = json!({ "family": family.name(), "n": n, "dim": dim, "file": output });
            Ok(done(report, true, &None))
        }
        Command::Analyze {
            file,
            trials,
            seed,
            k,
            output,
        } => {
            let (mut report, ok) = analyze(file, *trials, *seed, *k)?;
            report["trials"] = json!(trials);
            report["seed"] = json!(seed);
            Ok(done(report, ok, output))
        }
        Command::Triangularize { file, output } => {
            let v = io::read_square(file)?;
            let (report, ok) = match triangularize_rank_one(&v) {
                Ok(t) => (report::triangularization(&t), t.is_valid()),
                Err(e) => (report::triangularize_error(&e), false),
            };
            Ok(done(report, ok, output))
        }
        Command::Search {
            n,
            k,
            trials,
            seed,
            rules,
            output,
            ..
        } => {
            let r = search_max_dimension_with(*n, *k, *trials, *seed, *rules)?;
            Ok(done(report::search(&r), r.matches_bound(), output))
        }
        Command::VerifyStructure {
            file,
            trials,
            seed,
            output,
        } => {
            let v = io::read_square(file)?;
            let s = structure_check(&v, *trials, *seed)?;
            let ok = s.status != StructureStatus::NoMatch;
            let mut report = report::structure(&s);
            report["trials"] = json!(trials);
            report["seed"] = json!(seed);
            Ok(done(report, ok, output))
        }
        Command::Selftest { trials, seed } => {
            let out = selftest::run(*trials, *seed);
            Ok(done(out.report, out.passed, &None))
        }
    }
}

fn setup(cli: &Cli) -> Result<(), CliError> {
    if let Ok(p) = std::env::var("CRLAB_PRIME") {
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| CliError::parse(format!("CRLAB_PRIME is not an integer: {p:?}")))?;
        init_prime(p)?;
    }
    let threads = match cli.command {
        Command::Search { jobs, .. } => jobs,
        _ => 1,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Compute(e.to_string()))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::parse(e.to_string().trim_end());
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&err.json()).expect("serializable")
            );
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let result = setup(&cli)
        .and_then(|_| run(&cli.command))
        .and_then(|done| {
            let mut report = json!({
                "command": argv[1..],
                "results": done.report,
            });
            if cli.timing {
                report["wall_time_s"] = json!(start.elapsed().as_secs_f64());
            }
            emit(&report, done.output.as_deref())?;
            Ok(done.ok)
        });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&e.json()).expect("serializable")
            );
            ExitCode::from(2)
        }
    }
}
