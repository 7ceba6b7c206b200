//! Subcommand dispatch. [`run`] is pure apart from reading input files, so it can
//! be driven in-process by tests.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tiling_core::{
    cancelers, lcm_box, pole_report, random_split_cover, search_exact_covers, system_sum, verify_partition,
    witness, CosetSystem, PoleProbeParams, RootPoint, SearchSpec, WitnessError, DEFAULT_CELL_BUDGET,
    DEFAULT_TERM_BUDGET,
};

use crate::document::{emit_system, parse_system};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_THEOREM_VIOLATED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tiling", version, about = "Exact tilings of Z^d by cosets of Cartesian sublattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Budget {
    /// Maximum number of fundamental-box cells (and numerator terms) to touch.
    #[arg(long, value_name = "CELLS")]
    pub budget: Option<u64>,
}

impl Budget {
    fn cells(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_CELL_BUDGET)
    }

    fn terms(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_TERM_BUDGET)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a system partitions Z^d by counting covers of the period box.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
    /// Check the generating-function identity sum_j G_j = prod_i 1/(1 - x_i).
    Identity {
        file: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
    /// Extract the repeated maximal-index shape of a tiling.
    Witness {
        file: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
    /// Pole orders of the system's generating functions at a root-of-unity point.
    Poles {
        file: PathBuf,
        /// Coordinates as k1/N1,...,kd/Nd (fractions of a full turn).
        #[arg(long)]
        point: String,
        /// Also estimate the order numerically along random lines.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: Budget,
    },
    /// Enumerate every tiling by cosets with moduli at most --max-n.
    Search {
        #[arg(long = "dim")]
        dim: usize,
        #[arg(long = "max-n")]
        max_n: u64,
        #[arg(long)]
        distinct_shapes: bool,
        #[arg(long)]
        exclude_trivial: bool,
        #[arg(long)]
        max_cosets: Option<usize>,
        /// Accepted for interface uniformity; the search is deterministic.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long = "timeout-ms")]
        timeout_ms: Option<u64>,
        /// Include wall time in the report (makes output non-deterministic).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Print a random tiling produced by repeated coset splitting.
    Gen {
        #[arg(long = "dim")]
        dim: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_factor: u64,
    },
}

/// Everything a command invocation produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Failure {
    kind: &'static str,
    message: String,
    code: i32,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        kind: "input",
        message: message.to_string(),
        code: EXIT_USAGE,
    }
}

fn error_json(kind: &str, message: &str) -> String {
    let mut s = serde_json::to_string(&json!({ "error": { "kind": kind, "message": message } })).expect("json");
    s.push('\n');
    s
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let text = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: error_json("usage", text.trim_end()),
                    code: EXIT_USAGE,
                },
            };
        }
    };
    let mut stderr = String::new();
    match dispatch(cli.command, &mut stderr) {
        Ok((value, code)) => Outcome {
            stdout: value,
            stderr,
            code,
        },
        Err(f) => {
            stderr.push_str(&error_json(f.kind, &f.message));
            Outcome {
                stdout: String::new(),
                stderr,
                code: f.code,
            }
        }
    }
}

fn load(file: &PathBuf, stderr: &mut String) -> Result<CosetSystem, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let parsed = parse_system(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    for w in &parsed.warnings {
        stderr.push_str(&serde_json::to_string(&json!({ "warning": w })).expect("json"));
        stderr.push('\n');
    }
    Ok(parsed.system)
}

fn dispatch(command: Command, stderr: &mut String) -> Result<(String, i32), Failure> {
    let (value, code): (Value, i32) = match command {
        Command::Verify { file, budget } => {
            let system = load(&file, stderr)?;
            let r = verify_partition(&system, budget.cells()).map_err(usage)?;
            let lengths = lcm_box(&system).map_err(usage)?;
            let code = if r.is_partition { EXIT_OK } else { EXIT_NEGATIVE };
            (report::verification(&r, lengths.lengths()), code)
        }
        Command::Identity { file, budget } => {
            let system = load(&file, stderr)?;
            let sum = system_sum(&system, budget.terms()).map_err(usage)?;
            let holds = sum.numerator == tiling_core::genfun::tiling_numerator(&sum.denom_exponents);
            (report::identity(holds, &sum), if holds { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Witness { file, budget } => {
            let system = load(&file, stderr)?;
            match witness(&system, budget.cells()) {
                Ok(w) => {
                    let others = cancelers(&system, w.j_star).map_err(usage)?;
                    (report::witness(&system, &w, &others), EXIT_OK)
                }
                Err(WitnessError::Core(e)) => return Err(usage(e)),
                Err(WitnessError::TheoremViolated { j_star, reason, .. }) => {
                    stderr.push_str(&error_json("theorem_violated", &reason));
                    let value = json!({
                        "status": "theorem_violated",
                        "j_star": j_star,
                        "reason": reason,
                        "system": report::system(&system),
                    });
                    return Ok((report::render(&value), EXIT_THEOREM_VIOLATED));
                }
                Err(e @ (WitnessError::NotPartition | WitnessError::Trivial)) => {
                    let reason = match e {
                        WitnessError::NotPartition => "not_partition",
                        _ => "trivial_system",
                    };
                    stderr.push_str(&error_json("precondition", &e.to_string()));
                    (json!({ "status": "precondition_failed", "reason": reason }), EXIT_NEGATIVE)
                }
            }
        }
        Command::Poles {
            file,
            point,
            numeric,
            seed,
            budget,
        } => {
            let system = load(&file, stderr)?;
            let point: RootPoint = point.parse().map_err(usage)?;
            let params = PoleProbeParams {
                seed,
                ..PoleProbeParams::default()
            };
            let r = pole_report(&system, &point, budget.terms(), numeric.then_some(&params)).map_err(usage)?;
            (report::poles(&r), EXIT_OK)
        }
        Command::Search {
            dim,
            max_n,
            distinct_shapes,
            exclude_trivial,
            max_cosets,
            seed: _,
            threads,
            timeout_ms,
            timing,
            budget,
        } => {
            let mut spec = SearchSpec::new(dim, max_n);
            spec.distinct_shapes_only = distinct_shapes;
            spec.exclude_trivial = exclude_trivial;
            spec.max_cosets = max_cosets;
            spec.threads = threads;
            spec.timeout = timeout_ms.map(Duration::from_millis);
            spec.cell_budget = budget.cells();
            if threads == Some(0) {
                return Err(usage("--threads must be positive"));
            }
            let result = search_exact_covers(&spec).map_err(usage)?;
            (report::search(&spec, &result, timing), EXIT_OK)
        }
        Command::Gen {
            dim,
            steps,
            seed,
            max_factor,
        } => {
            let system = random_split_cover(dim, steps, max_factor, seed).map_err(usage)?;
            let name = format!("split-d{dim}-s{steps}-seed{seed}");
            return Ok((emit_system(&system, Some(name)), EXIT_OK));
        }
    };
    Ok((report::render(&value), code))
}
