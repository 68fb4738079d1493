//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error (bad flags, size guards), 2 input
//! error (unreadable or invalid instance), 3 no feasible solution found.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::{self, BenchConfig, Method, SolverSettings};
use crate::error::Error;
use crate::eval::Tuning;
use crate::ga::{DEFAULT_CROSSOVER_RATE, DEFAULT_MUTATION_RATE};
use crate::instance::{generate_instance, Instance};
use crate::problem::Problem;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cellcut", version, about = "Cell formation by cut-based graph partitioning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance with one method and print the best partition.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "scga")]
        method: Method,
        #[arg(long, default_value_t = 100)]
        pop: usize,
        #[arg(long, default_value_t = 100)]
        gens: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Replicated runs over a population/generation sweep, written as CSV.
    Bench {
        instance: PathBuf,
        /// Comma-separated methods.
        #[arg(long, value_delimiter = ',', default_value = "cga,scga,ega")]
        method: Vec<Method>,
        #[arg(long, value_delimiter = ',', default_value = "100,200,300,400,500")]
        pop: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "100,200,300")]
        gens: Vec<usize>,
        #[arg(long, default_value_t = bench::DEFAULT_REPLICATIONS)]
        reps: usize,
        /// Replication `r` uses seed `seed + r`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        solver: SolverArgs,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave the timing column empty so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
        /// Also print an aligned table to standard error.
        #[arg(long)]
        table: bool,
    },
    /// Write a random instance.
    Generate {
        #[arg(long)]
        machines: usize,
        #[arg(long)]
        parts: usize,
        #[arg(long = "max-cell-size")]
        max_cell_size: usize,
        /// Longest routing drawn.
        #[arg(long = "max-len", default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the flow graph as an edge list.
    DumpGraph {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[arg(long, default_value_t = DEFAULT_CROSSOVER_RATE)]
    pc: f64,
    #[arg(long, default_value_t = DEFAULT_MUTATION_RATE)]
    pm: f64,
    /// `identity` or `power:<gamma>`.
    #[arg(long, default_value = "identity")]
    tuning: Tuning,
    /// k-means restarts per cluster count.
    #[arg(long, default_value_t = bench::DEFAULT_RESTARTS)]
    restarts: usize,
}

impl SolverArgs {
    fn settings(&self) -> SolverSettings {
        SolverSettings {
            crossover_rate: self.pc,
            mutation_rate: self.pm,
            tuning: self.tuning,
            restarts: self.restarts,
        }
    }
}

/// Maps a library error to its exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Syntax { .. } | Error::Semantic(_) | Error::Io(_) => EXIT_INPUT,
        Error::TooManyMachines { .. }
        | Error::InvalidParameter(_)
        | Error::PopulationExhausted { .. } => EXIT_USAGE,
        Error::CutIndexOutOfRange { .. } | Error::Inconsistent(_) => EXIT_INPUT,
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<Problem, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let instance = Instance::parse(&text)?;
    for w in instance.warnings() {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(Problem::new(instance))
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(Error::from),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Solve {
            instance,
            method,
            pop,
            gens,
            seed,
            solver,
        } => {
            let problem = load(&instance, err)?;
            let s = bench::solve(&problem, method, pop, gens, seed, &solver.settings())?;
            writeln!(out, "method: {method}")?;
            match &s.best {
                Some(e) => {
                    writeln!(out, "cells: {}", e.partition.cell_count())?;
                    for (i, cell) in e.partition.to_one_based().iter().enumerate() {
                        let names: Vec<String> = cell.iter().map(|m| format!("M{m}")).collect();
                        writeln!(out, "  cell {}: {}", i + 1, names.join(" "))?;
                    }
                    writeln!(out, "traffic: {}", e.traffic)?;
                    writeln!(out, "feasible: {}", if e.feasible { "yes" } else { "no" })?;
                    writeln!(
                        out,
                        "violations: oversized cells {}, split cohabit pairs {}, joined separate pairs {}",
                        e.violations.oversized_cells,
                        e.violations.split_cohabit,
                        e.violations.joined_separate
                    )?;
                }
                None => {
                    writeln!(out, "cells: none")?;
                    writeln!(out, "feasible: no (no partition satisfies the constraints)")?;
                }
            }
            writeln!(out, "wall time: {:.3} s", s.wall_time.as_secs_f64())?;
            Ok(if s.feasible() { EXIT_OK } else { EXIT_UNFEASIBLE })
        }
        Command::Bench {
            instance,
            method,
            pop,
            gens,
            reps,
            seed,
            solver,
            out: path,
            no_timing,
            table,
        } => {
            let problem = load(&instance, err)?;
            let config = BenchConfig {
                methods: method,
                populations: pop,
                generations: gens,
                replications: reps,
                base_seed: seed,
                settings: solver.settings(),
            };
            let report = bench::run_bench(&problem, &config)?;
            emit(&report.to_csv(!no_timing), path.as_deref(), out)?;
            if table {
                err.write_all(report.to_table().as_bytes())?;
            }
            Ok(EXIT_OK)
        }
        Command::Generate {
            machines,
            parts,
            max_cell_size,
            max_len,
            seed,
            out: path,
        } => {
            let inst = generate_instance(machines, parts, max_cell_size, max_len, seed)?;
            emit(&inst.serialize(), path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::DumpGraph { instance, out: path } => {
            let problem = load(&instance, err)?;
            emit(&problem.graph().dump(), path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
    }
}
