//! Replicated solver runs, aggregated per method and parameter setting.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Duration;

use rayon::prelude::*;

use crate::baselines::{exhaustive_oracle, run_ega, run_multikmeans};
use crate::error::{Error, Result};
use crate::eval::{Evaluation, Tuning};
use crate::flow::Flow;
use crate::ga::{run_ga, GaParams, Variant, DEFAULT_CROSSOVER_RATE, DEFAULT_MUTATION_RATE};
use crate::problem::Problem;

pub const DEFAULT_POPULATIONS: [usize; 5] = [100, 200, 300, 400, 500];
pub const DEFAULT_GENERATIONS: [usize; 3] = [100, 200, 300];
pub const DEFAULT_REPLICATIONS: usize = 20;
pub const DEFAULT_RESTARTS: usize = 10;

pub const CSV_HEADER: [&str; 7] = [
    "method",
    "pop",
    "gens",
    "avg_traffic",
    "best_traffic",
    "avg_cpu_s",
    "feasible_rate",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Cga,
    Scga,
    Ega,
    MultiKmeans,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Cga,
        Method::Scga,
        Method::Ega,
        Method::MultiKmeans,
        Method::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Cga => "cga",
            Method::Scga => "scga",
            Method::Ega => "ega",
            Method::MultiKmeans => "multikmeans",
            Method::Oracle => "oracle",
        }
    }

    /// Whether population size and generation count apply.
    pub fn is_genetic(self) -> bool {
        matches!(self, Method::Cga | Method::Scga | Method::Ega)
    }

    /// Whether repeated runs with different seeds can differ.
    pub fn is_stochastic(self) -> bool {
        self != Method::Oracle
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

/// Settings shared by `solve` and `bench` that are not part of the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverSettings {
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub tuning: Tuning,
    /// k-means restarts per cluster count.
    pub restarts: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            crossover_rate: DEFAULT_CROSSOVER_RATE,
            mutation_rate: DEFAULT_MUTATION_RATE,
            tuning: Tuning::Identity,
            restarts: DEFAULT_RESTARTS,
        }
    }
}

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub method: Method,
    /// Best partition found. Only the oracle can return `None`, when no
    /// feasible partition exists.
    pub best: Option<Evaluation>,
    pub wall_time: Duration,
}

impl Solution {
    pub fn feasible(&self) -> bool {
        self.best.as_ref().is_some_and(|e| e.feasible)
    }

    /// Traffic of the best partition when it is feasible.
    pub fn feasible_traffic(&self) -> Option<Flow> {
        self.best.as_ref().filter(|e| e.feasible).map(|e| e.traffic)
    }
}

/// Runs one method once. `pop` and `gens` are ignored by non-genetic methods.
pub fn solve(
    problem: &Problem,
    method: Method,
    pop: usize,
    gens: usize,
    seed: u64,
    settings: &SolverSettings,
) -> Result<Solution> {
    let params = GaParams {
        population_size: pop,
        generations: gens,
        crossover_rate: settings.crossover_rate,
        mutation_rate: settings.mutation_rate,
        variant: if method == Method::Cga { Variant::Cga } else { Variant::Scga },
        seed,
        tuning: settings.tuning,
    };
    let (best, wall_time) = match method {
        Method::Cga | Method::Scga => {
            let r = run_ga(problem, &params)?;
            (Some(r.best_evaluation), r.wall_time)
        }
        Method::Ega => {
            let r = run_ega(problem, &params)?;
            (Some(r.best_evaluation), r.wall_time)
        }
        Method::MultiKmeans => {
            let r = run_multikmeans(problem, settings.restarts, seed)?;
            (Some(r.best), r.wall_time)
        }
        Method::Oracle => {
            let r = exhaustive_oracle(problem)?;
            (r.best, r.wall_time)
        }
    };
    Ok(Solution {
        method,
        best,
        wall_time,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub methods: Vec<Method>,
    pub populations: Vec<usize>,
    pub generations: Vec<usize>,
    pub replications: usize,
    pub base_seed: u64,
    pub settings: SolverSettings,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            methods: vec![Method::Cga, Method::Scga, Method::Ega],
            populations: DEFAULT_POPULATIONS.to_vec(),
            generations: DEFAULT_GENERATIONS.to_vec(),
            replications: DEFAULT_REPLICATIONS,
            base_seed: 0,
            settings: SolverSettings::default(),
        }
    }
}

/// One aggregated line of the report.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub method: Method,
    /// `None` for methods without a population.
    pub pop: Option<usize>,
    pub gens: Option<usize>,
    pub replications: usize,
    pub feasible_runs: usize,
    /// Mean traffic over the feasible runs; `None` when the row is UF.
    pub avg_traffic: Option<f64>,
    pub best_traffic: Option<Flow>,
    pub avg_cpu_s: f64,
}

impl BenchRow {
    pub fn is_unfeasible(&self) -> bool {
        self.feasible_runs == 0
    }

    pub fn feasible_rate(&self) -> f64 {
        self.feasible_runs as f64 / self.replications as f64
    }

    fn aggregate(method: Method, pop: Option<usize>, gens: Option<usize>, runs: &[Solution]) -> Self {
        let feasible: Vec<Flow> = runs.iter().filter_map(Solution::feasible_traffic).collect();
        let avg_traffic = (!feasible.is_empty())
            .then(|| feasible.iter().map(|f| f.to_f64()).sum::<f64>() / feasible.len() as f64);
        let avg_cpu_s =
            runs.iter().map(|r| r.wall_time.as_secs_f64()).sum::<f64>() / runs.len() as f64;
        BenchRow {
            method,
            pop,
            gens,
            replications: runs.len(),
            feasible_runs: feasible.len(),
            avg_traffic,
            best_traffic: feasible.iter().copied().min(),
            avg_cpu_s,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

struct Job {
    row: usize,
    method: Method,
    pop: usize,
    gens: usize,
    seed: u64,
}

/// Runs the full sweep. Genetic methods get one row per (pop, gens) pair;
/// other methods get a single row. The oracle is deterministic and runs
/// once. Runs execute in parallel; rows keep sweep order.
pub fn run_bench(problem: &Problem, config: &BenchConfig) -> Result<BenchReport> {
    if config.replications == 0 {
        return Err(Error::InvalidParameter("replications must be at least 1".into()));
    }
    let mut keys: Vec<(Method, Option<usize>, Option<usize>)> = Vec::new();
    let mut jobs = Vec::new();
    for &method in &config.methods {
        let settings: Vec<(Option<usize>, Option<usize>)> = if method.is_genetic() {
            config
                .populations
                .iter()
                .flat_map(|&p| config.generations.iter().map(move |&g| (Some(p), Some(g))))
                .collect()
        } else {
            vec![(None, None)]
        };
        let reps = if method.is_stochastic() { config.replications } else { 1 };
        for (pop, gens) in settings {
            let row = keys.len();
            keys.push((method, pop, gens));
            for rep in 0..reps {
                jobs.push(Job {
                    row,
                    method,
                    pop: pop.unwrap_or(0),
                    gens: gens.unwrap_or(0),
                    seed: config.base_seed.wrapping_add(rep as u64),
                });
            }
        }
    }

    let outcomes: Vec<Result<Solution>> = jobs
        .par_iter()
        .map(|j| solve(problem, j.method, j.pop, j.gens, j.seed, &config.settings))
        .collect();

    let mut per_row: Vec<Vec<Solution>> = vec![Vec::new(); keys.len()];
    for (job, outcome) in jobs.iter().zip(outcomes) {
        per_row[job.row].push(outcome?);
    }
    let rows = keys
        .into_iter()
        .zip(&per_row)
        .map(|((method, pop, gens), runs)| BenchRow::aggregate(method, pop, gens, runs))
        .collect();
    Ok(BenchReport { rows })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl BenchReport {
    /// Writes the CSV report. With `timing` off the `avg_cpu_s` column is
    /// left empty so the output depends only on the inputs.
    pub fn write_csv<W: Write>(&self, out: W, timing: bool) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(CSV_HEADER).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record([
                r.method.name().to_string(),
                opt(r.pop),
                opt(r.gens),
                opt(r.avg_traffic.map(|t| format!("{t:.6}"))),
                opt(r.best_traffic),
                if timing { format!("{:.6}", r.avg_cpu_s) } else { String::new() },
                format!("{:.4}", r.feasible_rate()),
            ])
            .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self, timing: bool) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, timing).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    /// Human-readable grid; rows with no feasible run show `UF`.
    pub fn to_table(&self) -> String {
        let header = ["method", "pop", "gens", "avg traffic", "best traffic", "cpu (s)", "feasible"];
        let mut cells: Vec<[String; 7]> = vec![header.map(String::from)];
        for r in &self.rows {
            let (avg, best) = if r.is_unfeasible() {
                ("UF".to_string(), "UF".to_string())
            } else {
                (
                    format!("{:.2}", r.avg_traffic.unwrap_or_default()),
                    opt(r.best_traffic),
                )
            };
            cells.push([
                r.method.name().to_string(),
                opt(r.pop),
                opt(r.gens),
                avg,
                best,
                format!("{:.3}", r.avg_cpu_s),
                format!("{}/{}", r.feasible_runs, r.replications),
            ]);
        }
        let widths: Vec<usize> = (0..7).map(|c| cells.iter().map(|r| r[c].len()).max().unwrap()).collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (s, &w))| if c == 0 { format!("{s:<w$}") } else { format!("{s:>w$}") })
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_instance, Instance};

    fn small() -> Problem {
        Problem::new(generate_instance(8, 20, 5, 5, 3).unwrap())
    }

    fn config(methods: Vec<Method>, reps: usize) -> BenchConfig {
        BenchConfig {
            methods,
            populations: vec![20],
            generations: vec![10],
            replications: reps,
            base_seed: 5,
            settings: SolverSettings::default(),
        }
    }

    #[test]
    fn one_setting_aggregates_all_replications() {
        let report = run_bench(&small(), &config(vec![Method::Scga], 2)).unwrap();
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.replications, 2);
        assert!(row.avg_traffic.unwrap() >= row.best_traffic.unwrap().to_f64());
    }

    #[test]
    fn identical_seeds_give_equal_average_and_best() {
        let p = small();
        let runs: Vec<Solution> = (0..3)
            .map(|_| solve(&p, Method::Scga, 20, 10, 9, &SolverSettings::default()).unwrap())
            .collect();
        let row = BenchRow::aggregate(Method::Scga, Some(20), Some(10), &runs);
        assert_eq!(row.avg_traffic, Some(row.best_traffic.unwrap().to_f64()));
    }

    #[test]
    fn rows_follow_sweep_order() {
        let mut cfg = config(vec![Method::Ega, Method::MultiKmeans, Method::Oracle, Method::Cga], 2);
        cfg.populations = vec![20, 30];
        cfg.generations = vec![5, 10];
        let report = run_bench(&small(), &cfg).unwrap();
        let keys: Vec<(Method, Option<usize>, Option<usize>)> =
            report.rows.iter().map(|r| (r.method, r.pop, r.gens)).collect();
        assert_eq!(
            keys,
            vec![
                (Method::Ega, Some(20), Some(5)),
                (Method::Ega, Some(20), Some(10)),
                (Method::Ega, Some(30), Some(5)),
                (Method::Ega, Some(30), Some(10)),
                (Method::MultiKmeans, None, None),
                (Method::Oracle, None, None),
                (Method::Cga, Some(20), Some(5)),
                (Method::Cga, Some(20), Some(10)),
                (Method::Cga, Some(30), Some(5)),
                (Method::Cga, Some(30), Some(10)),
            ]
        );
        assert_eq!(report.rows[5].replications, 1);
    }

    #[test]
    fn unfeasible_rows_have_empty_traffic() {
        let inst = Instance::parse(
            "machines 3\nmax_cell_size 1\npart 5 : 1 2 3\ncohabit 1 2\n",
        )
        .unwrap();
        // Only 8 distinct sorted chromosomes exist for three machines and K = 3.
        let mut cfg = config(vec![Method::Scga, Method::Oracle], 2);
        cfg.populations = vec![8];
        let report = run_bench(&Problem::new(inst), &cfg).unwrap();
        let csv = report.to_csv(false);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert_eq!(lines[1], "scga,8,10,,,,0.0000");
        assert_eq!(lines[2], "oracle,,,,,,0.0000");
        assert!(report.to_table().contains("UF"));
    }

    #[test]
    fn csv_is_deterministic_without_timing() {
        let cfg = config(vec![Method::Cga, Method::Scga, Method::Ega, Method::MultiKmeans], 3);
        let a = run_bench(&small(), &cfg).unwrap().to_csv(false);
        let b = run_bench(&small(), &cfg).unwrap().to_csv(false);
        assert_eq!(a, b);
        assert!(!a.contains('\r'));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("kmeans".parse::<Method>().is_err());
    }
}
