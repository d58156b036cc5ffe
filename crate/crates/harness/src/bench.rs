//! Benchmark runner: proven-optimum runs and reach-target runs.

use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use invgraph::{Direction, Error, EventKind};

use crate::problem::{parse_problem, ProblemFile, SolverKind};
use crate::run::{run_solver, RunOptions};

pub const COLUMNS: [&str; 9] = [
    "problem",
    "solver",
    "epsilon",
    "value",
    "certificate",
    "seconds",
    "classify_calls",
    "objective_calls",
    "splits",
];

#[derive(Debug, Clone, PartialEq)]
pub enum RowOutcome {
    Solved {
        value: f64,
        certificate: f64,
        classify_calls: u64,
        objective_calls: u64,
        splits: u64,
    },
    TimedOut,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub problem: String,
    pub solver: SolverKind,
    pub epsilon: f64,
    pub seconds: f64,
    pub outcome: RowOutcome,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchmarkReport {
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone, Default)]
pub struct BenchOptions {
    /// Overrides each problem's solver list.
    pub solvers: Option<Vec<SolverKind>>,
    pub timeout: Option<Duration>,
}

/// Loads every `*.json` problem in `dir`, sorted by file name.
pub fn load_problems(dir: &Path) -> Result<Vec<ProblemFile>> {
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            paths.push(path);
        }
    }
    paths.sort();
    paths.iter().map(|p| Ok(parse_problem(p)?)).collect()
}

fn solvers_for<'a>(p: &'a ProblemFile, opts: &'a BenchOptions) -> Result<&'a [SolverKind]> {
    let s = opts.solvers.as_deref().unwrap_or(&p.solvers);
    if s.is_empty() {
        bail!("{}: empty solver list", p.name);
    }
    Ok(s)
}

/// Runs every (problem, solver) pair in order and writes one CSV row each.
/// Timeouts and solver failures are recorded in the row and the run goes on.
pub fn run_benchmark(problems: &[ProblemFile], opts: &BenchOptions, out: impl Write) -> Result<BenchmarkReport> {
    for p in problems {
        solvers_for(p, opts)?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    let mut report = BenchmarkReport::default();
    for p in problems {
        for &solver in solvers_for(p, opts)? {
            let run = RunOptions {
                timeout: opts.timeout,
                ..RunOptions::default()
            };
            let start = Instant::now();
            let result = run_solver(p, solver, &run);
            let seconds = start.elapsed().as_secs_f64();
            let outcome = match result {
                Ok(r) => RowOutcome::Solved {
                    value: r.value,
                    certificate: r.accuracy_certificate,
                    classify_calls: r.stats.classification_calls,
                    objective_calls: r.stats.objective_calls,
                    splits: r.stats.splits,
                },
                Err(Error::Timeout { .. }) => RowOutcome::TimedOut,
                Err(e) => RowOutcome::Failed(e.to_string()),
            };
            let row = ReportRow {
                problem: p.name.clone(),
                solver,
                epsilon: p.epsilon,
                seconds,
                outcome,
            };
            w.write_record(csv_fields(&row))?;
            report.rows.push(row);
        }
    }
    w.flush()?;
    Ok(report)
}

fn csv_fields(row: &ReportRow) -> Vec<String> {
    let head = [row.problem.clone(), row.solver.label().to_string(), row.epsilon.to_string()];
    let tail: [String; 6] = match &row.outcome {
        RowOutcome::Solved {
            value,
            certificate,
            classify_calls,
            objective_calls,
            splits,
        } => [
            value.to_string(),
            certificate.to_string(),
            format!("{:.6}", row.seconds),
            classify_calls.to_string(),
            objective_calls.to_string(),
            splits.to_string(),
        ],
        RowOutcome::TimedOut => [
            "timeout".into(),
            "timeout".into(),
            format!("{:.6}", row.seconds),
            String::new(),
            String::new(),
            String::new(),
        ],
        RowOutcome::Failed(msg) => [
            "error".into(),
            msg.clone(),
            format!("{:.6}", row.seconds),
            String::new(),
            String::new(),
            String::new(),
        ],
    };
    head.into_iter().chain(tail).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReachRow {
    pub problem: String,
    pub solver: SolverKind,
    pub target: f64,
    /// Seconds until a point with objective at least as good as `target` was
    /// certified, if it ever was.
    pub seconds: Option<f64>,
}

/// Times how long each solver takes to first attain the problem's `target`
/// objective level. Problems without a target are skipped.
pub fn run_reach(problems: &[ProblemFile], opts: &BenchOptions, out: impl Write) -> Result<Vec<ReachRow>> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["problem", "solver", "target", "reached", "seconds"])?;
    let mut rows = Vec::new();
    for p in problems {
        let Some(target) = p.target else { continue };
        for &solver in solvers_for(p, opts)? {
            let run = RunOptions {
                trace: true,
                timeout: opts.timeout,
                ..RunOptions::default()
            };
            let dir = p.direction();
            let attained = |t: f64| match dir {
                Direction::Minimize => t <= target,
                Direction::Maximize => t >= target,
            };
            let seconds = match run_solver(p, solver, &run) {
                Ok(r) => r.trace.unwrap_or_default().iter().find_map(|e| {
                    (matches!(e.kind, EventKind::ThresholdStep | EventKind::Done) && attained(e.t)).then_some(e.timestamp)
                }),
                Err(_) => None,
            };
            w.write_record([
                p.name.clone(),
                solver.label().to_string(),
                target.to_string(),
                seconds.is_some().to_string(),
                seconds.map(|s| format!("{s:.6}")).unwrap_or_default(),
            ])?;
            rows.push(ReachRow {
                problem: p.name.clone(),
                solver,
                target,
                seconds,
            });
        }
    }
    w.flush()?;
    Ok(rows)
}
