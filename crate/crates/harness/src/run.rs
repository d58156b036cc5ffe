//! Solver dispatch and trace files.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use invgraph::estimators::{branch_and_bound_solve, BnbConfig, LipschitzObjective};
use invgraph::trace::write_events;
use invgraph::{solve, AccuracyStrategy, DomainEstimator, Problem, SolveResult, SolverConfig, TraceEvent};
use serde::{Deserialize, Serialize};

use crate::problem::{validate, ProblemFile, ProblemKind, RawProblem, SolverKind};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub epsilon: Option<f64>,
    pub domain_scale: Option<f64>,
    pub trace: bool,
    pub trace_boxes: bool,
    pub timeout: Option<Duration>,
}

/// Runs one solver on a problem. Design-centering runs of the inverse solver
/// start from radius 0 unless the problem gives an initial threshold: every
/// feasible center has a non-negative radius, so 0 is always strictly below
/// the optimum.
pub fn run_solver(p: &ProblemFile, solver: SolverKind, opts: &RunOptions) -> invgraph::Result<SolveResult> {
    let eps = opts.epsilon.unwrap_or(p.epsilon);
    let deadline = opts.timeout.map(|d| Instant::now() + d);
    let lip_est;
    let dc_est;
    let (estimator, objective): (&dyn DomainEstimator, &dyn LipschitzObjective) = match &p.kind {
        ProblemKind::DesignCentering(dc) => {
            dc_est = dc.estimator();
            (&dc_est, dc)
        }
        ProblemKind::Lipschitz { .. } => {
            lip_est = p.lipschitz_estimator().expect("validated lipschitz problem");
            (&lip_est, &lip_est)
        }
    };
    match solver {
        SolverKind::Inverse | SolverKind::InverseLipschitz => {
            let mut cfg = SolverConfig::new(eps);
            cfg.domain_scale = opts.domain_scale.or(p.domain_scale).unwrap_or(cfg.domain_scale);
            cfg.initial_threshold = match (&p.kind, p.initial_threshold) {
                (_, Some(t)) => Some(t),
                (ProblemKind::DesignCentering(_), None) => Some(0.0),
                (ProblemKind::Lipschitz { .. }, None) => None,
            };
            if solver == SolverKind::InverseLipschitz {
                cfg.accuracy = AccuracyStrategy::Lipschitzian {
                    lipschitz: p.lipschitz(),
                };
            }
            cfg.trace = opts.trace;
            cfg.trace_boxes = opts.trace_boxes;
            cfg.deadline = deadline;
            solve(&Problem::new(p.root_box(), estimator, p.direction()), &cfg)
        }
        SolverKind::Bnb => {
            let mut cfg = BnbConfig::new(eps);
            cfg.trace = opts.trace;
            cfg.trace_boxes = opts.trace_boxes;
            cfg.deadline = deadline;
            branch_and_bound_solve(objective, &p.root_box(), &cfg)
        }
    }
}

/// First line of a trace file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub problem: RawProblem,
    pub name: String,
    pub solver: SolverKind,
    pub epsilon: f64,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub header: TraceHeader,
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn new(p: &ProblemFile, solver: SolverKind, epsilon: f64, events: Vec<TraceEvent>) -> Self {
        Self {
            header: TraceHeader {
                problem: p.raw.clone(),
                name: p.name.clone(),
                solver,
                epsilon,
            },
            events,
        }
    }

    pub fn problem(&self) -> Result<ProblemFile> {
        Ok(validate(
            self.header.problem.clone(),
            Path::new(&self.header.name),
            self.header.name.clone(),
        )?)
    }

    pub fn write(&self, out: impl Write) -> Result<()> {
        let mut out = BufWriter::new(out);
        serde_json::to_writer(&mut out, &self.header)?;
        out.write_all(b"\n")?;
        write_events(&mut out, &self.events)?;
        out.flush()?;
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        self.write(f)
    }

    pub fn read(input: impl BufRead) -> Result<Self> {
        let mut lines = input.lines();
        let Some(first) = lines.next() else {
            bail!("empty trace");
        };
        let header: TraceHeader = serde_json::from_str(&first?).context("trace header")?;
        let mut events = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            events.push(serde_json::from_str(&line).with_context(|| format!("trace line {}", i + 2))?);
        }
        Ok(Self { header, events })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        Self::read(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
    }
}
