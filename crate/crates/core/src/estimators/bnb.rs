//! Lipschitz branch-and-bound over uniformly split boxes.
//!
//! Each box is bounded below by `g(c) - L * diam / 2` where `g` is the
//! objective in the minimization frame and `c` the box center. Boxes whose
//! bound cannot beat the incumbent by more than `epsilon` are pruned; the run
//! ends when no box remains.

use std::time::Instant;

use crate::boxes::Hyperbox;
use crate::error::{BestSoFar, Error, Result};
use crate::estimator::Direction;
use crate::solver::{SolveResult, SolveStats, DEFAULT_MAX_SPLITS};
use crate::trace::{EventKind, TraceEvent, TracedBox};

pub const BNB_SOLVER_NAME: &str = "BnB-Lipschitz";

/// Objective value at a point. Infeasible points must still report a value
/// that keeps `value - L * |x - c|` a valid bound for feasible `x` nearby.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub feasible: bool,
}

pub trait LipschitzObjective {
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation>;
    /// Lipschitz constant with respect to the Euclidean norm.
    fn lipschitz(&self) -> f64;
    fn direction(&self) -> Direction;
}

#[derive(Debug, Clone)]
pub struct BnbConfig {
    pub epsilon: f64,
    pub max_splits: usize,
    pub trace: bool,
    pub trace_boxes: bool,
    pub deadline: Option<Instant>,
}

impl BnbConfig {
    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            max_splits: DEFAULT_MAX_SPLITS,
            trace: false,
            trace_boxes: false,
            deadline: None,
        }
    }
}

struct Node {
    cell: Hyperbox,
    value: f64,
}

struct Run<'a> {
    dir: Direction,
    cfg: &'a BnbConfig,
    start: Instant,
    stats: SolveStats,
    trace: Vec<TraceEvent>,
    incumbent: f64,
    point: Option<Vec<f64>>,
}

impl Run<'_> {
    fn best(&self, slack: f64, active: usize) -> BestSoFar {
        BestSoFar {
            threshold: self.dir.to_user(self.incumbent),
            accuracy: slack,
            point: self.point.clone(),
            active_boxes: active,
        }
    }

    fn emit(&mut self, kind: EventKind, slack: f64, estimate: Option<f64>, nodes: &[Node]) {
        if !(self.cfg.trace || self.cfg.trace_boxes) {
            return;
        }
        let boxes = self
            .cfg
            .trace_boxes
            .then(|| nodes.iter().map(|n| TracedBox::new(&n.cell, None)).collect());
        self.trace.push(TraceEvent {
            kind,
            t: self.dir.to_user(self.incumbent),
            delta: slack,
            active: nodes.len(),
            timestamp: self.start.elapsed().as_secs_f64(),
            estimate,
            label_threshold: None,
            boxes,
        });
    }
}

/// Runs branch and bound until every box is pruned. The returned certificate
/// is the gap between the incumbent and the smallest bound of any pruned box.
pub fn branch_and_bound_solve(
    obj: &dyn LipschitzObjective,
    root: &Hyperbox,
    cfg: &BnbConfig,
) -> Result<SolveResult> {
    if !(cfg.epsilon.is_finite() && cfg.epsilon > 0.0) {
        return Err(Error::InvalidConfig(format!("epsilon must be positive, got {}", cfg.epsilon)));
    }
    let lipschitz = obj.lipschitz();
    if !(lipschitz.is_finite() && lipschitz > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "Lipschitz constant must be positive and finite, got {lipschitz}"
        )));
    }
    let dir = obj.direction();
    let mut run = Run {
        dir,
        cfg,
        start: Instant::now(),
        stats: SolveStats::default(),
        trace: Vec::new(),
        incumbent: f64::INFINITY,
        point: None,
    };

    let mut min_pruned = f64::INFINITY;
    let mut cells = vec![root.clone()];
    let mut slack = lipschitz * root.diameter() / 2.0;
    let mut splits = 0usize;
    let mut started = false;
    loop {
        if let Some(deadline) = cfg.deadline {
            if Instant::now() >= deadline {
                return Err(Error::Timeout {
                    best: run.best(slack, cells.len()),
                });
            }
        }
        let mut nodes = Vec::with_capacity(cells.len());
        let mut improved = false;
        for cell in cells {
            let c = cell.center();
            let e = obj.evaluate(&c)?;
            run.stats.objective_calls += 1;
            if !e.value.is_finite() {
                return Err(Error::Objective {
                    point: c,
                    reason: format!("non-finite value {}", e.value),
                });
            }
            let value = dir.to_internal(e.value);
            if e.feasible && value < run.incumbent {
                run.incumbent = value;
                run.point = Some(c);
                improved = true;
            }
            nodes.push(Node { cell, value });
        }
        if !started {
            run.emit(EventKind::Start, slack, None, &nodes);
            started = true;
        }
        if improved {
            run.stats.threshold_steps += 1;
            run.emit(EventKind::ThresholdStep, slack, None, &nodes);
        }

        let before = nodes.len();
        let cutoff = run.incumbent - cfg.epsilon;
        nodes.retain(|n| {
            let lb = n.value - slack;
            if lb < cutoff {
                true
            } else {
                min_pruned = min_pruned.min(lb);
                false
            }
        });
        if nodes.len() < before {
            run.emit(EventKind::Prune, slack, None, &nodes);
        }
        if nodes.is_empty() {
            break;
        }
        if splits >= cfg.max_splits {
            return Err(Error::SplitCapExceeded {
                cap: cfg.max_splits,
                best: run.best(slack, nodes.len()),
            });
        }
        cells = Vec::with_capacity(nodes.len() << root.dim());
        for n in &nodes {
            cells.extend(n.cell.split()?);
        }
        splits += 1;
        run.stats.splits += 1;
        slack /= 2.0;
        if run.cfg.trace || run.cfg.trace_boxes {
            let pending: Vec<Node> = cells
                .iter()
                .map(|c| Node {
                    cell: c.clone(),
                    value: f64::NAN,
                })
                .collect();
            run.emit(EventKind::Split, slack, None, &pending);
        }
    }

    let point = run
        .point
        .clone()
        .ok_or_else(|| Error::ContractViolation("no feasible point found".into()))?;
    let certificate = (run.incumbent - min_pruned).max(0.0);
    run.emit(EventKind::Done, slack, Some(certificate), &[]);
    run.stats.wall_time = run.start.elapsed().as_secs_f64();
    let trace = (cfg.trace || cfg.trace_boxes).then_some(run.trace);
    Ok(SolveResult {
        value: dir.to_user(run.incumbent),
        point,
        accuracy_certificate: certificate,
        stats: run.stats,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Abs;

    impl LipschitzObjective for Abs {
        fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
            Ok(Evaluation {
                value: x.iter().map(|v| v.abs()).sum(),
                feasible: true,
            })
        }
        fn lipschitz(&self) -> f64 {
            2f64.sqrt()
        }
        fn direction(&self) -> Direction {
            Direction::Minimize
        }
    }

    struct Tent;

    impl LipschitzObjective for Tent {
        fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
            Ok(Evaluation {
                value: 1.0 - (x[0] - 0.3).abs(),
                feasible: true,
            })
        }
        fn lipschitz(&self) -> f64 {
            1.0
        }
        fn direction(&self) -> Direction {
            Direction::Maximize
        }
    }

    #[test]
    fn minimizes_abs_sum() {
        let root = Hyperbox::cube(2, -1.0, 2.0).unwrap();
        let r = branch_and_bound_solve(&Abs, &root, &BnbConfig::new(1e-3)).unwrap();
        assert!(r.value < 1e-3 && r.value >= 0.0);
        assert!(r.accuracy_certificate <= 1e-3);
        assert!(r.stats.objective_calls > 0);
    }

    #[test]
    fn maximizes_tent() {
        let root = Hyperbox::new(vec![-1.0], vec![1.0]).unwrap();
        let r = branch_and_bound_solve(&Tent, &root, &BnbConfig::new(1e-4)).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-4);
        assert!((r.point[0] - 0.3).abs() <= 1e-4);
    }

    #[test]
    fn split_cap_reports_progress() {
        let root = Hyperbox::cube(2, -1.0, 2.0).unwrap();
        let mut cfg = BnbConfig::new(1e-6);
        cfg.max_splits = 2;
        match branch_and_bound_solve(&Abs, &root, &cfg) {
            Err(Error::SplitCapExceeded { cap: 2, best }) => assert!(best.point.is_some()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trace_records_improvements() {
        let root = Hyperbox::cube(2, -1.0, 2.0).unwrap();
        let mut cfg = BnbConfig::new(1e-2);
        cfg.trace = true;
        let r = branch_and_bound_solve(&Abs, &root, &cfg).unwrap();
        let trace = r.trace.unwrap();
        assert_eq!(trace.first().unwrap().kind, EventKind::Start);
        assert_eq!(trace.last().unwrap().kind, EventKind::Done);
        assert!(trace.iter().any(|e| e.kind == EventKind::ThresholdStep));
    }
}
