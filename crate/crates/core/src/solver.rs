//! The inverse graphical optimization algorithm.
//!
//! Instead of bounding the objective over domain subdivisions, the solver
//! lowers an objective threshold `t` and asks a [`DomainEstimator`] whether the
//! sublevel set `{x in F : f(x) <= t}` still has a box certified inside it.
//! The domain is covered by equally sized boxes that are all split at once;
//! `delta = S * diameter(box)` ties the threshold step to the box size.
//!
//! Internally everything is a minimization; [`Problem::direction`] converts
//! thresholds and results to the user-level direction at the boundary.

use std::time::Instant;

use crate::boxes::{ActiveSet, BoxLabel, Hyperbox};
use crate::error::{BestSoFar, Error, Result};
use crate::estimator::{Direction, DomainEstimator};
use crate::trace::{EventKind, TraceEvent, TracedBox};

pub const DEFAULT_DOMAIN_SCALE: f64 = 0.6;
pub const DEFAULT_MAX_SPLITS: usize = 60;
pub const DEFAULT_ITERATION_CAP: usize = 1_000_000;

/// How step 3 computes the actual accuracy estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AccuracyStrategy {
    /// Probe lower thresholds with the domain estimator until every active
    /// box is empty.
    General,
    /// `(1 + L / S) * delta` for an objective with Lipschitz constant `L`.
    Lipschitzian { lipschitz: f64 },
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub epsilon: f64,
    pub domain_scale: f64,
    /// Starting threshold in the user-level direction. When absent the
    /// initial threshold search runs first.
    pub initial_threshold: Option<f64>,
    pub accuracy: AccuracyStrategy,
    /// Cap on simultaneous splits, also applied to the final filled-box search.
    pub max_splits: usize,
    /// Loop cap for the accuracy estimate, the initial threshold search and
    /// the threshold descent.
    pub iteration_cap: usize,
    /// Stop the general accuracy estimate once it reaches `epsilon`.
    pub early_exit: bool,
    pub trace: bool,
    /// Record every box with its label in the trace. Implies `trace`.
    pub trace_boxes: bool,
    pub deadline: Option<Instant>,
}

impl SolverConfig {
    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            domain_scale: DEFAULT_DOMAIN_SCALE,
            initial_threshold: None,
            accuracy: AccuracyStrategy::General,
            max_splits: DEFAULT_MAX_SPLITS,
            iteration_cap: DEFAULT_ITERATION_CAP,
            early_exit: true,
            trace: false,
            trace_boxes: false,
            deadline: None,
        }
    }

    pub fn with_initial_threshold(mut self, t: f64) -> Self {
        self.initial_threshold = Some(t);
        self
    }

    pub fn with_accuracy(mut self, accuracy: AccuracyStrategy) -> Self {
        self.accuracy = accuracy;
        self
    }

    pub fn with_domain_scale(mut self, s: f64) -> Self {
        self.domain_scale = s;
        self
    }

    pub fn with_trace(mut self, boxes: bool) -> Self {
        self.trace = true;
        self.trace_boxes = boxes;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidConfig(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !(self.domain_scale > 0.0 && self.domain_scale < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "domain scale must lie in (0, 1), got {}",
                self.domain_scale
            )));
        }
        if self.max_splits == 0 || self.iteration_cap == 0 {
            return Err(Error::InvalidConfig("caps must be at least 1".into()));
        }
        if let AccuracyStrategy::Lipschitzian { lipschitz } = self.accuracy {
            if !(lipschitz >= 0.0 && lipschitz.is_finite()) {
                return Err(Error::InvalidConfig(format!("invalid Lipschitz constant {lipschitz}")));
            }
        }
        if let Some(t) = self.initial_threshold {
            if !t.is_finite() {
                return Err(Error::InvalidConfig("initial threshold must be finite".into()));
            }
        }
        Ok(())
    }
}

/// A problem `f -> min (or max), x in F ⊂ root`, seen only through its
/// domain estimator. The estimator always speaks the minimization frame.
pub struct Problem<'a> {
    pub root: Hyperbox,
    pub estimator: &'a dyn DomainEstimator,
    pub direction: Direction,
}

impl<'a> Problem<'a> {
    pub fn new(root: Hyperbox, estimator: &'a dyn DomainEstimator, direction: Direction) -> Self {
        Self {
            root,
            estimator,
            direction,
        }
    }

    pub fn dim(&self) -> usize {
        self.root.dim()
    }
}

/// Active boxes, threshold and accuracy, all in the minimization frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub active: ActiveSet,
    pub threshold: f64,
    pub accuracy: f64,
    pub split_count: usize,
}

impl SolverState {
    pub fn initial(root: Hyperbox, threshold: f64, domain_scale: f64) -> Self {
        let accuracy = domain_scale * root.diameter();
        Self {
            active: ActiveSet::new(root),
            threshold,
            accuracy,
            split_count: 0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolveStats {
    pub classification_calls: u64,
    /// Objective evaluations (zero for the inverse solver).
    pub objective_calls: u64,
    /// Primitive tests reported by the estimator.
    pub sub_operations: u64,
    pub splits: u64,
    pub threshold_steps: u64,
    pub wall_time: f64,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    /// Approximate optimum in the user-level direction.
    pub value: f64,
    pub point: Vec<f64>,
    /// Certified bound on `|value - optimum|`.
    pub accuracy_certificate: f64,
    pub stats: SolveStats,
    pub trace: Option<Vec<TraceEvent>>,
}

/// `(1 + L / S) * delta`.
pub fn lipschitzian_accuracy_estimate(delta: f64, lipschitz: f64, domain_scale: f64) -> f64 {
    (1.0 + lipschitz / domain_scale) * delta
}

/// Runs the inverse graphical algorithm to accuracy `cfg.epsilon`.
pub fn solve(p: &Problem<'_>, cfg: &SolverConfig) -> Result<SolveResult> {
    cfg.validate()?;
    let mut eng = Engine::new(p, cfg);
    let t0 = match cfg.initial_threshold {
        Some(u) => p.direction.to_internal(u),
        None => eng.initial_threshold_search()?,
    };
    let mut state = SolverState::initial(p.root.clone(), t0, cfg.domain_scale);
    eng.emit(EventKind::Start, &state, None, None);

    let mut last_filled: Option<Hyperbox> = None;
    loop {
        // Lower the threshold while some box is still filled below it.
        let mut descents = 0usize;
        let tight = loop {
            let probe = state.threshold - state.accuracy;
            let labels = eng.classify(state.active.boxes(), probe, &state, last_filled.as_ref())?;
            let Some(first) = labels.iter().position(|l| *l == BoxLabel::Filled) else {
                break labels;
            };
            descents += 1;
            if descents > cfg.iteration_cap {
                return Err(Error::IterationCap {
                    procedure: "threshold descent",
                    cap: cfg.iteration_cap,
                    hint: "the objective appears unbounded below on the feasible set",
                });
            }
            last_filled = Some(state.active.boxes()[first].clone());
            state.threshold = probe;
            eng.stats.threshold_steps += 1;
            eng.emit(
                EventKind::ThresholdStep,
                &state,
                None,
                Some((state.active.boxes(), &labels, probe)),
            );
            if labels.contains(&BoxLabel::Empty) {
                let kept: Vec<BoxLabel> = labels.iter().copied().filter(|l| *l != BoxLabel::Empty).collect();
                state.active.retain_labeled(&labels, |l| l != BoxLabel::Empty);
                eng.emit(EventKind::Prune, &state, None, Some((state.active.boxes(), &kept, probe)));
            }
        };

        let estimate = match cfg.accuracy {
            AccuracyStrategy::General => eng.general_accuracy(&state, Some(&tight), last_filled.as_ref())?,
            AccuracyStrategy::Lipschitzian { lipschitz } => {
                lipschitzian_accuracy_estimate(state.accuracy, lipschitz, cfg.domain_scale)
            }
        };
        let probe = state.threshold - state.accuracy;
        eng.emit(
            EventKind::Accuracy,
            &state,
            Some(estimate),
            Some((state.active.boxes(), &tight, probe)),
        );

        if estimate < cfg.epsilon {
            let filled = match last_filled {
                Some(b) => b,
                None => eng.find_filled(&mut state)?,
            };
            let point = filled.center();
            eng.emit(EventKind::Done, &state, Some(estimate), None);
            return Ok(eng.finish(p.direction.to_user(state.threshold), point, estimate));
        }

        if state.split_count >= cfg.max_splits {
            return Err(Error::SplitCapExceeded {
                cap: cfg.max_splits,
                best: eng.best(&state, last_filled.as_ref()),
            });
        }
        state.active = state.active.split_all()?;
        state.accuracy /= 2.0;
        state.split_count += 1;
        eng.stats.splits += 1;
        eng.emit(EventKind::Split, &state, None, None);
    }
}

/// The general accuracy estimation procedure: probe `t - k * delta` for
/// `k = 1, 2, ...` until every active box is empty. Returns `+inf` when the
/// iteration cap is reached first.
pub fn general_accuracy_estimate(
    state: &SolverState,
    estimator: &dyn DomainEstimator,
    cfg: &SolverConfig,
) -> Result<f64> {
    let problem = Problem::new(
        state
            .active
            .boxes()
            .first()
            .cloned()
            .ok_or_else(|| Error::InvalidConfig("empty active set".into()))?,
        estimator,
        Direction::Minimize,
    );
    Engine::new(&problem, cfg).general_accuracy(state, None, None)
}

/// The initial threshold search procedure. Returns a threshold in the
/// user-level direction that is strictly worse than the optimum.
pub fn initial_threshold_search(p: &Problem<'_>, cfg: &SolverConfig) -> Result<f64> {
    cfg.validate()?;
    let t = Engine::new(p, cfg).initial_threshold_search()?;
    Ok(p.direction.to_user(t))
}

/// Splits boundary boxes of `state` at its current threshold until some box
/// is filled. Returns the box and its center.
pub fn find_filled_box(
    state: &SolverState,
    estimator: &dyn DomainEstimator,
    cfg: &SolverConfig,
) -> Result<(Hyperbox, Vec<f64>)> {
    let root = state
        .active
        .boxes()
        .first()
        .cloned()
        .ok_or_else(|| Error::InvalidConfig("empty active set".into()))?;
    let problem = Problem::new(root, estimator, Direction::Minimize);
    let mut state = state.clone();
    let b = Engine::new(&problem, cfg).find_filled(&mut state)?;
    let c = b.center();
    Ok((b, c))
}

struct Engine<'p, 'a> {
    problem: &'p Problem<'a>,
    cfg: &'p SolverConfig,
    stats: SolveStats,
    trace: Vec<TraceEvent>,
    start: Instant,
    sub_ops_start: u64,
}

type Labeled<'x> = (&'x [Hyperbox], &'x [BoxLabel], f64);

impl<'p, 'a> Engine<'p, 'a> {
    fn new(problem: &'p Problem<'a>, cfg: &'p SolverConfig) -> Self {
        Self {
            problem,
            cfg,
            stats: SolveStats::default(),
            trace: Vec::new(),
            start: Instant::now(),
            sub_ops_start: problem.estimator.sub_operations(),
        }
    }

    fn best(&self, state: &SolverState, filled: Option<&Hyperbox>) -> BestSoFar {
        BestSoFar {
            threshold: self.problem.direction.to_user(state.threshold),
            accuracy: state.accuracy,
            point: filled.map(Hyperbox::center),
            active_boxes: state.active.len(),
        }
    }

    fn classify(
        &mut self,
        boxes: &[Hyperbox],
        t: f64,
        state: &SolverState,
        filled: Option<&Hyperbox>,
    ) -> Result<Vec<BoxLabel>> {
        if let Some(deadline) = self.cfg.deadline {
            if Instant::now() >= deadline {
                return Err(Error::Timeout {
                    best: self.best(state, filled),
                });
            }
        }
        self.stats.classification_calls += boxes.len() as u64;
        let labels = self.problem.estimator.classify_batch(boxes, t)?;
        if labels.len() != boxes.len() {
            return Err(Error::ContractViolation(format!(
                "estimator returned {} labels for {} boxes",
                labels.len(),
                boxes.len()
            )));
        }
        Ok(labels)
    }

    fn emit(&mut self, kind: EventKind, state: &SolverState, estimate: Option<f64>, labeled: Option<Labeled<'_>>) {
        if !(self.cfg.trace || self.cfg.trace_boxes) {
            return;
        }
        let dir = self.problem.direction;
        let (boxes, label_threshold): (Option<Vec<TracedBox>>, Option<f64>) = match labeled {
            Some((boxes, labels, t)) if self.cfg.trace_boxes => (
                Some(
                    boxes
                        .iter()
                        .zip(labels)
                        .map(|(b, l)| TracedBox::new(b, Some(*l)))
                        .collect(),
                ),
                Some(dir.to_user(t)),
            ),
            _ if self.cfg.trace_boxes => (
                Some(state.active.iter().map(|b| TracedBox::new(b, None)).collect()),
                None,
            ),
            _ => (None, None),
        };
        let active = match (&boxes, labeled) {
            (Some(b), _) => b.len(),
            (None, Some((b, _, _))) => b.len(),
            _ => state.active.len(),
        };
        self.trace.push(TraceEvent {
            kind,
            t: dir.to_user(state.threshold),
            delta: state.accuracy,
            active,
            timestamp: self.start.elapsed().as_secs_f64(),
            estimate,
            label_threshold,
            boxes,
        });
    }

    fn finish(mut self, value: f64, point: Vec<f64>, certificate: f64) -> SolveResult {
        self.stats.wall_time = self.start.elapsed().as_secs_f64();
        self.stats.sub_operations = self.problem.estimator.sub_operations() - self.sub_ops_start;
        let trace = (self.cfg.trace || self.cfg.trace_boxes).then_some(self.trace);
        SolveResult {
            value,
            point,
            accuracy_certificate: certificate,
            stats: self.stats,
            trace,
        }
    }

    /// `tight` holds the labels at `t - delta` when the caller already has them.
    fn general_accuracy(
        &mut self,
        state: &SolverState,
        tight: Option<&[BoxLabel]>,
        filled: Option<&Hyperbox>,
    ) -> Result<f64> {
        let delta = state.accuracy;
        let boxes = state.active.boxes();
        let mut k = 1usize;
        loop {
            let estimate = k as f64 * delta;
            if self.cfg.early_exit && estimate >= self.cfg.epsilon {
                return Ok(estimate);
            }
            if k > self.cfg.iteration_cap {
                return Ok(f64::INFINITY);
            }
            let labels = match tight {
                Some(t) if k == 1 => t.to_vec(),
                _ => self.classify(boxes, state.threshold - estimate, state, filled)?,
            };
            if let Some(tight) = tight {
                if let Some(i) = (0..labels.len())
                    .find(|&i| tight[i] == BoxLabel::Empty && labels[i] == BoxLabel::Filled)
                {
                    return Err(Error::ContractViolation(format!(
                        "box {i} is empty at threshold {} but filled at the lower threshold {}",
                        state.threshold - delta,
                        state.threshold - estimate
                    )));
                }
            }
            if labels.iter().all(|l| *l == BoxLabel::Empty) {
                return Ok(estimate);
            }
            k += 1;
        }
    }

    fn initial_threshold_search(&mut self) -> Result<f64> {
        let mut t = 0.0;
        let mut delta = self.cfg.domain_scale * self.problem.root.diameter();
        let mut state = SolverState::initial(self.problem.root.clone(), t, self.cfg.domain_scale);
        let mut splits = 0usize;
        for _ in 0..self.cfg.iteration_cap {
            state.threshold = t;
            let labels = self.classify(state.active.boxes(), t, &state, None)?;
            if labels.contains(&BoxLabel::Filled) {
                return Ok(t);
            }
            t += delta;
            if labels.iter().all(|l| *l == BoxLabel::Empty) {
                continue;
            }
            if splits >= self.cfg.max_splits {
                break;
            }
            state.active = state.active.split_all()?;
            splits += 1;
            delta *= 2.0;
        }
        Err(Error::IterationCap {
            procedure: "initial threshold search",
            cap: self.cfg.iteration_cap,
            hint: "supply an initial threshold explicitly",
        })
    }

    fn find_filled(&mut self, state: &mut SolverState) -> Result<Hyperbox> {
        let t = state.threshold;
        for round in 0..=self.cfg.max_splits {
            let labels = self.classify(state.active.boxes(), t, state, None)?;
            if let Some(i) = labels.iter().position(|l| *l == BoxLabel::Filled) {
                return Ok(state.active.boxes()[i].clone());
            }
            state.active.retain_labeled(&labels, |l| l == BoxLabel::Boundary);
            if state.active.is_empty() {
                return Err(Error::ContractViolation(format!(
                    "every box is empty at threshold {}, which must exceed the minimum",
                    self.problem.direction.to_user(t)
                )));
            }
            if round == self.cfg.max_splits {
                break;
            }
            state.active = state.active.split_all()?;
            self.stats.splits += 1;
            self.emit(EventKind::Refine, state, None, None);
        }
        Err(Error::SplitCapExceeded {
            cap: self.cfg.max_splits,
            best: BestSoFar {
                threshold: self.problem.direction.to_user(t),
                accuracy: state.accuracy,
                point: state.active.boxes().first().map(Hyperbox::center),
                active_boxes: state.active.len(),
            },
        })
    }
}
