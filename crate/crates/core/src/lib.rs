//! Deterministic global optimization by the inverse graphical method.
//!
//! The solver bisects the objective range rather than the domain: for a
//! threshold `t` a [`DomainEstimator`] labels equally sized boxes as empty,
//! filled or boundary with respect to `{x in F : f(x) <= t}`. Lowering `t`
//! while filled boxes remain, then splitting all boxes, converges to a global
//! `epsilon`-optimal value with a feasible witness.
//!
//! The [`geometry`] and [`estimators`] modules provide a complete backend for
//! planar design centering (largest scaled star-shaped pattern inside a
//! polygon) and a Lipschitz branch-and-bound baseline.

pub mod boxes;
pub mod error;
pub mod estimator;
pub mod estimators;
pub mod geometry;
pub mod solver;
pub mod trace;

pub use boxes::{ActiveSet, BoxLabel, Hyperbox};
pub use error::{BestSoFar, Error, Result};
pub use estimator::{Direction, DomainEstimator};
pub use solver::{
    find_filled_box, general_accuracy_estimate, initial_threshold_search, lipschitzian_accuracy_estimate, solve,
    AccuracyStrategy, Problem, SolveResult, SolveStats, SolverConfig, SolverState,
};
pub use trace::{EventKind, TraceEvent, TracedBox};
