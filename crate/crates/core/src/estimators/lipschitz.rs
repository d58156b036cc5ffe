//! Interval-free estimator for black-box Lipschitz objectives on a box.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::boxes::{BoxLabel, Hyperbox};
use crate::error::{Error, Result};
use crate::estimator::{Direction, DomainEstimator};

use super::bnb::{Evaluation, LipschitzObjective};

type Objective = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Labels a box from one evaluation at its center and a Lipschitz bound `L`
/// (Euclidean norm): every point lies within `diam / 2` of the center.
pub struct LipschitzBoxEstimator {
    objective: Objective,
    lipschitz: f64,
    evaluations: AtomicU64,
}

impl fmt::Debug for LipschitzBoxEstimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LipschitzBoxEstimator")
            .field("lipschitz", &self.lipschitz)
            .field("evaluations", &self.evaluations.load(Ordering::Relaxed))
            .finish()
    }
}

impl LipschitzBoxEstimator {
    pub fn new(objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static, lipschitz: f64) -> Result<Self> {
        if !(lipschitz.is_finite() && lipschitz > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "Lipschitz constant must be positive and finite, got {lipschitz}"
            )));
        }
        Ok(Self {
            objective: Box::new(objective),
            lipschitz,
            evaluations: AtomicU64::new(0),
        })
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// Evaluates the objective, rejecting non-finite values.
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        let v = (self.objective)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Objective {
                point: x.to_vec(),
                reason: format!("non-finite value {v}"),
            })
        }
    }
}

impl DomainEstimator for LipschitzBoxEstimator {
    fn classify(&self, b: &Hyperbox, t: f64) -> Result<BoxLabel> {
        let fc = self.value(&b.center())?;
        let slack = self.lipschitz * b.diameter() / 2.0;
        Ok(if fc - slack > t {
            BoxLabel::Empty
        } else if fc + slack <= t {
            BoxLabel::Filled
        } else {
            BoxLabel::Boundary
        })
    }

    fn sub_operations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }
}

impl LipschitzObjective for LipschitzBoxEstimator {
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
        Ok(Evaluation {
            value: self.value(x)?,
            feasible: true,
        })
    }

    fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    fn direction(&self) -> Direction {
        Direction::Minimize
    }
}
