use serde::{Deserialize, Serialize};

use crate::boxes::{BoxLabel, Hyperbox};
use crate::error::Result;

/// A domain estimation procedure for a minimization problem `f -> min, x in F`.
///
/// For a box `B` and threshold `t` an implementation must only answer
/// [`BoxLabel::Empty`] if every `x in B` is infeasible or has `f(x) > t`, and
/// only answer [`BoxLabel::Filled`] if every `x in B` is feasible with
/// `f(x) <= t`. [`BoxLabel::Boundary`] is always a valid answer.
///
/// Calls must be free of observable side effects per box; counters used for
/// reporting are the exception.
pub trait DomainEstimator {
    fn classify(&self, b: &Hyperbox, t: f64) -> Result<BoxLabel>;

    /// Classifies a batch at one threshold. Results are parallel to `boxes`.
    fn classify_batch(&self, boxes: &[Hyperbox], t: f64) -> Result<Vec<BoxLabel>> {
        boxes.iter().map(|b| self.classify(b, t)).collect()
    }

    /// Number of primitive geometric or arithmetic tests performed so far.
    fn sub_operations(&self) -> u64 {
        0
    }
}

impl<E: DomainEstimator + ?Sized> DomainEstimator for &E {
    fn classify(&self, b: &Hyperbox, t: f64) -> Result<BoxLabel> {
        (**self).classify(b, t)
    }

    fn classify_batch(&self, boxes: &[Hyperbox], t: f64) -> Result<Vec<BoxLabel>> {
        (**self).classify_batch(boxes, t)
    }

    fn sub_operations(&self) -> u64 {
        (**self).sub_operations()
    }
}

/// Direction of the user-level problem. The engine always minimizes;
/// maximization problems are solved as minimization of `-f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    /// Converts an internal (minimization) value into the user direction.
    pub fn to_user(self, internal: f64) -> f64 {
        match self {
            Direction::Minimize => internal,
            Direction::Maximize => -internal,
        }
    }

    /// Converts a user-level value into the internal minimization frame.
    pub fn to_internal(self, user: f64) -> f64 {
        self.to_user(user)
    }
}
