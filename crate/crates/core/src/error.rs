use thiserror::Error;

/// Snapshot of solver progress carried by errors that abort a run early.
#[derive(Debug, Clone, PartialEq)]
pub struct BestSoFar {
    /// Current threshold, in the user-level direction.
    pub threshold: f64,
    pub accuracy: f64,
    /// Center of the last box known to be filled, if any.
    pub point: Option<Vec<f64>>,
    pub active_boxes: usize,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid box: {0}")]
    InvalidBox(String),

    #[error("box has zero width on axis {axis} and cannot be subdivided")]
    ZeroWidthAxis { axis: usize },

    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("polygon is not simple: edges {0} and {1} intersect")]
    NotSimple(usize, usize),

    #[error("polygon is not counterclockwise (signed area {0})")]
    NotCounterClockwise(f64),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("pattern is not star-shaped with respect to the origin: {0}")]
    NotStarShaped(String),

    #[error("pattern edge {edge} lies on a line through the origin")]
    CoplanarFace { edge: usize },

    #[error("scale factor must be non-negative, got {0}")]
    NegativeScale(f64),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("split cap of {cap} exceeded")]
    SplitCapExceeded { cap: usize, best: BestSoFar },

    #[error("{procedure} exceeded its iteration cap of {cap}; {hint}")]
    IterationCap {
        procedure: &'static str,
        cap: usize,
        hint: &'static str,
    },

    #[error("domain estimator contract violation: {0}")]
    ContractViolation(String),

    #[error("objective evaluation failed at {point:?}: {reason}")]
    Objective { point: Vec<f64>, reason: String },

    #[error("deadline reached")]
    Timeout { best: BestSoFar },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
