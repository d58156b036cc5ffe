//! Problem files.
//!
//! A problem is a JSON document. Design centering:
//!
//! ```json
//! {
//!   "kind": "design_centering",
//!   "name": "square_in_square",
//!   "contour": [[-2, -2], [2, -2], [2, 2], [-2, 2]],
//!   "pattern": [[-1, -1], [1, -1], [1, 1], [-1, 1]],
//!   "epsilon": 1e-3,
//!   "solvers": ["inverse", "inverse-lipschitz", "bnb"]
//! }
//! ```
//!
//! Black-box Lipschitz minimization replaces `contour`/`pattern` with
//! `"function"` (one of `abs_sum`, `sphere`, `linear`, `rastrigin`),
//! `"lipschitz"` and `"box": {"lo": [...], "hi": [...]}`. Optional fields for
//! both kinds: `initial_threshold`, `domain_scale`, and `target` (objective
//! level for the reach-target benchmark).

use std::fmt;
use std::path::{Path, PathBuf};

use invgraph::estimators::{DesignCentering, LipschitzBoxEstimator};
use invgraph::geometry::{validate_star_shaped, Polygon};
use invgraph::{Direction, Hyperbox};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ProblemError {
    #[error("{path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: field `{field}`")]
    Geometry {
        path: PathBuf,
        field: &'static str,
        #[source]
        source: invgraph::Error,
    },
    #[error("{path}: field `{field}`: {message}")]
    Field {
        path: PathBuf,
        field: &'static str,
        message: String,
    },
}

impl ProblemError {
    /// The offending field, when the error is a validation failure.
    pub fn field(&self) -> Option<&'static str> {
        match self {
            ProblemError::Geometry { field, .. } | ProblemError::Field { field, .. } => Some(field),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolverKind {
    #[serde(rename = "inverse")]
    Inverse,
    #[serde(rename = "inverse-lipschitz")]
    InverseLipschitz,
    #[serde(rename = "bnb")]
    Bnb,
}

impl SolverKind {
    pub const ALL: [SolverKind; 3] = [SolverKind::Inverse, SolverKind::InverseLipschitz, SolverKind::Bnb];

    /// Name used in reports.
    pub fn label(self) -> &'static str {
        match self {
            SolverKind::Inverse => "inverse",
            SolverKind::InverseLipschitz => "inverse-lipschitz",
            SolverKind::Bnb => invgraph::estimators::BNB_SOLVER_NAME,
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    /// `sum |x_i|`, minimum 0 at the origin.
    AbsSum,
    /// `sum x_i^2`.
    Sphere,
    /// `sum x_i`.
    Linear,
    /// `10 n + sum (x_i^2 - 10 cos(2 pi x_i))`, minimum 0 at the origin.
    Rastrigin,
}

impl Builtin {
    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            Builtin::AbsSum => x.iter().map(|v| v.abs()).sum(),
            Builtin::Sphere => x.iter().map(|v| v * v).sum(),
            Builtin::Linear => x.iter().sum(),
            Builtin::Rastrigin => {
                10.0 * x.len() as f64
                    + x.iter()
                        .map(|v| v * v - 10.0 * (2.0 * std::f64::consts::PI * v).cos())
                        .sum::<f64>()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

/// The document as written, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawProblem {
    DesignCentering {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        contour: Vec<[f64; 2]>,
        pattern: Vec<[f64; 2]>,
        epsilon: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        solvers: Option<Vec<SolverKind>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        initial_threshold: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        domain_scale: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<f64>,
    },
    LipschitzBlackbox {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        function: Builtin,
        lipschitz: f64,
        #[serde(rename = "box")]
        root: RawBox,
        epsilon: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        solvers: Option<Vec<SolverKind>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        initial_threshold: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        domain_scale: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<f64>,
    },
}

#[derive(Debug, Clone)]
pub enum ProblemKind {
    DesignCentering(DesignCentering),
    Lipschitz {
        function: Builtin,
        lipschitz: f64,
        root: Hyperbox,
    },
}

/// A validated problem.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub name: String,
    pub kind: ProblemKind,
    pub epsilon: f64,
    pub solvers: Vec<SolverKind>,
    /// User-level direction.
    pub initial_threshold: Option<f64>,
    pub domain_scale: Option<f64>,
    pub target: Option<f64>,
    pub raw: RawProblem,
}

impl ProblemFile {
    pub fn direction(&self) -> Direction {
        match self.kind {
            ProblemKind::DesignCentering(_) => Direction::Maximize,
            ProblemKind::Lipschitz { .. } => Direction::Minimize,
        }
    }

    pub fn lipschitz(&self) -> f64 {
        match &self.kind {
            ProblemKind::DesignCentering(dc) => dc.lipschitz(),
            ProblemKind::Lipschitz { lipschitz, .. } => *lipschitz,
        }
    }

    pub fn root_box(&self) -> Hyperbox {
        match &self.kind {
            ProblemKind::DesignCentering(dc) => dc.root_box(),
            ProblemKind::Lipschitz { root, .. } => root.clone(),
        }
    }

    pub fn design_centering(&self) -> Option<&DesignCentering> {
        match &self.kind {
            ProblemKind::DesignCentering(dc) => Some(dc),
            ProblemKind::Lipschitz { .. } => None,
        }
    }

    /// Black-box estimator for Lipschitz problems.
    pub fn lipschitz_estimator(&self) -> Option<LipschitzBoxEstimator> {
        match &self.kind {
            ProblemKind::Lipschitz { function, lipschitz, .. } => {
                let f = *function;
                LipschitzBoxEstimator::new(move |x| f.eval(x), *lipschitz).ok()
            }
            ProblemKind::DesignCentering(_) => None,
        }
    }
}

pub fn parse_problem(path: impl AsRef<Path>) -> Result<ProblemFile, ProblemError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ProblemError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_problem_str(&text, path)
}

/// Parses and validates a problem document; `origin` is only used in errors
/// and for the default name.
pub fn parse_problem_str(text: &str, origin: &Path) -> Result<ProblemFile, ProblemError> {
    let raw: RawProblem = serde_json::from_str(text).map_err(|e| ProblemError::Parse {
        path: origin.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let default_name = origin
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "problem".into());
    validate(raw, origin, default_name)
}

pub fn validate(raw: RawProblem, origin: &Path, default_name: String) -> Result<ProblemFile, ProblemError> {
    let field_err = |field: &'static str, message: String| ProblemError::Field {
        path: origin.to_path_buf(),
        field,
        message,
    };
    let geom_err = |field: &'static str| {
        move |source| ProblemError::Geometry {
            path: origin.to_path_buf(),
            field,
            source,
        }
    };
    let (name, kind, epsilon, solvers, initial_threshold, domain_scale, target) = match &raw {
        RawProblem::DesignCentering {
            name,
            contour,
            pattern,
            epsilon,
            solvers,
            initial_threshold,
            domain_scale,
            target,
        } => {
            let q = Polygon::from_coords(contour).map_err(geom_err("contour"))?;
            let k = Polygon::from_coords(pattern)
                .and_then(validate_star_shaped)
                .map_err(geom_err("pattern"))?;
            (
                name,
                ProblemKind::DesignCentering(DesignCentering::new(q, k)),
                *epsilon,
                solvers,
                *initial_threshold,
                *domain_scale,
                *target,
            )
        }
        RawProblem::LipschitzBlackbox {
            name,
            function,
            lipschitz,
            root,
            epsilon,
            solvers,
            initial_threshold,
            domain_scale,
            target,
        } => {
            if !(lipschitz.is_finite() && *lipschitz > 0.0) {
                return Err(field_err("lipschitz", format!("must be positive and finite, got {lipschitz}")));
            }
            let b = Hyperbox::new(root.lo.clone(), root.hi.clone()).map_err(geom_err("box"))?;
            if let Some(axis) = (0..b.dim()).find(|&i| b.width(i) <= 0.0) {
                return Err(field_err("box", format!("zero width on axis {axis}")));
            }
            (
                name,
                ProblemKind::Lipschitz {
                    function: *function,
                    lipschitz: *lipschitz,
                    root: b,
                },
                *epsilon,
                solvers,
                *initial_threshold,
                *domain_scale,
                *target,
            )
        }
    };
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(field_err("epsilon", format!("must be positive and finite, got {epsilon}")));
    }
    if let Some(s) = domain_scale {
        if !(s > 0.0 && s < 1.0) {
            return Err(field_err("domain_scale", format!("must lie in (0, 1), got {s}")));
        }
    }
    if let Some(t) = initial_threshold {
        if !t.is_finite() {
            return Err(field_err("initial_threshold", format!("must be finite, got {t}")));
        }
    }
    let name = name.clone().unwrap_or(default_name);
    Ok(ProblemFile {
        name,
        kind,
        epsilon,
        solvers: solvers.clone().unwrap_or_else(|| SolverKind::ALL.to_vec()),
        initial_threshold,
        domain_scale,
        target,
        raw,
    })
}
