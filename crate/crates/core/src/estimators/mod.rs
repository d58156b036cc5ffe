//! Concrete domain estimators and the branch-and-bound baseline.

pub mod bnb;
pub mod design_centering;
pub mod lipschitz;

pub use bnb::{branch_and_bound_solve, BnbConfig, Evaluation, LipschitzObjective, BNB_SOLVER_NAME};
pub use design_centering::{DesignCentering, DesignCenteringEstimator};
pub use lipschitz::LipschitzBoxEstimator;
