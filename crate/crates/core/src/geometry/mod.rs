//! Planar geometry for design centering: contours, star-shaped patterns,
//! gauge and radius evaluation, convex pieces and their Minkowski sums.

mod convex;
mod point;
mod polygon;
mod radius;
mod star;

pub use convex::{box_vs_convex, convex_minkowski_sum, reflect, scale, ConvexPolygon, PreparedConvex};
pub use point::{orient, signed_area, Point2, Segment};
pub use polygon::{point_in_polygon, PointLocation, Polygon};
pub use radius::{radius_value, INFEASIBLE_RADIUS};
pub use star::{fan_decompose, gauge, lipschitz_constant, validate_star_shaped, FaceLine, StarPattern};

/// Absolute tolerance for incidence predicates.
pub const INCIDENCE_TOL: f64 = 1e-12;

/// Relative tolerance for comparing computed values.
pub const VALUE_RTOL: f64 = 1e-9;

/// Position of a box relative to a closed region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionClass {
    Inside,
    Outside,
    Straddles,
}
