use super::convex::ConvexPolygon;
use super::point::Point2;
use super::polygon::{PointLocation, Polygon};
use crate::error::{Error, Result};

/// Supporting line `{z : normal . z = offset}` of a pattern edge, with the
/// normal pointing outward. `offset > 0` for every edge of a valid pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceLine {
    pub normal: Point2,
    pub offset: f64,
}

impl FaceLine {
    /// Distance from the origin to the line.
    pub fn distance(&self) -> f64 {
        self.offset / self.normal.norm()
    }
}

/// A polygon star-shaped with respect to the origin, together with its fan
/// decomposition and per-edge face lines.
///
/// The gauge `gamma(y) = min{lambda >= 0 : y in lambda K}` is linear on each
/// fan cone: `gamma(y) = normal_i . y / offset_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarPattern {
    polygon: Polygon,
    cones: Vec<ConvexPolygon>,
    face_lines: Vec<FaceLine>,
    lipschitz: f64,
}

impl StarPattern {
    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn vertices(&self) -> &[Point2] {
        self.polygon.vertices()
    }

    pub fn cones(&self) -> &[ConvexPolygon] {
        &self.cones
    }

    pub fn face_lines(&self) -> &[FaceLine] {
        &self.face_lines
    }

    /// Lipschitz constant `1 / Delta` of the radius value, where `Delta` is
    /// the smallest distance from the origin to an edge line.
    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// Index of the fan cone whose wedge contains direction `y`.
    pub fn cone_of(&self, y: Point2) -> usize {
        let v = self.polygon.vertices();
        let n = v.len();
        let mut best = 0;
        let mut best_score = f64::NEG_INFINITY;
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            let score = (a.cross(y) / a.norm()).min(y.cross(b) / b.norm());
            if score >= 0.0 {
                return i;
            }
            if score > best_score {
                best_score = score;
                best = i;
            }
        }
        best
    }

    /// Gauge restricted to cone `i`: exact for directions inside that cone.
    pub fn cone_gauge(&self, i: usize, y: Point2) -> f64 {
        let f = &self.face_lines[i];
        f.normal.dot(y) / f.offset
    }

    /// The Minkowski functional of the pattern.
    pub fn gauge(&self, y: Point2) -> f64 {
        if y == Point2::ORIGIN {
            return 0.0;
        }
        self.cone_gauge(self.cone_of(y), y)
    }

    /// Membership of `y` in `t K` through the fan triangles, with absolute
    /// slack `tol`.
    pub fn scaled_contains(&self, t: f64, y: Point2, tol: f64) -> bool {
        let v = self.polygon.vertices();
        let n = v.len();
        (0..n).any(|i| {
            let (a, b) = (v[i] * t, v[(i + 1) % n] * t);
            let la = a.norm().max(f64::MIN_POSITIVE);
            let lb = b.norm().max(f64::MIN_POSITIVE);
            let lab = (b - a).norm().max(f64::MIN_POSITIVE);
            a.cross(y) / la >= -tol && y.cross(b) / lb >= -tol && (b - a).cross(y - a) / lab >= -tol
        })
    }
}

/// Checks that `p` is star-shaped with respect to the origin with every
/// boundary point visible from it, and builds the fan decomposition.
pub fn validate_star_shaped(p: Polygon) -> Result<StarPattern> {
    match p.locate(Point2::ORIGIN) {
        PointLocation::Inside => {}
        PointLocation::OnBoundary => {
            return Err(Error::NotStarShaped("origin lies on the boundary".into()));
        }
        PointLocation::Outside => {
            return Err(Error::NotStarShaped("origin lies outside the polygon".into()));
        }
    }
    let v = p.vertices();
    let n = v.len();
    let mut cones = Vec::with_capacity(n);
    let mut face_lines = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        let c = a.cross(b);
        if c.abs() <= 1e-12 * a.norm() * b.norm() {
            return Err(Error::CoplanarFace { edge: i });
        }
        if c < 0.0 {
            return Err(Error::NotStarShaped(format!(
                "edge {i} is not visible from the origin (fan triangle is clockwise)"
            )));
        }
        let d = b - a;
        face_lines.push(FaceLine {
            normal: Point2::new(d.y, -d.x),
            offset: c,
        });
        cones.push(ConvexPolygon::from_ccw_unchecked(vec![Point2::ORIGIN, a, b]));
    }
    let delta = face_lines
        .iter()
        .map(FaceLine::distance)
        .fold(f64::INFINITY, f64::min);
    Ok(StarPattern {
        polygon: p,
        cones,
        face_lines,
        lipschitz: 1.0 / delta,
    })
}

pub fn gauge(k: &StarPattern, y: Point2) -> f64 {
    k.gauge(y)
}

pub fn lipschitz_constant(k: &StarPattern) -> f64 {
    k.lipschitz()
}

/// Fan triangles `(0, v_i, v_{i+1})`, one per edge. Their union is the pattern.
pub fn fan_decompose(k: &StarPattern) -> Vec<ConvexPolygon> {
    k.cones.clone()
}
