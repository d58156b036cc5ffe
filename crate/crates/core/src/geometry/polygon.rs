use serde::{Deserialize, Serialize};

use super::point::{signed_area, Point2, Segment};
use super::{RegionClass, INCIDENCE_TOL};
use crate::boxes::Hyperbox;
use crate::error::{Error, Result};

/// Where a point lies relative to a closed region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointLocation {
    Inside,
    Outside,
    OnBoundary,
}

/// Simple polygon with counterclockwise vertices; the last vertex connects
/// back to the first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon(format!("vertex {i} is not finite")));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidPolygon(format!("vertices {i} and {} coincide", (i + 1) % n)));
            }
        }
        let area = signed_area(&vertices);
        if area <= 0.0 {
            return Err(Error::NotCounterClockwise(area));
        }
        let p = Self { vertices };
        p.check_simple()?;
        Ok(p)
    }

    pub fn from_coords(coords: &[[f64; 2]]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point2::from).collect())
    }

    fn check_simple(&self) -> Result<()> {
        let n = self.vertices.len();
        let edges: Vec<Segment> = self.edges().collect();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // Adjacent edges share exactly one vertex; reject fold-backs.
                    let (shared, p, q) = if j == i + 1 {
                        (edges[i].b, edges[i].a, edges[j].b)
                    } else {
                        (edges[i].a, edges[i].b, edges[j].a)
                    };
                    let u = p - shared;
                    let v = q - shared;
                    if u.cross(v) == 0.0 && u.dot(v) > 0.0 {
                        return Err(Error::NotSimple(i, j));
                    }
                } else if edges[i].intersects(&edges[j]) {
                    return Err(Error::NotSimple(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Bounding box as `[min_x, max_x, min_y, max_y]`.
    pub fn extent(&self) -> [f64; 4] {
        let mut e = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
        for p in &self.vertices {
            e[0] = e[0].min(p.x);
            e[1] = e[1].max(p.x);
            e[2] = e[2].min(p.y);
            e[3] = e[3].max(p.y);
        }
        e
    }

    pub fn bounding_box(&self) -> Hyperbox {
        let [x0, x1, y0, y1] = self.extent();
        Hyperbox::rect(x0, x1, y0, y1).expect("finite polygon has a valid bounding box")
    }

    /// Even-odd ray cast along `+x`. An edge counts when one endpoint lies
    /// strictly above the ray and the other at or below it. Points within
    /// [`INCIDENCE_TOL`] of an edge are reported on the boundary.
    pub fn locate(&self, p: Point2) -> PointLocation {
        if self.edges().any(|e| e.distance_to(p) <= INCIDENCE_TOL) {
            return PointLocation::OnBoundary;
        }
        let mut inside = false;
        for e in self.edges() {
            let (a, b) = (e.a, e.b);
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if x > p.x {
                    inside = !inside;
                }
            }
        }
        if inside {
            PointLocation::Inside
        } else {
            PointLocation::Outside
        }
    }

    /// Closed containment: inside or on the boundary.
    pub fn contains(&self, p: Point2) -> bool {
        self.locate(p) != PointLocation::Outside
    }

    /// Classifies a 2-D box against the closed region. A box touched by any
    /// edge (within tolerance) straddles; otherwise it lies wholly on one
    /// side and its center decides.
    pub fn classify_box(&self, b: &Hyperbox) -> RegionClass {
        let tol = INCIDENCE_TOL;
        let (x0, y0, x1, y1) = (b.lo()[0] - tol, b.lo()[1] - tol, b.hi()[0] + tol, b.hi()[1] + tol);
        let [ex0, ex1, ey0, ey1] = self.extent();
        if x1 < ex0 || x0 > ex1 || y1 < ey0 || y0 > ey1 {
            return RegionClass::Outside;
        }
        if self.edges().any(|e| e.intersects_rect(x0, x1, y0, y1)) {
            return RegionClass::Straddles;
        }
        let c = b.center();
        match self.locate(Point2::new(c[0], c[1])) {
            PointLocation::Inside => RegionClass::Inside,
            PointLocation::Outside => RegionClass::Outside,
            PointLocation::OnBoundary => RegionClass::Straddles,
        }
    }
}

impl Polygon {
    /// Sutherland-Hodgman clip against a 2-D box. The region may be
    /// non-convex, in which case separate pieces come back joined by
    /// zero-width bridges along the box boundary. Every returned vertex lies
    /// in the closure of `box ∩ Q`, and their convex hull covers it, which is
    /// all that containment tests need.
    pub fn clip_to_box(&self, b: &Hyperbox) -> Vec<Point2> {
        let (x0, y0, x1, y1) = (b.lo()[0], b.lo()[1], b.hi()[0], b.hi()[1]);
        // Each clip edge as (signed distance, intersection with its line).
        type Side = (fn(Point2, f64) -> f64, f64);
        let sides: [Side; 4] = [
            (|p, c| p.x - c, x0),
            (|p, c| c - p.x, x1),
            (|p, c| p.y - c, y0),
            (|p, c| c - p.y, y1),
        ];
        let mut poly = self.vertices.clone();
        for (dist, c) in sides {
            if poly.is_empty() {
                break;
            }
            let mut out = Vec::with_capacity(poly.len() + 4);
            for i in 0..poly.len() {
                let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
                let (da, db) = (dist(a, c), dist(b, c));
                if da >= 0.0 {
                    out.push(a);
                }
                if (da >= 0.0) != (db >= 0.0) {
                    out.push(a + (b - a) * (da / (da - db)));
                }
            }
            poly = out;
        }
        poly
    }
}

/// Free-function form of [`Polygon::locate`].
pub fn point_in_polygon(q: &Polygon, x: Point2) -> PointLocation {
    q.locate(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(h: f64) -> Polygon {
        Polygon::from_coords(&[[-h, -h], [h, -h], [h, h], [-h, h]]).unwrap()
    }

    #[test]
    fn locate_examples() {
        let q = square(2.0);
        assert_eq!(q.locate(Point2::new(0.0, 0.0)), PointLocation::Inside);
        assert_eq!(q.locate(Point2::new(3.0, 0.0)), PointLocation::Outside);
        assert_eq!(q.locate(Point2::new(2.0, 0.0)), PointLocation::OnBoundary);
    }

    #[test]
    fn ray_through_vertex_counts_once() {
        // Diamond: the ray from (0,0) passes exactly through vertex (1,0).
        let q = Polygon::from_coords(&[[0.0, -1.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]).unwrap();
        assert_eq!(q.locate(Point2::new(0.0, 0.0)), PointLocation::Inside);
        assert_eq!(q.locate(Point2::new(-2.0, 0.0)), PointLocation::Outside);
        // Horizontal edge collinear with the ray.
        let r = Polygon::from_coords(&[[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]])
            .unwrap();
        assert_eq!(r.locate(Point2::new(0.5, 1.0)), PointLocation::Inside);
        assert_eq!(r.locate(Point2::new(-1.0, 1.0)), PointLocation::Outside);
        assert_eq!(r.locate(Point2::new(1.5, 1.5)), PointLocation::Outside);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(Polygon::from_coords(&[[0.0, 0.0], [1.0, 0.0]]), Err(Error::TooFewVertices(2))));
        assert!(matches!(
            Polygon::from_coords(&[[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]),
            Err(Error::NotCounterClockwise(_))
        ));
        // Bow tie.
        let bow = Polygon::from_coords(&[[0.0, 0.0], [2.0, 2.0], [2.0, 0.0], [0.0, 2.0]]);
        assert!(bow.is_err());
        let bow = Polygon::from_coords(&[[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [2.0, 2.0], [3.0, 1.0], [-1.0, 1.0]]);
        assert!(bow.is_err());
    }

    #[test]
    fn classify_box_against_square() {
        let q = square(2.0);
        assert_eq!(q.classify_box(&Hyperbox::rect(-1.0, 1.0, -1.0, 1.0).unwrap()), RegionClass::Inside);
        assert_eq!(q.classify_box(&Hyperbox::rect(3.0, 4.0, 0.0, 1.0).unwrap()), RegionClass::Outside);
        assert_eq!(q.classify_box(&Hyperbox::rect(1.5, 2.5, 0.0, 1.0).unwrap()), RegionClass::Straddles);
        // The root box equals the contour: touches every edge.
        assert_eq!(q.classify_box(&Hyperbox::rect(-2.0, 2.0, -2.0, 2.0).unwrap()), RegionClass::Straddles);
        // Contour wholly inside a large box.
        assert_eq!(q.classify_box(&Hyperbox::rect(-5.0, 5.0, -5.0, 5.0).unwrap()), RegionClass::Straddles);
    }

    #[test]
    fn classify_box_in_concave_notch() {
        // L-shape: the notch [1,2]x[1,2] is outside.
        let q = Polygon::from_coords(&[[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]]).unwrap();
        assert_eq!(q.classify_box(&Hyperbox::rect(1.2, 1.8, 1.2, 1.8).unwrap()), RegionClass::Outside);
        assert_eq!(q.classify_box(&Hyperbox::rect(0.2, 0.8, 1.2, 1.8).unwrap()), RegionClass::Inside);
    }

    #[test]
    fn clip_to_box_covers_the_intersection() {
        let q = Polygon::from_coords(&[[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]]).unwrap();
        let b = Hyperbox::rect(0.5, 1.5, 0.5, 1.5).unwrap();
        let c = q.clip_to_box(&b);
        // The intersection is an L with corners at (1.5, 1) and (1, 1.5).
        assert!(c.iter().all(|p| q.contains(*p) && b.contains(&[p.x, p.y]).unwrap()));
        for corner in [[0.5, 0.5], [1.5, 0.5], [1.5, 1.0], [1.0, 1.0], [1.0, 1.5], [0.5, 1.5]] {
            assert!(c.contains(&Point2::new(corner[0], corner[1])), "{corner:?} missing from {c:?}");
        }
        assert!(q.clip_to_box(&Hyperbox::rect(1.2, 1.8, 1.2, 1.8).unwrap()).is_empty());
        assert_eq!(q.clip_to_box(&Hyperbox::rect(-1.0, 3.0, -1.0, 3.0).unwrap()), q.vertices);
    }
}
