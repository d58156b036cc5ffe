use super::point::{signed_area, Point2, Segment};
use super::{RegionClass, INCIDENCE_TOL};
use crate::boxes::Hyperbox;
use crate::error::{Error, Result};

/// Convex polygon with counterclockwise vertices. One vertex denotes a point
/// and two vertices a segment; both degenerate forms are valid summands.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    pub fn point(p: Point2) -> Self {
        Self { vertices: vec![p] }
    }

    pub fn segment(s: Segment) -> Self {
        Self::hull(&[s.a, s.b])
    }

    /// Validates counterclockwise convexity.
    pub fn from_ccw(vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::TooFewVertices(0));
        }
        if n >= 3 {
            for i in 0..n {
                let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
                if (b - a).cross(c - b) < 0.0 {
                    return Err(Error::InvalidPolygon(format!("reflex turn at vertex {}", (i + 1) % n)));
                }
            }
            if signed_area(&vertices) <= 0.0 {
                return Err(Error::NotCounterClockwise(signed_area(&vertices)));
            }
        }
        Ok(Self { vertices })
    }

    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point2>) -> Self {
        Self { vertices }
    }

    /// Convex hull (Andrew's monotone chain), collinear points dropped.
    pub fn hull(points: &[Point2]) -> Self {
        let mut pts: Vec<Point2> = points.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup();
        if pts.len() <= 2 {
            return Self { vertices: pts };
        }
        let mut out: Vec<Point2> = Vec::with_capacity(pts.len() + 1);
        for pass in 0..2 {
            let start = out.len();
            let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
                Box::new(pts.iter())
            } else {
                Box::new(pts.iter().rev())
            };
            for &p in iter {
                while out.len() >= start + 2 {
                    let (a, b) = (out[out.len() - 2], out[out.len() - 1]);
                    if (b - a).cross(p - b) <= 0.0 {
                        out.pop();
                    } else {
                        break;
                    }
                }
                out.push(p);
            }
            out.pop();
        }
        if out.len() < 2 {
            // All points collinear collapse to the two extremes.
            out = vec![pts[0], pts[pts.len() - 1]];
        }
        Self { vertices: out }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn area(&self) -> f64 {
        if self.is_degenerate() {
            0.0
        } else {
            signed_area(&self.vertices)
        }
    }

    /// Closed membership with absolute slack `tol`.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        match self.vertices.len() {
            1 => (p - self.vertices[0]).norm() <= tol,
            2 => Segment::new(self.vertices[0], self.vertices[1]).distance_to(p) <= tol,
            n => (0..n).all(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                (b - a).cross(p - a) / (b - a).norm() >= -tol
            }),
        }
    }

    /// Half-plane form for repeated box tests.
    pub fn prepare(&self) -> PreparedConvex {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.vertices {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let n = self.vertices.len();
        let mut planes = Vec::new();
        let edges = match n {
            1 => 0,
            2 => 1,
            _ => n,
        };
        for i in 0..edges {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let d = b - a;
            let len = d.norm();
            if len == 0.0 {
                continue;
            }
            let normal = Point2::new(d.y / len, -d.x / len);
            planes.push((normal, normal.dot(a)));
        }
        PreparedConvex {
            lo,
            hi,
            planes,
            solid: n >= 3,
        }
    }
}

/// Bounding box plus unit outward half-planes `normal . p <= offset` of a
/// convex polygon. A degenerate segment keeps its single supporting line.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedConvex {
    pub lo: Point2,
    pub hi: Point2,
    planes: Vec<(Point2, f64)>,
    solid: bool,
}

impl PreparedConvex {
    /// Number of half-planes tested per box (reporting only).
    pub fn cost(&self) -> usize {
        self.planes.len() + 1
    }

    /// Whether every point lies in the closed polygon, within
    /// [`INCIDENCE_TOL`]. Always false for degenerate polygons.
    pub fn contains_all(&self, points: &[Point2]) -> bool {
        self.solid
            && points
                .iter()
                .all(|p| self.planes.iter().all(|&(n, c)| n.dot(*p) - c <= INCIDENCE_TOL))
    }

    /// Separating-axis classification. Outside needs a gap of more than
    /// [`INCIDENCE_TOL`]. Inside is closed containment: a box may touch the
    /// boundary (within the same tolerance), which matters for boxes that
    /// share an edge with the contour.
    pub fn classify_box(&self, b: &Hyperbox) -> RegionClass {
        let m = INCIDENCE_TOL;
        let (x0, y0, x1, y1) = (b.lo()[0], b.lo()[1], b.hi()[0], b.hi()[1]);
        if x0 > self.hi.x + m || x1 < self.lo.x - m || y0 > self.hi.y + m || y1 < self.lo.y - m {
            return RegionClass::Outside;
        }
        let corners = [
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ];
        let mut inside = self.solid;
        for &(n, c) in &self.planes {
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for p in &corners {
                let v = n.dot(*p) - c;
                min = min.min(v);
                max = max.max(v);
            }
            if min > m {
                return RegionClass::Outside;
            }
            if !self.solid && max < -m {
                return RegionClass::Outside;
            }
            if max > m {
                inside = false;
            }
        }
        if inside {
            RegionClass::Inside
        } else {
            RegionClass::Straddles
        }
    }
}

/// Pointwise negation of every part. Negation is a half-turn, so vertex
/// order stays counterclockwise.
pub fn reflect(parts: &[ConvexPolygon]) -> Vec<ConvexPolygon> {
    parts
        .iter()
        .map(|p| {
            let mut v: Vec<Point2> = p.vertices.iter().map(|q| -*q).collect();
            if v.len() >= 3 && signed_area(&v) < 0.0 {
                v.reverse();
            }
            ConvexPolygon { vertices: v }
        })
        .collect()
}

/// Homothety about the origin. `t = 0` yields the single point `{0}`.
pub fn scale(p: &ConvexPolygon, t: f64) -> Result<ConvexPolygon> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeScale(t));
    }
    if t == 0.0 {
        return Ok(ConvexPolygon::point(Point2::ORIGIN));
    }
    Ok(ConvexPolygon {
        vertices: p.vertices.iter().map(|q| *q * t).collect(),
    })
}

/// Minkowski sum of a segment and a convex polygon: the hull of all pairwise
/// vertex sums.
pub fn convex_minkowski_sum(a: &Segment, b: &ConvexPolygon) -> ConvexPolygon {
    let mut pts = Vec::with_capacity(2 * b.vertices.len());
    for q in &b.vertices {
        pts.push(a.a + *q);
        pts.push(a.b + *q);
    }
    ConvexPolygon::hull(&pts)
}

pub fn box_vs_convex(b: &Hyperbox, c: &ConvexPolygon) -> RegionClass {
    c.prepare().classify_box(b)
}
