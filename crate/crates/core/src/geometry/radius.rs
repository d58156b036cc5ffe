use super::point::{Point2, Segment};
use super::polygon::{PointLocation, Polygon};
use super::star::StarPattern;

/// Returned by [`radius_value`] for centers outside the contour.
pub const INFEASIBLE_RADIUS: f64 = -1.0;

/// Largest `r >= 0` with `x + rK ⊂ Q`, or [`INFEASIBLE_RADIUS`] when `x` is
/// outside `Q`.
///
/// Equals the minimum of the gauge of `q - x` over boundary points `q`. Each
/// contour edge is clipped against every fan cone of the pattern; the gauge is
/// linear on each clipped piece, so only piece endpoints are evaluated.
pub fn radius_value(q: &Polygon, k: &StarPattern, x: Point2) -> f64 {
    match q.locate(x) {
        PointLocation::Outside => return INFEASIBLE_RADIUS,
        PointLocation::OnBoundary => return 0.0,
        PointLocation::Inside => {}
    }
    let mut best = f64::INFINITY;
    for e in q.edges() {
        best = best.min(edge_min_gauge(k, Segment::new(e.a - x, e.b - x)));
    }
    best.max(0.0)
}

/// Minimum gauge over a segment given relative to the pattern origin.
pub(crate) fn edge_min_gauge(k: &StarPattern, s: Segment) -> f64 {
    let v = k.vertices();
    let n = v.len();
    let d = s.b - s.a;
    let mut best = f64::INFINITY;
    for i in 0..n {
        let (lo_ray, hi_ray) = (v[i], v[(i + 1) % n]);
        // Wedge: cross(lo_ray, y) >= 0 and cross(y, hi_ray) >= 0, with
        // y = a + s d. Each constraint is affine in s.
        let mut s0 = 0.0f64;
        let mut s1 = 1.0f64;
        for (c0, c1) in [
            (lo_ray.cross(s.a), lo_ray.cross(d)),
            (s.a.cross(hi_ray), d.cross(hi_ray)),
        ] {
            // c0 + s c1 >= 0
            if c1 == 0.0 {
                if c0 < 0.0 {
                    s1 = -1.0;
                }
            } else if c1 > 0.0 {
                s0 = s0.max(-c0 / c1);
            } else {
                s1 = s1.min(-c0 / c1);
            }
        }
        if s0 > s1 {
            continue;
        }
        let g0 = k.cone_gauge(i, s.a + d * s0);
        let g1 = k.cone_gauge(i, s.a + d * s1);
        best = best.min(g0).min(g1);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::star::validate_star_shaped;
    use approx::assert_relative_eq;

    fn square(h: f64) -> Polygon {
        Polygon::from_coords(&[[-h, -h], [h, -h], [h, h], [-h, h]]).unwrap()
    }

    fn star() -> StarPattern {
        validate_star_shaped(
            Polygon::from_coords(&[
                [2.0, 0.0],
                [0.3, 0.3],
                [0.0, 2.0],
                [-0.3, 0.3],
                [-2.0, 0.0],
                [-0.3, -0.3],
                [0.0, -2.0],
                [0.3, -0.3],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    /// Brute force: minimum gauge over densely sampled boundary points.
    fn sampled_radius(q: &Polygon, k: &StarPattern, x: Point2, per_edge: usize) -> f64 {
        let mut best = f64::INFINITY;
        for e in q.edges() {
            for i in 0..=per_edge {
                let p = e.a + (e.b - e.a) * (i as f64 / per_edge as f64);
                best = best.min(k.gauge(p - x));
            }
        }
        best
    }

    #[test]
    fn square_in_square() {
        let q = square(2.0);
        let k = validate_star_shaped(square(1.0)).unwrap();
        assert_eq!(radius_value(&q, &k, Point2::new(0.0, 0.0)), 2.0);
        assert_eq!(radius_value(&q, &k, Point2::new(1.0, 0.0)), 1.0);
        assert_eq!(radius_value(&q, &k, Point2::new(2.0, 0.5)), 0.0);
        assert_eq!(radius_value(&q, &k, Point2::new(3.0, 0.0)), INFEASIBLE_RADIUS);
    }

    #[test]
    fn star_in_square_matches_sampling() {
        let q = square(2.0);
        let k = star();
        let exact = radius_value(&q, &k, Point2::ORIGIN);
        assert_relative_eq!(exact, 1.0, max_relative = 1e-12);
        let sampled = sampled_radius(&q, &k, Point2::ORIGIN, 25_000);
        assert!((sampled - exact).abs() < 1e-4 && sampled >= exact - 1e-12);

        for x in [Point2::new(0.3, -0.7), Point2::new(-1.2, 0.4), Point2::new(1.5, 1.5)] {
            let exact = radius_value(&q, &k, x);
            let sampled = sampled_radius(&q, &k, x, 25_000);
            assert!(sampled >= exact - 1e-12, "{x:?}: sampled {sampled} < exact {exact}");
            assert!(sampled - exact < 1e-3, "{x:?}: sampled {sampled} vs exact {exact}");
        }
    }
}
