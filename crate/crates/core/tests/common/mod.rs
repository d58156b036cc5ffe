#![allow(dead_code)]

use std::f64::consts::PI;

use invgraph::estimators::DesignCentering;
use invgraph::geometry::{validate_star_shaped, Point2, Polygon, StarPattern};
use proptest::prelude::*;

pub fn square(h: f64) -> Polygon {
    Polygon::from_coords(&[[-h, -h], [h, -h], [h, h], [-h, h]]).unwrap()
}

pub fn four_point_star() -> StarPattern {
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

pub fn square_in_square() -> DesignCentering {
    DesignCentering::new(square(2.0), validate_star_shaped(square(1.0)).unwrap())
}

pub fn star_in_square() -> DesignCentering {
    DesignCentering::new(square(2.0), four_point_star())
}

/// Polygon through `center + r_i (cos a_i, sin a_i)` for increasing angles.
/// Gaps below pi keep the center strictly inside and off every edge line.
pub fn radial(center: (f64, f64), angles: &[f64], radii: &[f64]) -> Polygon {
    let coords: Vec<[f64; 2]> = angles
        .iter()
        .zip(radii)
        .map(|(a, r)| [center.0 + r * a.cos(), center.1 + r * a.sin()])
        .collect();
    Polygon::from_coords(&coords).unwrap()
}

/// Increasing angles in `[0, 2 pi)` with every gap (including wrap-around)
/// in `[0.15, pi - 0.15]`.
fn angles(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.2f64..1.0, n).prop_filter_map("gap too wide", |w| {
        let total: f64 = w.iter().sum();
        let gaps: Vec<f64> = w.iter().map(|x| x / total * 2.0 * PI).collect();
        if gaps.iter().any(|g| *g > PI - 0.15 || *g < 0.15) {
            return None;
        }
        let mut acc = 0.0;
        Some(
            gaps.iter()
                .map(|g| {
                    let a = acc;
                    acc += g;
                    a
                })
                .collect(),
        )
    })
}

pub fn star_pattern() -> impl Strategy<Value = StarPattern> {
    (3usize..=8)
        .prop_flat_map(|n| (angles(n), prop::collection::vec(0.3f64..2.0, n)))
        .prop_map(|(a, r)| validate_star_shaped(radial((0.0, 0.0), &a, &r)).unwrap())
}

pub fn contour() -> impl Strategy<Value = Polygon> {
    (4usize..=9, -1.0f64..1.0, -1.0f64..1.0)
        .prop_flat_map(|(n, cx, cy)| (Just((cx, cy)), angles(n), prop::collection::vec(1.5f64..4.0, n)))
        .prop_map(|(c, a, r)| radial(c, &a, &r))
}

pub fn problem() -> impl Strategy<Value = DesignCentering> {
    (contour(), star_pattern()).prop_map(|(q, k)| DesignCentering::new(q, k))
}

/// Cell-center grid over the contour's bounding box: points and values.
pub fn grid(dc: &DesignCentering, n: usize) -> Vec<(Point2, f64)> {
    let b = dc.root_box();
    let (w, h) = (b.width(0) / n as f64, b.width(1) / n as f64);
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let x = Point2::new(b.lo()[0] + (i as f64 + 0.5) * w, b.lo()[1] + (j as f64 + 0.5) * h);
            out.push((x, dc.radius(x)));
        }
    }
    out
}

/// Upper bound on the true optimum from a grid: best value plus the
/// Lipschitz slack of half a cell diagonal.
pub fn grid_upper_bound(dc: &DesignCentering, n: usize) -> (f64, f64) {
    let b = dc.root_box();
    let best = grid(dc, n).iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let slack = dc.lipschitz() * (b.width(0) / n as f64).hypot(b.width(1) / n as f64) / 2.0;
    (best, slack)
}
