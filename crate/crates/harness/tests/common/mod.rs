#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use invgraph::estimators::DesignCentering;
use invgraph::geometry::{validate_star_shaped, Point2, Polygon, StarPattern};
use invgraph::{BoxLabel, EventKind, TraceEvent};
use invgraph_harness::problem::validate;
use invgraph_harness::{ProblemFile, RawProblem};
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

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

/// Increasing angles with every gap, wrap-around included, in
/// `[min_gap, pi - min_gap]`.
fn random_angles(rng: &mut impl Rng, n: usize, min_gap: f64) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
        let total: f64 = w.iter().sum();
        let gaps: Vec<f64> = w.iter().map(|x| x / total * 2.0 * PI).collect();
        if gaps.iter().all(|g| *g >= min_gap && *g <= PI - min_gap) {
            let start = rng.gen_range(0.0..2.0 * PI);
            let mut acc = start;
            return gaps
                .iter()
                .map(|g| {
                    let a = acc;
                    acc += g;
                    a
                })
                .collect();
        }
    }
}

fn radial(center: Point2, angles: &[f64], radii: &[f64]) -> Polygon {
    let coords: Vec<[f64; 2]> = angles
        .iter()
        .zip(radii)
        .map(|(a, r)| [center.x + r * a.cos(), center.y + r * a.sin()])
        .collect();
    Polygon::from_coords(&coords).unwrap()
}

/// Star-shaped about the origin, 3 to 10 vertices, possibly non-convex.
pub fn random_pattern(rng: &mut impl Rng) -> StarPattern {
    let n = rng.gen_range(3..=10);
    let angles = random_angles(rng, n, 0.1);
    let radii: Vec<f64> = (0..n).map(|_| rng.gen_range(0.3..1.5)).collect();
    validate_star_shaped(radial(Point2::ORIGIN, &angles, &radii)).unwrap()
}

/// Simple polygon with 5 to 12 vertices around a random center.
pub fn random_contour(rng: &mut impl Rng) -> Polygon {
    let n = rng.gen_range(5..=12);
    let center = Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let angles = random_angles(rng, n, 0.1);
    let radii: Vec<f64> = (0..n).map(|_| rng.gen_range(2.0..5.0)).collect();
    radial(center, &angles, &radii)
}

/// Node grid over the contour's bounding box with radius values.
pub fn grid_points(dc: &DesignCentering, n: usize) -> Vec<(Point2, f64)> {
    let b = dc.root_box();
    let (hx, hy) = (b.width(0) / (n - 1) as f64, b.width(1) / (n - 1) as f64);
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let x = Point2::new(b.lo()[0] + i as f64 * hx, b.lo()[1] + j as f64 * hy);
            out.push((x, dc.radius(x)));
        }
    }
    out
}

pub fn sample_feasible(dc: &DesignCentering, rng: &mut impl Rng) -> Point2 {
    let b = dc.root_box();
    loop {
        let x = Point2::new(rng.gen_range(b.lo()[0]..b.hi()[0]), rng.gen_range(b.lo()[1]..b.hi()[1]));
        if dc.radius(x) > 0.0 {
            return x;
        }
    }
}

/// First event whose threshold is not strictly below `opt_hi`.
pub fn threshold_violation(events: &[TraceEvent], opt_hi: f64) -> Option<String> {
    events
        .iter()
        .enumerate()
        .find(|(_, e)| e.t >= opt_hi)
        .map(|(i, e)| format!("event {i} ({:?}) t={} >= {opt_hi}", e.kind, e.t))
}

/// Feasible points with `r > t` outside every recorded box of some event.
pub fn cover_violations(events: &[TraceEvent], points: &[(Point2, f64)]) -> Vec<String> {
    let mut out = Vec::new();
    for (i, e) in events.iter().enumerate() {
        let Some(boxes) = &e.boxes else { continue };
        for (x, r) in points {
            if *r >= 0.0 && *r > e.t && !boxes.iter().any(|b| b.contains(&[x.x, x.y])) {
                out.push(format!("event {i} ({:?}): {x:?} r={r} > t={}", e.kind, e.t));
            }
        }
    }
    out
}

/// Accuracy events whose estimate falls below `gap_lo = opt_lo - t`.
/// Estimates at or above `cutoff` are skipped (pass `f64::INFINITY` for
/// runs without early exit).
pub fn accuracy_violations(events: &[TraceEvent], opt_lo: f64, cutoff: f64) -> Vec<String> {
    events
        .iter()
        .enumerate()
        .filter(|(_, e)| e.kind == EventKind::Accuracy)
        .filter_map(|(i, e)| {
            let est = e.estimate?;
            (est < cutoff && est < opt_lo - e.t).then(|| format!("event {i}: estimate {est} < gap {}", opt_lo - e.t))
        })
        .collect()
}

/// Checks each labeled box against its label on a 10 x 10 sub-grid.
/// Returns (labels audited, violations).
pub fn audit_labels(dc: &DesignCentering, events: &[TraceEvent]) -> (usize, Vec<String>) {
    let mut audited = 0;
    let mut bad = Vec::new();
    for (i, e) in events.iter().enumerate() {
        let (Some(boxes), Some(t)) = (&e.boxes, e.label_threshold) else { continue };
        let tol = 1e-9 * t.abs().max(1.0);
        for b in boxes {
            let label = match b.label {
                Some(l @ (BoxLabel::Filled | BoxLabel::Empty)) => l,
                _ => continue,
            };
            audited += 1;
            for p in 0..10 {
                for q in 0..10 {
                    let x = Point2::new(
                        b.lo[0] + (b.hi[0] - b.lo[0]) * p as f64 / 9.0,
                        b.lo[1] + (b.hi[1] - b.lo[1]) * q as f64 / 9.0,
                    );
                    let r = dc.radius(x);
                    let ok = match label {
                        BoxLabel::Filled => r >= 0.0 && r >= t - tol,
                        _ => r < 0.0 || r <= t + tol,
                    };
                    if !ok {
                        bad.push(format!("event {i}: {label:?} box {:?}-{:?} at t={t}, r({x:?})={r}", b.lo, b.hi));
                    }
                }
            }
        }
    }
    (audited, bad)
}

pub fn coords(p: &Polygon) -> Vec<[f64; 2]> {
    p.vertices().iter().map(|v| [v.x, v.y]).collect()
}

pub fn dc_problem(name: &str, contour: &Polygon, pattern: &StarPattern, epsilon: f64) -> ProblemFile {
    let raw = RawProblem::DesignCentering {
        name: Some(name.to_string()),
        contour: coords(contour),
        pattern: coords(pattern.polygon()),
        epsilon,
        solvers: None,
        initial_threshold: None,
        domain_scale: None,
        target: None,
    };
    validate(raw, Path::new(name), name.to_string()).unwrap()
}
