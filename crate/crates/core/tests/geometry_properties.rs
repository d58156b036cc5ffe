mod common;

use common::*;
use invgraph::estimators::DesignCentering;
use invgraph::geometry::{fan_decompose, gauge, Point2, INCIDENCE_TOL};
use invgraph::{BoxLabel, Hyperbox};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sample_inside(dc: &DesignCentering, rng: &mut ChaCha8Rng) -> Point2 {
    let b = dc.root_box();
    loop {
        let x = Point2::new(rng.gen_range(b.lo()[0]..b.hi()[0]), rng.gen_range(b.lo()[1]..b.hi()[1]));
        if dc.contour.contains(x) {
            return x;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauge_is_positively_homogeneous(k in star_pattern(), x in -3.0f64..3.0, y in -3.0f64..3.0, t in 0.0f64..10.0) {
        let p = Point2::new(x, y);
        let lhs = gauge(&k, p * t);
        let rhs = t * gauge(&k, p);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0));
    }

    #[test]
    fn gauge_level_set_is_scaled_boundary(k in star_pattern(), x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let p = Point2::new(x, y);
        prop_assume!(p.norm() > 1e-6);
        let t = gauge(&k, p);
        prop_assert!(k.scaled_contains(t, p, 1e-9));
        prop_assert!(!k.scaled_contains(t * (1.0 - 1e-6), p, 0.0));
    }

    #[test]
    fn fan_areas_sum_to_polygon_area(k in star_pattern()) {
        let total: f64 = fan_decompose(&k).iter().map(|c| c.area()).sum();
        let area = k.polygon().area();
        prop_assert!((total - area).abs() <= 1e-9 * area);
    }

    #[test]
    fn radius_matches_element_membership(dc in problem(), seed in any::<u64>(), t in 0.05f64..2.0) {
        let est = dc.estimator();
        let elements = est.elements(t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            let x = sample_inside(&dc, &mut rng);
            let r = dc.radius(x);
            if (r - t).abs() <= 1e-9 * t.max(1.0) {
                continue;
            }
            let covered = elements.iter().any(|e| e.contains(x, INCIDENCE_TOL));
            prop_assert_eq!(r >= t, !covered, "x={:?} r={} t={}", x, r, t);
        }
    }

    #[test]
    fn radius_is_lipschitz(dc in problem(), seed in any::<u64>()) {
        let l = dc.lipschitz();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..500 {
            let a = sample_inside(&dc, &mut rng);
            let b = sample_inside(&dc, &mut rng);
            let gap = (dc.radius(a) - dc.radius(b)).abs();
            prop_assert!(gap <= l * (a - b).norm() + 1e-9);
        }
    }

    #[test]
    fn filled_labels_survive_lower_thresholds(
        dc in problem(), cx in 0.0f64..1.0, cy in 0.0f64..1.0, w in 0.01f64..0.5, t1 in 0.05f64..2.0, f in 0.0f64..1.0,
    ) {
        let est = dc.estimator();
        let rb = dc.root_box();
        let x = rb.lo()[0] + cx * rb.width(0);
        let y = rb.lo()[1] + cy * rb.width(1);
        let b = Hyperbox::rect(x, x + w, y, y + w).unwrap();
        if est.dc_classify(&b, t1) == BoxLabel::Filled {
            let t2 = t1 * f.max(1e-3);
            prop_assert_ne!(est.dc_classify(&b, t2), BoxLabel::Empty);
        }
    }

    #[test]
    fn shrinking_boxes_become_filled(dc in problem(), seed in any::<u64>()) {
        let est = dc.estimator();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let x = sample_inside(&dc, &mut rng);
            let r = dc.radius(x);
            prop_assume!(r > 1e-6);
            let t = r * rng.gen_range(0.1..0.9);
            let mut w = 1.0;
            let mut filled = false;
            while w >= 1e-9 {
                if est.dc_classify(&Hyperbox::centered(&[x.x, x.y], w).unwrap(), t) == BoxLabel::Filled {
                    filled = true;
                    break;
                }
                w /= 2.0;
            }
            prop_assert!(filled, "no filled box around {:?} at t={} (r={})", x, t, r);
        }
    }

    #[test]
    fn labels_agree_with_sampled_radius(dc in problem(), seed in any::<u64>(), t in 0.0f64..2.0) {
        let est = dc.estimator();
        let rb = dc.root_box();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..40 {
            let w = rng.gen_range(0.01..1.0);
            let x = rng.gen_range(rb.lo()[0]..rb.hi()[0] - w);
            let y = rng.gen_range(rb.lo()[1]..rb.hi()[1] - w);
            let b = Hyperbox::rect(x, x + w, y, y + w).unwrap();
            let label = est.dc_classify(&b, t);
            if label == BoxLabel::Boundary {
                continue;
            }
            for i in 0..10 {
                for j in 0..10 {
                    let p = Point2::new(x + w * i as f64 / 9.0, y + w * j as f64 / 9.0);
                    let r = dc.radius(p);
                    let tol = 1e-9 * t.max(1.0);
                    match label {
                        BoxLabel::Filled => prop_assert!(r >= t - tol, "filled {:?} at t={} but r({:?})={}", b, t, p, r),
                        _ => prop_assert!(r <= t + tol, "empty {:?} at t={} but r({:?})={}", b, t, p, r),
                    }
                }
            }
        }
    }
}

#[test]
fn square_pattern_lipschitz_bound_is_nearly_tight() {
    let dc = square_in_square();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut best = 0.0f64;
    for _ in 0..10_000 {
        let a = sample_inside(&dc, &mut rng);
        let b = sample_inside(&dc, &mut rng);
        let d = (a - b).norm();
        if d > 1e-9 {
            best = best.max((dc.radius(a) - dc.radius(b)).abs() / d);
        }
    }
    assert!(best >= 0.5 * dc.lipschitz() && best <= dc.lipschitz() + 1e-9, "{best}");
}
