//! Domain estimation for design centering by erosion.
//!
//! `x + rK ⊂ Q` holds exactly when `x` lies in `Q` but outside
//! `∂Q ⊕ r(-K)`. That Minkowski sum is the union of convex elements
//! `edge ⊕ r·(-cone)` over contour edges and pattern fan cones, so a box is
//! empty if it is outside `Q`, too close to `∂Q` for radius `t` to fit, or
//! its part inside `Q` lies in a single element, and filled if it is inside `Q` and outside every element.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use crate::boxes::{BoxLabel, Hyperbox};
use crate::error::Result;
use crate::estimator::{Direction, DomainEstimator};
use crate::geometry::{
    convex_minkowski_sum, fan_decompose, radius_value, reflect, scale, ConvexPolygon, Point2, Polygon,
    PreparedConvex, RegionClass, StarPattern,
};

use super::bnb::{Evaluation, LipschitzObjective};

const CACHE_LIMIT: usize = 4096;

/// Contour `Q` and star-shaped pattern `K`; the objective is the radius value
/// `r(x) = max{r >= 0 : x + rK ⊂ Q}`, to be maximized over `x in Q`.
#[derive(Debug, Clone)]
pub struct DesignCentering {
    pub contour: Polygon,
    pub pattern: StarPattern,
}

impl DesignCentering {
    pub fn new(contour: Polygon, pattern: StarPattern) -> Self {
        Self { contour, pattern }
    }

    pub fn root_box(&self) -> Hyperbox {
        self.contour.bounding_box()
    }

    pub fn radius(&self, x: Point2) -> f64 {
        radius_value(&self.contour, &self.pattern, x)
    }

    pub fn lipschitz(&self) -> f64 {
        self.pattern.lipschitz()
    }

    pub fn estimator(&self) -> DesignCenteringEstimator {
        DesignCenteringEstimator::new(self.contour.clone(), self.pattern.clone())
    }
}

impl LipschitzObjective for DesignCentering {
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
        let r = self.radius(Point2::new(x[0], x[1]));
        // Outside Q the radius is bounded by L times the distance to ∂Q, so
        // zero is a valid surrogate for bounding.
        Ok(Evaluation {
            value: r.max(0.0),
            feasible: r >= 0.0,
        })
    }

    fn lipschitz(&self) -> f64 {
        self.pattern.lipschitz()
    }

    fn direction(&self) -> Direction {
        Direction::Maximize
    }
}

#[derive(Debug)]
struct ElementSet {
    polygons: Vec<ConvexPolygon>,
    prepared: Vec<PreparedConvex>,
}

/// Erosion-based domain estimator. Thresholds passed through the
/// [`DomainEstimator`] trait are in the minimization frame (`-r`); use
/// [`DesignCenteringEstimator::dc_classify`] for radius thresholds.
#[derive(Debug)]
pub struct DesignCenteringEstimator {
    contour: Polygon,
    pattern: StarPattern,
    reflected_parts: Vec<ConvexPolygon>,
    cache: Mutex<HashMap<u64, Arc<ElementSet>>>,
    sub_ops: AtomicU64,
}

impl DesignCenteringEstimator {
    pub fn new(contour: Polygon, pattern: StarPattern) -> Self {
        let reflected_parts = reflect(&fan_decompose(&pattern));
        Self {
            contour,
            pattern,
            reflected_parts,
            cache: Mutex::new(HashMap::new()),
            sub_ops: AtomicU64::new(0),
        }
    }

    pub fn contour(&self) -> &Polygon {
        &self.contour
    }

    pub fn pattern(&self) -> &StarPattern {
        &self.pattern
    }

    pub fn reflected_parts(&self) -> &[ConvexPolygon] {
        &self.reflected_parts
    }

    fn element_set(&self, t: f64) -> Arc<ElementSet> {
        let key = t.to_bits();
        let mut cache = self.cache.lock().expect("element cache poisoned");
        if let Some(set) = cache.get(&key) {
            return Arc::clone(set);
        }
        let mut polygons = Vec::with_capacity(self.contour.len() * self.reflected_parts.len());
        for part in &self.reflected_parts {
            let scaled = scale(part, t).expect("non-negative threshold");
            for edge in self.contour.edges() {
                polygons.push(convex_minkowski_sum(&edge, &scaled));
            }
        }
        let prepared = polygons.iter().map(ConvexPolygon::prepare).collect();
        let set = Arc::new(ElementSet { polygons, prepared });
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(key, Arc::clone(&set));
        set
    }

    /// Convex elements of `∂Q ⊕ t(-K)`; empty for `t <= 0`.
    pub fn elements(&self, t: f64) -> Vec<ConvexPolygon> {
        if t <= 0.0 {
            return Vec::new();
        }
        self.element_set(t).polygons.clone()
    }

    /// Labels `b` for the radius threshold `t`: filled means `r(x) >= t` on
    /// all of `b`, empty means `r(x) < t` or `x ∉ Q` on all of `b`.
    pub fn dc_classify(&self, b: &Hyperbox, t: f64) -> BoxLabel {
        let contour = self.contour.classify_box(b);
        self.sub_ops.fetch_add(self.contour.len() as u64, Ordering::Relaxed);
        if contour == RegionClass::Outside {
            return BoxLabel::Empty;
        }
        if t <= 0.0 {
            // Every point of Q has r >= 0 >= t.
            return if contour == RegionClass::Inside {
                BoxLabel::Filled
            } else {
                BoxLabel::Boundary
            };
        }
        // r(x) <= L |q - x| for every boundary point q, which settles boxes
        // far below the threshold without building elements.
        let c = b.center();
        let c = Point2::new(c[0], c[1]);
        let reach = self.contour.edges().map(|e| e.distance_to(c)).fold(f64::INFINITY, f64::min);
        if self.pattern.lipschitz() * (reach + b.diameter() / 2.0) < t {
            self.sub_ops.fetch_add(self.contour.len() as u64, Ordering::Relaxed);
            return BoxLabel::Empty;
        }
        let set = self.element_set(t);
        // For a box straddling the contour only its part inside Q has to be
        // covered; that part is represented by the clipped contour.
        let clipped = (contour == RegionClass::Straddles).then(|| self.contour.clip_to_box(b));
        if clipped.as_ref().is_some_and(Vec::is_empty) {
            return BoxLabel::Empty;
        }
        let mut outside_all = true;
        let mut ops = 0u64;
        let mut label = None;
        for e in &set.prepared {
            ops += e.cost() as u64;
            match e.classify_box(b) {
                RegionClass::Inside => {
                    label = Some(BoxLabel::Empty);
                    break;
                }
                RegionClass::Straddles => {
                    outside_all = false;
                    if let Some(c) = &clipped {
                        ops += c.len() as u64;
                        if e.contains_all(c) {
                            label = Some(BoxLabel::Empty);
                            break;
                        }
                    }
                }
                RegionClass::Outside => {}
            }
        }
        self.sub_ops.fetch_add(ops, Ordering::Relaxed);
        label.unwrap_or(if contour == RegionClass::Inside && outside_all {
            BoxLabel::Filled
        } else {
            BoxLabel::Boundary
        })
    }
}

impl DomainEstimator for DesignCenteringEstimator {
    fn classify(&self, b: &Hyperbox, t: f64) -> Result<BoxLabel> {
        Ok(self.dc_classify(b, -t))
    }

    fn sub_operations(&self) -> u64 {
        self.sub_ops.load(Ordering::Relaxed)
    }
}
