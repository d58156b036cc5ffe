//! Brute-force reference values for design centering.

use anyhow::{bail, Result};
use invgraph::estimators::DesignCentering;
use invgraph::geometry::Point2;

use crate::problem::ProblemFile;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oracle {
    /// Largest radius value over the grid nodes.
    pub value: f64,
    pub point: [f64; 2],
    /// `L * cell_diagonal / 2`: the true optimum is at most `value + grid_error`.
    pub grid_error: f64,
}

/// Evaluates the radius on an `n x n` node grid spanning the contour's
/// bounding box, corners included.
pub fn grid_oracle(dc: &DesignCentering, n: usize) -> Oracle {
    let n = n.max(2);
    let b = dc.root_box();
    let (x0, y0) = (b.lo()[0], b.lo()[1]);
    let hx = b.width(0) / (n - 1) as f64;
    let hy = b.width(1) / (n - 1) as f64;
    let mut best = Oracle {
        value: f64::NEG_INFINITY,
        point: [x0, y0],
        grid_error: dc.lipschitz() * hx.hypot(hy) / 2.0,
    };
    for i in 0..n {
        let x = x0 + i as f64 * hx;
        for j in 0..n {
            let y = y0 + j as f64 * hy;
            let r = dc.radius(Point2::new(x, y));
            if r > best.value {
                best.value = r;
                best.point = [x, y];
            }
        }
    }
    best
}

pub fn brute_force_oracle(p: &ProblemFile, n: usize) -> Result<Oracle> {
    match p.design_centering() {
        Some(dc) => Ok(grid_oracle(dc, n)),
        None => bail!("{}: the grid oracle supports design-centering problems only", p.name),
    }
}
