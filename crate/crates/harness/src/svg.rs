//! SVG snapshots of a traced run.

use std::fmt::Write as _;
use std::io::Write;

use anyhow::{bail, Result};
use invgraph::geometry::Point2;
use invgraph::BoxLabel;

use crate::run::Trace;

const WIDTH: f64 = 800.0;
const PAD: f64 = 20.0;

fn fill(label: Option<BoxLabel>) -> &'static str {
    match label {
        Some(BoxLabel::Filled) => "#4caf50",
        Some(BoxLabel::Boundary) => "#ffc107",
        Some(BoxLabel::Empty) => "#bdbdbd",
        None => "none",
    }
}

/// Draws event `step` of `trace`: the contour, the convex elements at the
/// event's threshold (design centering only), and the recorded boxes colored
/// by label. Output is deterministic for a given trace.
pub fn emit_svg(trace: &Trace, step: usize, mut out: impl Write) -> Result<()> {
    let Some(event) = trace.events.get(step) else {
        bail!("step {step} out of range: trace has {} events", trace.events.len());
    };
    let problem = trace.problem()?;
    let root = problem.root_box();
    if root.dim() != 2 {
        bail!("snapshots need a 2-D problem, got dimension {}", root.dim());
    }
    let Some(boxes) = &event.boxes else {
        bail!("event {step} carries no boxes; record the trace with boxes");
    };

    // Window: the root box with a 5% margin; y grows upward.
    let (mut x0, mut y0, mut x1, mut y1) = (root.lo()[0], root.lo()[1], root.hi()[0], root.hi()[1]);
    let (mx, my) = ((x1 - x0) * 0.05, (y1 - y0) * 0.05);
    x0 -= mx;
    x1 += mx;
    y0 -= my;
    y1 += my;
    let s = (WIDTH - 2.0 * PAD) / (x1 - x0);
    let height = (y1 - y0) * s + 2.0 * PAD;
    let px = |p: Point2| ((p.x - x0) * s + PAD, (y1 - p.y) * s + PAD);
    let points = |v: &[Point2]| {
        v.iter()
            .map(|p| {
                let (x, y) = px(*p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"#
    )?;
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#)?;

    if let Some(dc) = problem.design_centering() {
        let t = event.label_threshold.unwrap_or(event.t);
        if t > 0.0 {
            writeln!(svg, r##"<g fill="#2196f3" fill-opacity="0.15" stroke="#2196f3" stroke-width="0.5">"##)?;
            for e in dc.estimator().elements(t) {
                writeln!(svg, r#"<polygon points="{}"/>"#, points(e.vertices()))?;
            }
            writeln!(svg, "</g>")?;
        }
    }

    writeln!(svg, r#"<g stroke="black" stroke-width="0.5">"#)?;
    for b in boxes {
        let (ax, ay) = px(Point2::new(b.lo[0], b.hi[1]));
        let (bx, by) = px(Point2::new(b.hi[0], b.lo[1]));
        writeln!(
            svg,
            r#"<rect x="{ax:.3}" y="{ay:.3}" width="{:.3}" height="{:.3}" fill="{}" fill-opacity="0.7"/>"#,
            bx - ax,
            by - ay,
            fill(b.label)
        )?;
    }
    writeln!(svg, "</g>")?;

    if let Some(dc) = problem.design_centering() {
        writeln!(
            svg,
            r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            points(dc.contour.vertices())
        )?;
    }
    writeln!(
        svg,
        r#"<text x="{PAD}" y="{:.0}" font-family="monospace" font-size="12">step {step}: {:?} t={} boxes={}</text>"#,
        PAD - 6.0,
        event.kind,
        event.t,
        boxes.len()
    )?;
    writeln!(svg, "</svg>")?;
    out.write_all(svg.as_bytes())?;
    Ok(())
}
