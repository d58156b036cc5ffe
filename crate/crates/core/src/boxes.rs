//! Axis-aligned boxes, their three-valued labels, and the active box set.
//!
//! Boxes are closed sets. Splitting bisects every axis at the midpoint, so a
//! box in `n` dimensions yields `2^n` congruent children.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed axis-aligned hyperrectangle `[lo_0, hi_0] x ... x [lo_{n-1}, hi_{n-1}]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBox", into = "RawBox")]
pub struct Hyperbox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl TryFrom<RawBox> for Hyperbox {
    type Error = Error;

    fn try_from(raw: RawBox) -> Result<Self> {
        Hyperbox::new(raw.lo, raw.hi)
    }
}

impl From<Hyperbox> for RawBox {
    fn from(b: Hyperbox) -> Self {
        RawBox { lo: b.lo, hi: b.hi }
    }
}

impl Hyperbox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if lo.is_empty() {
            return Err(Error::InvalidBox("zero-dimensional box".into()));
        }
        for (i, (l, h)) in lo.iter().zip(&hi).enumerate() {
            if !l.is_finite() || !h.is_finite() {
                return Err(Error::InvalidBox(format!("non-finite bound on axis {i}")));
            }
            if l > h {
                return Err(Error::InvalidBox(format!(
                    "lower bound {l} exceeds upper bound {h} on axis {i}"
                )));
            }
        }
        Ok(Self { lo, hi })
    }

    /// The 2-D box `[x0, x1] x [y0, y1]`.
    pub fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        Self::new(vec![x0, y0], vec![x1, y1])
    }

    /// A box with the same interval on every axis.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    /// Box centered at `center` with the given per-axis width.
    pub fn centered(center: &[f64], width: f64) -> Result<Self> {
        let h = width / 2.0;
        Self::new(
            center.iter().map(|c| c - h).collect(),
            center.iter().map(|c| c + h).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn width(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    /// Euclidean length of the main diagonal.
    pub fn diameter(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l) * (h - l))
            .sum::<f64>()
            .sqrt()
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).product()
    }

    pub fn center(&self) -> Vec<f64> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| 0.5 * (l + h))
            .collect()
    }

    /// Closed containment test.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(x
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (l, h))| *l <= *v && *v <= *h))
    }

    /// True when `other` lies inside `self` (closed).
    pub fn contains_box(&self, other: &Hyperbox) -> bool {
        self.dim() == other.dim()
            && (0..self.dim()).all(|i| self.lo[i] <= other.lo[i] && other.hi[i] <= self.hi[i])
    }

    /// True when the interiors of the two boxes intersect.
    pub fn interiors_overlap(&self, other: &Hyperbox) -> bool {
        self.dim() == other.dim()
            && (0..self.dim()).all(|i| self.lo[i] < other.hi[i] && other.lo[i] < self.hi[i])
    }

    /// Bisects every axis, returning `2^n` children. Bit `i` of a child's
    /// index selects the upper half along axis `i`.
    pub fn split(&self) -> Result<Vec<Hyperbox>> {
        if let Some(axis) = (0..self.dim()).find(|&i| self.width(i) <= 0.0) {
            return Err(Error::ZeroWidthAxis { axis });
        }
        let n = self.dim();
        let mid = self.center();
        let mut out = Vec::with_capacity(1 << n);
        for code in 0..(1usize << n) {
            let mut lo = Vec::with_capacity(n);
            let mut hi = Vec::with_capacity(n);
            for (i, ((&l, &h), &m)) in self.lo.iter().zip(&self.hi).zip(&mid).enumerate() {
                if code >> i & 1 == 0 {
                    lo.push(l);
                    hi.push(m);
                } else {
                    lo.push(m);
                    hi.push(h);
                }
            }
            out.push(Hyperbox { lo, hi });
        }
        Ok(out)
    }

    /// Corners of a 2-D box in counterclockwise order starting at `lo`.
    pub fn corners2(&self) -> [[f64; 2]; 4] {
        debug_assert_eq!(self.dim(), 2);
        let (x0, y0, x1, y1) = (self.lo[0], self.lo[1], self.hi[0], self.hi[1]);
        [[x0, y0], [x1, y0], [x1, y1], [x0, y1]]
    }
}

/// Result of the domain estimation relation for one box and threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoxLabel {
    /// No point of the box is feasible with objective within the threshold.
    Empty,
    /// Undetermined.
    Boundary,
    /// Every point of the box is feasible with objective within the threshold.
    Filled,
}

impl BoxLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            BoxLabel::Empty => "empty",
            BoxLabel::Boundary => "boundary",
            BoxLabel::Filled => "filled",
        }
    }
}

/// Ordered set of equally sized, interior-disjoint boxes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ActiveSet {
    boxes: Vec<Hyperbox>,
}

impl ActiveSet {
    pub fn new(root: Hyperbox) -> Self {
        Self { boxes: vec![root] }
    }

    pub fn from_boxes(boxes: Vec<Hyperbox>) -> Self {
        Self { boxes }
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn boxes(&self) -> &[Hyperbox] {
        &self.boxes
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Hyperbox> {
        self.boxes.iter()
    }

    /// Diameter shared by all members (that of the first box).
    pub fn diameter(&self) -> Option<f64> {
        self.boxes.first().map(Hyperbox::diameter)
    }

    /// Splits every member, keeping parent order and child order.
    pub fn split_all(&self) -> Result<ActiveSet> {
        let mut out = Vec::with_capacity(self.boxes.len() << self.boxes.first().map_or(0, Hyperbox::dim));
        for b in &self.boxes {
            out.extend(b.split()?);
        }
        Ok(ActiveSet { boxes: out })
    }

    /// Keeps the boxes whose label satisfies `keep`; `labels` is parallel to the set.
    pub fn retain_labeled(&mut self, labels: &[BoxLabel], keep: impl Fn(BoxLabel) -> bool) {
        debug_assert_eq!(labels.len(), self.boxes.len());
        let mut it = labels.iter();
        self.boxes.retain(|_| keep(*it.next().expect("label per box")));
    }
}

impl<'a> IntoIterator for &'a ActiveSet {
    type Item = &'a Hyperbox;
    type IntoIter = std::slice::Iter<'a, Hyperbox>;

    fn into_iter(self) -> Self::IntoIter {
        self.boxes.iter()
    }
}
