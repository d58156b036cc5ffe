//! Solver event log.
//!
//! Each event serializes to one JSON object per line with these fields:
//!
//! | field             | type              | meaning                                              |
//! |-------------------|-------------------|------------------------------------------------------|
//! | `kind`            | string            | `start`, `threshold_step`, `prune`, `accuracy`, `split`, `refine`, `done` |
//! | `t`               | number            | current threshold, user-level direction              |
//! | `delta`           | number            | current accuracy parameter                           |
//! | `active`          | integer           | number of active boxes after the event               |
//! | `timestamp`       | number            | seconds since the solver started                     |
//! | `estimate`        | number, optional  | accuracy estimate (`accuracy` and `done` events)     |
//! | `label_threshold` | number, optional  | threshold at which `boxes[].label` was computed      |
//! | `boxes`           | array, optional   | `{lo, hi, label?}` per active box, when recorded     |
//!
//! With box tracing on, every event records its boxes; only `threshold_step`,
//! `prune` and `accuracy` carry labels.
//!
//! Event meanings:
//! - `start`: initial state, one root box.
//! - `threshold_step`: a filled box was found at the lowered threshold; `t` is
//!   the new threshold and `boxes` are the labels before pruning.
//! - `prune`: empty boxes were removed; `boxes` are the survivors.
//! - `accuracy`: accuracy estimate computed; `boxes` carry the labels of the
//!   last threshold probe, which found no filled box.
//! - `split`: every active box was split and `delta` halved.
//! - `refine`: boundary boxes split while searching for a filled box after the
//!   accuracy target was met; `delta` is unchanged.
//! - `done`: final state; `estimate` holds the accuracy certificate.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::boxes::{BoxLabel, Hyperbox};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Start,
    ThresholdStep,
    Prune,
    Accuracy,
    Split,
    Refine,
    Done,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracedBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<BoxLabel>,
}

impl TracedBox {
    pub fn new(b: &Hyperbox, label: Option<BoxLabel>) -> Self {
        Self {
            lo: b.lo().to_vec(),
            hi: b.hi().to_vec(),
            label,
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (l, h))| l <= v && v <= h)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub kind: EventKind,
    pub t: f64,
    pub delta: f64,
    pub active: usize,
    pub timestamp: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boxes: Option<Vec<TracedBox>>,
}

/// Writes events as line-delimited JSON.
pub fn write_events<W: Write>(mut out: W, events: &[TraceEvent]) -> std::io::Result<()> {
    for e in events {
        serde_json::to_writer(&mut out, e)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads line-delimited JSON events, skipping blank lines.
pub fn read_events<R: BufRead>(input: R) -> Result<Vec<TraceEvent>, serde_json::Error> {
    let mut events = Vec::new();
    for line in input.lines() {
        let line = line.map_err(serde_json::Error::io)?;
        if line.trim().is_empty() {
            continue;
        }
        events.push(serde_json::from_str(&line)?);
    }
    Ok(events)
}
