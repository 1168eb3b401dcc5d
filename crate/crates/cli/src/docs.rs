//! JSON documents shared between `partition` (writer) and `verify` (reader),
//! plus the conversions to and from the library types.
//!
//! The documents are plain data: sorted vertex lists instead of bitsets,
//! lowercase tags instead of enums. `verify` must be able to re-certify a
//! document produced by any tool, so deserialization validates vertex ids
//! against the graph it is checked against, not against trust in the writer.

use serde::{Deserialize, Serialize};

use kpfree::exchange::{ExchangeTrace, MaxKpfreeOutcome, SeedRoute, StepKind, TraceStep};
use kpfree::partition::Partition;
use kpfree::set::VertexSet;
use kpfree::{Error, Result};

/// A vertex partition with per-class clique orders.
#[derive(Serialize, Deserialize)]
pub struct PartitionDoc {
    pub orders: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    #[serde(default)]
    pub fallback_used: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_first: Option<MaxFirstDoc>,
}

/// Extra facts recorded when the first class is a maximum set.
#[derive(Serialize, Deserialize)]
pub struct MaxFirstDoc {
    /// How the split was found: seed-only | exchange | fallback.
    pub route: String,
    pub max_size: usize,
    pub optima_count: u64,
    pub min_kp1: u64,
    pub epochs: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceDoc>,
}

/// Replayable record of the exchange walk.
#[derive(Serialize, Deserialize)]
pub struct TraceDoc {
    pub seed: Vec<usize>,
    pub p: usize,
    pub q: usize,
    pub steps: Vec<StepDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct StepDoc {
    pub index: usize,
    pub epoch: usize,
    /// walk | descent.
    pub kind: String,
    pub v: usize,
    pub y: usize,
    pub a_set: Vec<usize>,
    #[serde(default)]
    pub b_source: Option<usize>,
    #[serde(default)]
    pub b_set: Option<Vec<usize>>,
    pub k0: Vec<usize>,
    #[serde(default)]
    pub k1: Option<Vec<usize>>,
    pub kp1_count: u64,
    pub kq_count: u64,
    pub s_size: usize,
}

pub fn route_tag(route: SeedRoute) -> &'static str {
    match route {
        SeedRoute::SeedOnly => "seed-only",
        SeedRoute::Exchange => "exchange",
        SeedRoute::Fallback => "fallback",
    }
}

fn kind_tag(kind: StepKind) -> &'static str {
    match kind {
        StepKind::Walk => "walk",
        StepKind::Descent => "descent",
    }
}

fn parse_kind(tag: &str) -> Result<StepKind> {
    match tag {
        "walk" => Ok(StepKind::Walk),
        "descent" => Ok(StepKind::Descent),
        other => Err(Error::Input(format!(
            "unknown step kind {other:?}, expected \"walk\" or \"descent\""
        ))),
    }
}

impl PartitionDoc {
    pub fn from_partition(p: &Partition) -> PartitionDoc {
        PartitionDoc {
            orders: p.orders.clone(),
            classes: p.classes.iter().map(|c| c.to_vec()).collect(),
            fallback_used: p.fallback_used,
            max_first: None,
        }
    }

    /// Rebuilds the library partition, rejecting out-of-range vertex ids.
    pub fn to_partition(&self, n: usize) -> Result<Partition> {
        let mut classes = Vec::with_capacity(self.classes.len());
        for (i, class) in self.classes.iter().enumerate() {
            if let Some(&bad) = class.iter().find(|&&v| v >= n) {
                return Err(Error::Input(format!(
                    "class {i} names vertex {bad} but the graph has {n} vertices"
                )));
            }
            classes.push(VertexSet::from_vertices(n, class.iter().copied()));
        }
        Ok(Partition {
            classes,
            orders: self.orders.clone(),
            fallback_used: self.fallback_used,
        })
    }
}

/// Summarizes a maximum-first split, optionally embedding its trace.
pub fn max_first_doc(split: &MaxKpfreeOutcome, with_trace: bool) -> MaxFirstDoc {
    MaxFirstDoc {
        route: route_tag(split.route).to_string(),
        max_size: split.max_size,
        optima_count: split.optima_count,
        min_kp1: split.min_kp1,
        epochs: split.epochs,
        trace: if with_trace {
            split.trace.as_ref().map(trace_to_doc)
        } else {
            None
        },
    }
}

pub fn trace_to_doc(trace: &ExchangeTrace) -> TraceDoc {
    TraceDoc {
        seed: trace.seed.clone(),
        p: trace.p,
        q: trace.q,
        steps: trace
            .steps
            .iter()
            .map(|s| StepDoc {
                index: s.index,
                epoch: s.epoch,
                kind: kind_tag(s.kind).to_string(),
                v: s.v,
                y: s.y,
                a_set: s.a_set.clone(),
                b_source: s.b_source,
                b_set: s.b_set.clone(),
                k0: s.k0.clone(),
                k1: s.k1.clone(),
                kp1_count: s.kp1_count,
                kq_count: s.kq_count,
                s_size: s.s_size,
            })
            .collect(),
    }
}

pub fn doc_to_trace(doc: &TraceDoc) -> Result<ExchangeTrace> {
    let mut steps = Vec::with_capacity(doc.steps.len());
    for s in &doc.steps {
        steps.push(TraceStep {
            index: s.index,
            epoch: s.epoch,
            kind: parse_kind(&s.kind)?,
            v: s.v,
            y: s.y,
            a_set: s.a_set.clone(),
            b_source: s.b_source,
            b_set: s.b_set.clone(),
            k0: s.k0.clone(),
            k1: s.k1.clone(),
            kp1_count: s.kp1_count,
            kq_count: s.kq_count,
            s_size: s.s_size,
        });
    }
    Ok(ExchangeTrace {
        seed: doc.seed.clone(),
        p: doc.p,
        q: doc.q,
        steps,
    })
}
