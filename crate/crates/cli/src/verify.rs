//! `verify`: re-certify a partition document against a graph file, from
//! scratch, regardless of how the document was produced.

use std::path::Path;

use serde::{Deserialize, Serialize};

use kpfree::exchange::verify_trace;
use kpfree::io::{format_for_path, parse_graph};
use kpfree::partition::PartitionSpec;
use kpfree::{Error, Result, VertexSet};

use crate::docs::{doc_to_trace, PartitionDoc};
use crate::run::{to_value, Output, Runner};

#[derive(Serialize)]
struct VerifyDoc {
    certified: bool,
    n: usize,
    orders: Vec<usize>,
    class_sizes: Vec<usize>,
    /// Whether the orders sum to max degree − 1 + k for this graph.
    meets_degree_bound: bool,
    /// Present when the document embedded an exchange trace.
    #[serde(skip_serializing_if = "Option::is_none")]
    trace_verified: Option<bool>,
}

/// Accepts either a bare partition document or the stdout envelope
/// (`{"result": …, "manifest": …}`) saved to a file.
#[derive(Deserialize)]
struct Envelope {
    result: PartitionDoc,
}

pub fn run(runner: &mut Runner, graph_path: &Path, partition_path: &Path) -> Result<Output> {
    let graph_text = runner.load_input(graph_path)?;
    let g = parse_graph(&graph_text, format_for_path(graph_path))?;
    let doc_text = runner.load_input(partition_path)?;
    let doc: PartitionDoc = serde_json::from_str(&doc_text)
        .or_else(|first| {
            serde_json::from_str::<Envelope>(&doc_text)
                .map(|e| e.result)
                .map_err(|_| first)
        })
        .map_err(|e| Error::Input(format!("partition document: {e}")))?;

    let partition = doc.to_partition(g.n())?;
    let full = VertexSet::full(g.n());
    partition.certify(&g, &full)?;
    runner.set_spec(&doc.orders);

    let meets_degree_bound = PartitionSpec::new(doc.orders.clone())
        .and_then(|s| s.validate_for_max_degree(g.max_degree()))
        .is_ok();

    let mut trace_verified = None;
    if let Some(mf) = &doc.max_first {
        if partition.classes[0].len() != mf.max_size {
            return Err(Error::Certification(format!(
                "first class has {} vertices but the document claims {}",
                partition.classes[0].len(),
                mf.max_size
            )));
        }
        if let Some(trace_doc) = &mf.trace {
            let trace = doc_to_trace(trace_doc)?;
            verify_trace(&g, &trace)?;
            let end = trace.steps.last().map(|s| s.s_size).unwrap_or(trace.seed.len());
            if end != mf.max_size {
                return Err(Error::Certification(format!(
                    "trace ends at class size {end} but the document claims {}",
                    mf.max_size
                )));
            }
            trace_verified = Some(true);
        }
    }

    let out = VerifyDoc {
        certified: true,
        n: g.n(),
        orders: doc.orders.clone(),
        class_sizes: doc.classes.iter().map(|c| c.len()).collect(),
        meets_degree_bound,
        trace_verified,
    };
    let summary = format!(
        "certified orders {:?} on {} vertices{}",
        out.orders,
        out.n,
        match trace_verified {
            Some(true) => ", trace replayed",
            _ => "",
        }
    );
    Ok(Output::json(to_value(&out)?, summary))
}
