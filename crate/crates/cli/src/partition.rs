//! `partition`: run the constructive splitters on a graph file.

use std::path::Path;

use kpfree::exchange::max_kpfree_partition;
use kpfree::io::{format_for_path, parse_graph};
use kpfree::oracle::SearchBudget;
use kpfree::partition::PartitionSpec;
use kpfree::partitioner::{partition_k, partition_k_with_max_first};
use kpfree::Result;

use crate::docs::{max_first_doc, PartitionDoc};
use crate::run::{to_value, Output, Runner};

pub fn run(
    runner: &mut Runner,
    budget: &SearchBudget,
    input: &Path,
    spec_orders: &[usize],
    max_first: bool,
    trace: bool,
) -> Result<Output> {
    let text = runner.load_input(input)?;
    let g = parse_graph(&text, format_for_path(input))?;
    let spec = PartitionSpec::new(spec_orders.to_vec())?;
    runner.set_spec(spec.orders());

    let mut doc;
    let route;
    if max_first {
        // For k > 2 the tail classes come from the staged splitter; the
        // max_first section always describes the head split.
        let (partition, split) = if spec.k() == 2 {
            let split = max_kpfree_partition(&g, spec.orders()[0], spec.orders()[1], budget)?;
            (split.partition.clone(), split)
        } else {
            let out = partition_k_with_max_first(&g, &spec, budget)?;
            (out.partition, out.split)
        };
        route = Some(split.route);
        doc = PartitionDoc::from_partition(&partition);
        doc.max_first = Some(max_first_doc(&split, trace));
    } else {
        let partition = partition_k(&g, &spec, budget)?;
        route = None;
        doc = PartitionDoc::from_partition(&partition);
    }

    let sizes: Vec<usize> = doc.classes.iter().map(|c| c.len()).collect();
    let mut summary = format!(
        "orders {:?} -> class sizes {:?}, fallback={}",
        doc.orders, sizes, doc.fallback_used
    );
    if let Some(route) = route {
        summary.push_str(&format!(", route={}", crate::docs::route_tag(route)));
    }
    let fallback_used = doc.fallback_used;
    Ok(Output {
        result: to_value(&doc)?,
        summary,
        fallback_used,
        exceptional: false,
        file_payload: None,
    })
}
