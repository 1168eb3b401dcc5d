//! `oracle`: the exact reference searches, exposed directly.

use std::path::Path;

use serde::Serialize;

use kpfree::io::{format_for_path, parse_graph};
use kpfree::oracle::{
    exact_chromatic, exact_max_kpfree, exists_partition, max_kpfree_all, SearchBudget,
};
use kpfree::partition::PartitionSpec;
use kpfree::{Graph, Result, VertexSet};

use crate::docs::PartitionDoc;
use crate::run::{to_value, Output, Runner};

#[derive(Serialize)]
struct ExistsDoc {
    spec: Vec<usize>,
    exists: bool,
    /// k^n, as a decimal string (may exceed 64 bits).
    assignment_space: String,
    nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<PartitionDoc>,
}

#[derive(Serialize)]
struct MaxsetDoc {
    p: usize,
    size: usize,
    optima_count: u64,
    nodes: u64,
    witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    all: Option<AllSetsDoc>,
}

#[derive(Serialize)]
struct AllSetsDoc {
    count: u64,
    truncated: bool,
    sets: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct ChromaticDoc {
    chromatic_number: usize,
    coloring: Vec<usize>,
    nodes: u64,
}

fn load(runner: &mut Runner, input: &Path) -> Result<Graph> {
    let text = runner.load_input(input)?;
    parse_graph(&text, format_for_path(input))
}

pub fn exists(
    runner: &mut Runner,
    budget: &SearchBudget,
    input: &Path,
    spec_orders: &[usize],
) -> Result<Output> {
    let g = load(runner, input)?;
    let spec = PartitionSpec::new(spec_orders.to_vec())?;
    runner.set_spec(spec.orders());
    let full = VertexSet::full(g.n());
    let outcome = exists_partition(&g, &full, &spec, budget)?;
    let doc = ExistsDoc {
        spec: spec.orders().to_vec(),
        exists: outcome.exists,
        assignment_space: outcome.assignment_space.to_string(),
        nodes: outcome.nodes,
        witness: outcome.witness.as_ref().map(PartitionDoc::from_partition),
    };
    let summary = format!(
        "orders {:?}: {} ({} nodes)",
        doc.spec,
        if doc.exists { "satisfiable" } else { "refuted" },
        doc.nodes
    );
    Ok(Output::json(to_value(&doc)?, summary))
}

pub fn maxset(
    runner: &mut Runner,
    budget: &SearchBudget,
    input: &Path,
    p: usize,
    all: bool,
    cap: usize,
) -> Result<Output> {
    let g = load(runner, input)?;
    let full = VertexSet::full(g.n());
    let outcome = exact_max_kpfree(&g, &full, p, budget)?;
    let all_doc = if all {
        let sets = max_kpfree_all(&g, &full, p, budget, cap)?;
        Some(AllSetsDoc {
            count: sets.count,
            truncated: sets.truncated,
            sets: sets.sets.iter().map(|s| s.to_vec()).collect(),
        })
    } else {
        None
    };
    let doc = MaxsetDoc {
        p,
        size: outcome.size,
        optima_count: outcome.optima_count,
        nodes: outcome.nodes,
        witness: outcome.witness.to_vec(),
        all: all_doc,
    };
    let summary = format!(
        "largest set inducing no {}-clique: {} vertices ({} optima)",
        p, doc.size, doc.optima_count
    );
    Ok(Output::json(to_value(&doc)?, summary))
}

pub fn chromatic(runner: &mut Runner, budget: &SearchBudget, input: &Path) -> Result<Output> {
    let g = load(runner, input)?;
    let full = VertexSet::full(g.n());
    let outcome = exact_chromatic(&g, &full, budget)?;
    let doc = ChromaticDoc {
        chromatic_number: outcome.chromatic_number,
        coloring: outcome.coloring,
        nodes: outcome.nodes,
    };
    let summary = format!("chromatic number {}", doc.chromatic_number);
    Ok(Output::json(to_value(&doc)?, summary))
}
