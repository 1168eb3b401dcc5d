//! `analyze`: structural statistics of a graph file.

use std::path::Path;

use serde::Serialize;

use kpfree::cliques::{clique_number_in, count_cliques_in};
use kpfree::hitting::{hitting_mis, HittingOutcome};
use kpfree::io::{format_for_path, parse_graph};
use kpfree::oracle::{exact_chromatic, exact_max_kpfree, SearchBudget};
use kpfree::{Result, VertexSet};

use crate::run::{to_value, Output, Runner};

#[derive(Serialize)]
struct AnalyzeDoc {
    n: usize,
    m: usize,
    max_degree: usize,
    min_degree: usize,
    clique_number: usize,
    connected: bool,
    clique_counts: Vec<CliqueCountDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    independence_number: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chromatic_number: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hitting: Option<HittingDoc>,
}

#[derive(Serialize)]
struct CliqueCountDoc {
    order: usize,
    count: u64,
}

#[derive(Serialize)]
struct HittingDoc {
    /// found | exceptional-strong-product | not-found | not-connected.
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    independent_set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle_len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clique_order: Option<usize>,
}

#[allow(clippy::too_many_arguments)]
pub fn run(
    runner: &mut Runner,
    budget: &SearchBudget,
    input: &Path,
    cliques: usize,
    alpha: bool,
    chi: bool,
    hitting: bool,
) -> Result<Output> {
    let text = runner.load_input(input)?;
    let g = parse_graph(&text, format_for_path(input))?;
    let full = VertexSet::full(g.n());
    let stats = g.degree_stats();
    let omega = clique_number_in(&g, &full);

    let mut clique_counts = Vec::new();
    for order in 3..=cliques {
        let count = if order <= g.n() {
            count_cliques_in(&g, &full, order, 0).count
        } else {
            0
        };
        clique_counts.push(CliqueCountDoc { order, count });
    }

    let independence_number = if alpha {
        Some(exact_max_kpfree(&g, &full, 2, budget)?.size)
    } else {
        None
    };
    let chromatic_number = if chi {
        Some(exact_chromatic(&g, &full, budget)?.chromatic_number)
    } else {
        None
    };
    let hitting_doc = if hitting {
        Some(hitting_doc(&g)?)
    } else {
        None
    };
    let exceptional = matches!(
        &hitting_doc,
        Some(h) if h.status == "exceptional-strong-product"
    );

    let doc = AnalyzeDoc {
        n: g.n(),
        m: g.m(),
        max_degree: stats.max,
        min_degree: stats.min,
        clique_number: omega,
        connected: g.is_connected(),
        clique_counts,
        independence_number,
        chromatic_number,
        hitting: hitting_doc,
    };
    let summary = format!(
        "n={} m={} max_degree={} min_degree={} clique_number={}",
        doc.n, doc.m, doc.max_degree, doc.min_degree, doc.clique_number
    );
    Ok(Output {
        result: to_value(&doc)?,
        summary,
        fallback_used: false,
        exceptional,
        file_payload: None,
    })
}

fn hitting_doc(g: &kpfree::Graph) -> Result<HittingDoc> {
    if !g.is_connected() {
        return Ok(HittingDoc {
            status: "not-connected".to_string(),
            independent_set: None,
            cycle_len: None,
            clique_order: None,
        });
    }
    Ok(match hitting_mis(g)? {
        HittingOutcome::Found(s) => HittingDoc {
            status: "found".to_string(),
            independent_set: Some(s.to_vec()),
            cycle_len: None,
            clique_order: None,
        },
        HittingOutcome::Exceptional(w) => HittingDoc {
            status: "exceptional-strong-product".to_string(),
            independent_set: None,
            cycle_len: Some(w.cycle_len),
            clique_order: Some(w.clique_order),
        },
        HittingOutcome::NotFound => HittingDoc {
            status: "not-found".to_string(),
            independent_set: None,
            cycle_len: None,
            clique_order: None,
        },
    })
}
