//! `generate`: materialize a named graph family instance.

use std::path::Path;

use serde::Serialize;

use kpfree::cliques::clique_number_in;
use kpfree::generators::{gen_named, FamilySpec};
use kpfree::io::{format_for_path, serialize_graph, GraphFormat};
use kpfree::{Error, Result, VertexSet};

use crate::run::{to_value, Output};

#[derive(Serialize)]
struct GenerateDoc {
    family: String,
    n: usize,
    m: usize,
    max_degree: usize,
    clique_number: usize,
    /// edge-list | dimacs.
    format: String,
    /// Inline serialization; present only when no output file was named.
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<String>,
}

#[allow(clippy::too_many_arguments)]
pub fn run(
    seed: u64,
    family: &str,
    n: Option<usize>,
    edge_prob: Option<f64>,
    left: Option<&str>,
    right: Option<&str>,
    out: Option<&Path>,
) -> Result<Output> {
    let spec = family_spec(family, n, edge_prob, left, right, seed)?;
    let g = gen_named(&spec)?;
    let format = out.map(format_for_path).unwrap_or(GraphFormat::EdgeList);
    let text = serialize_graph(&g, format);
    let full = VertexSet::full(g.n());
    let doc = GenerateDoc {
        family: spec.tag().to_string(),
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree(),
        clique_number: clique_number_in(&g, &full),
        format: match format {
            GraphFormat::EdgeList => "edge-list".to_string(),
            GraphFormat::Dimacs => "dimacs".to_string(),
        },
        graph: if out.is_none() {
            Some(text.clone())
        } else {
            None
        },
    };
    let summary = format!(
        "{}: {} vertices, {} edges",
        doc.family, doc.n, doc.m
    );
    Ok(Output {
        result: to_value(&doc)?,
        summary,
        fallback_used: false,
        exceptional: false,
        file_payload: Some(text),
    })
}

fn family_spec(
    family: &str,
    n: Option<usize>,
    edge_prob: Option<f64>,
    left: Option<&str>,
    right: Option<&str>,
    seed: u64,
) -> Result<FamilySpec> {
    let need_n = |what: &str| {
        n.ok_or_else(|| Error::Input(format!("family {what:?} needs --n")))
    };
    match family {
        "complete" => Ok(FamilySpec::Complete { n: need_n("complete")? }),
        "cycle" => Ok(FamilySpec::Cycle { n: need_n("cycle")? }),
        "h1-figure" => Ok(FamilySpec::H1Figure),
        "h0-pendant" => Ok(FamilySpec::H0Pendant),
        "random" => Ok(FamilySpec::Random {
            n: need_n("random")?,
            edge_prob: edge_prob.unwrap_or(0.5),
            seed,
        }),
        "strong-product" => {
            let left = left.ok_or_else(|| {
                Error::Input("family \"strong-product\" needs --left, e.g. cycle:5".into())
            })?;
            let right = right.ok_or_else(|| {
                Error::Input("family \"strong-product\" needs --right, e.g. complete:2".into())
            })?;
            Ok(FamilySpec::StrongProduct {
                left: Box::new(parse_factor(left)?),
                right: Box::new(parse_factor(right)?),
            })
        }
        other => Err(Error::Input(format!(
            "unknown family {other:?}; expected complete, cycle, strong-product, \
             h1-figure, h0-pendant, or random"
        ))),
    }
}

/// Parses a product factor: `complete:N`, `cycle:N`, `h1-figure`, `h0-pendant`.
fn parse_factor(text: &str) -> Result<FamilySpec> {
    let (tag, arg) = match text.split_once(':') {
        Some((tag, arg)) => (tag, Some(arg)),
        None => (text, None),
    };
    let parse_n = || -> Result<usize> {
        let arg = arg.ok_or_else(|| Error::Input(format!("factor {text:?} needs :N")))?;
        arg.parse()
            .map_err(|_| Error::Input(format!("factor {text:?}: {arg:?} is not a vertex count")))
    };
    match tag {
        "complete" => Ok(FamilySpec::Complete { n: parse_n()? }),
        "cycle" => Ok(FamilySpec::Cycle { n: parse_n()? }),
        "h1-figure" => Ok(FamilySpec::H1Figure),
        "h0-pendant" => Ok(FamilySpec::H0Pendant),
        other => Err(Error::Input(format!(
            "unknown product factor {other:?}; expected complete:N, cycle:N, \
             h1-figure, or h0-pendant"
        ))),
    }
}
