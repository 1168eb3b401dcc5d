//! Graph file formats: a plain edge-list format and DIMACS `.col`.
//!
//! Edge list (default, extension-agnostic):
//! ```text
//! # comment lines start with '#'
//! <n> <m>
//! <u> <v>      (m lines, 0-based endpoints)
//! ```
//!
//! DIMACS (`.col` extension): `c` comment lines, one `p edge <n> <m>` line,
//! then `e <u> <v>` lines with 1-based endpoints.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

/// Picks the format from a file extension: `.col` means DIMACS, anything
/// else the edge-list format.
pub fn format_for_path(path: &Path) -> GraphFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("col") => GraphFormat::Dimacs,
        _ => GraphFormat::EdgeList,
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

pub fn serialize_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => serialize_edge_list(g),
        GraphFormat::Dimacs => serialize_dimacs(g),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("expected {what}, found {tok:?}"),
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected two fields, found {}", toks.len()),
            });
        }
        let a = parse_usize(toks[0], line_no, "a non-negative integer")?;
        let b = parse_usize(toks[1], line_no, "a non-negative integer")?;
        if header.is_none() {
            header = Some((a, b));
        } else {
            edges.push((a, b));
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Parse {
        line: 1,
        msg: "missing header line \"<n> <m>\"".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Input(format!(
            "header declares {m} edges but {} were listed",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges)
}

pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.n(), g.m()));
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "duplicate problem line".into(),
                    });
                }
                if toks.len() != 4 || toks[1] != "edge" {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "expected \"p edge <n> <m>\"".into(),
                    });
                }
                let n = parse_usize(toks[2], line_no, "vertex count")?;
                let m = parse_usize(toks[3], line_no, "edge count")?;
                header = Some((n, m));
            }
            "e" => {
                if header.is_none() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "edge line before problem line".into(),
                    });
                }
                if toks.len() != 3 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "expected \"e <u> <v>\"".into(),
                    });
                }
                let u = parse_usize(toks[1], line_no, "a 1-based endpoint")?;
                let v = parse_usize(toks[2], line_no, "a 1-based endpoint")?;
                if u == 0 || v == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "DIMACS vertices are 1-based".into(),
                    });
                }
                edges.push((u - 1, v - 1));
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown line type {other:?}"),
                });
            }
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Parse {
        line: 1,
        msg: "missing \"p edge\" line".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Input(format!(
            "problem line declares {m} edges but {} were listed",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges)
}

pub fn serialize_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("p edge {} {}\n", g.n(), g.m()));
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}
