//! `search`: sweep small graphs for partition counterexamples.
//!
//! Exhaustive mode enumerates every graph on 1..=n_max labeled vertices as
//! an edge bitmask (slot order: (0,1), (0,2), …, (0,n−1), (1,2), …) and
//! keeps one representative per isomorphism class: the mask that is
//! lexicographically minimal over all vertex relabelings. That check is a
//! plain scan over all n! permutations with early exit, which is why the
//! mode is capped at n = 8; permissive filters at n = 8 make the sweep a
//! minutes-long run, not an interactive one.
//!
//! Random mode samples `count` graphs at a fixed vertex count; samples are
//! not deduplicated. Files passed with `--include` are prepended to either
//! sweep and go through the same filter and oracle as every other candidate.
//!
//! Per candidate: the hypothesis filter (exact maximum degree, clique-number
//! cap, connectivity) decides whether the exhaustive oracle runs at all; a
//! candidate the oracle refutes is recorded with its serialized edge list.
//! A candidate whose oracle call exceeds the search budget is skipped and
//! logged, never silently dropped. Workers split index ranges and results
//! are merged in index order, so `--jobs` never changes the output bytes.

use std::path::PathBuf;
use std::thread;

use serde::Serialize;

use kpfree::cliques::clique_number_in;
use kpfree::generators::gen_random;
use kpfree::io::{format_for_path, parse_graph, serialize_graph, GraphFormat};
use kpfree::oracle::{exists_partition, SearchBudget};
use kpfree::partition::PartitionSpec;
use kpfree::{Error, Graph, Result, VertexSet};

use crate::run::{to_value, Output, Runner};
use crate::SearchMode;

/// Hypothesis filter a candidate must pass before the oracle runs.
#[derive(Clone, Copy)]
pub struct Filter {
    pub delta: Option<usize>,
    pub omega_max: Option<usize>,
    pub connected: bool,
}

pub struct Params {
    pub mode: SearchMode,
    pub n_max: usize,
    pub n: Option<usize>,
    pub count: usize,
    pub edge_prob: f64,
    pub filter: Filter,
    pub include: Vec<PathBuf>,
}

#[derive(Serialize)]
pub struct RefutationDoc {
    /// Where the candidate came from: `exhaustive:n=..:mask=..`,
    /// `random:n=..:seed=..`, or `include:<path>`.
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub clique_number: usize,
    pub nodes: u64,
    pub edge_list: String,
}

#[derive(Serialize)]
struct SearchDoc {
    mode: String,
    spec: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge_prob: Option<f64>,
    delta: Option<usize>,
    omega_max: Option<usize>,
    connected: bool,
    /// Candidates enumerated, sampled, or included.
    examined: u64,
    /// Candidates that passed the filter (one per isomorphism class in
    /// exhaustive mode) and reached the oracle.
    matched: u64,
    satisfiable: u64,
    skipped_budget: u64,
    skipped: Vec<String>,
    refutation_count: usize,
    refutations: Vec<RefutationDoc>,
}

#[derive(Default)]
struct Tally {
    examined: u64,
    matched: u64,
    satisfiable: u64,
    skipped: Vec<String>,
    refutations: Vec<RefutationDoc>,
}

impl Tally {
    fn absorb(&mut self, other: Tally) {
        self.examined += other.examined;
        self.matched += other.matched;
        self.satisfiable += other.satisfiable;
        self.skipped.extend(other.skipped);
        self.refutations.extend(other.refutations);
    }
}

pub fn run(
    runner: &mut Runner,
    budget: &SearchBudget,
    spec_orders: &[usize],
    params: &Params,
    seed: u64,
    jobs: usize,
) -> Result<Output> {
    let spec = PartitionSpec::new(spec_orders.to_vec())?;
    runner.set_spec(spec.orders());

    let mut tally = Tally::default();
    for path in &params.include {
        let text = runner.load_input(path)?;
        let g = parse_graph(&text, format_for_path(path))?;
        tally.examined += 1;
        if passes(&g, &params.filter) {
            probe(
                &g,
                format!("include:{}", path.display()),
                &spec,
                budget,
                &mut tally,
            )?;
        }
    }

    match params.mode {
        SearchMode::Exhaustive => {
            if params.n_max > 8 {
                return Err(Error::Input(format!(
                    "exhaustive enumeration is limited to 8 vertices, got --n-max {}",
                    params.n_max
                )));
            }
            for n in 1..=params.n_max {
                let sub = sweep_masks(n, &spec, &params.filter, budget, jobs)?;
                tally.absorb(sub);
            }
        }
        SearchMode::Random => {
            let n = params
                .n
                .ok_or_else(|| Error::Input("random mode needs --n".into()))?;
            let sub = sweep_random(
                n,
                params.count,
                params.edge_prob,
                seed,
                &spec,
                &params.filter,
                budget,
                jobs,
            )?;
            tally.absorb(sub);
        }
    }

    let random = params.mode == SearchMode::Random;
    let doc = SearchDoc {
        mode: if random { "random" } else { "exhaustive" }.to_string(),
        spec: spec.orders().to_vec(),
        n_max: (!random).then_some(params.n_max),
        n: if random { params.n } else { None },
        count: random.then_some(params.count),
        edge_prob: random.then_some(params.edge_prob),
        delta: params.filter.delta,
        omega_max: params.filter.omega_max,
        connected: params.filter.connected,
        examined: tally.examined,
        matched: tally.matched,
        satisfiable: tally.satisfiable,
        skipped_budget: tally.skipped.len() as u64,
        skipped: tally.skipped,
        refutation_count: tally.refutations.len(),
        refutations: tally.refutations,
    };
    let summary = format!(
        "examined {}, matched {}, {} refutations, {} budget skips",
        doc.examined, doc.matched, doc.refutation_count, doc.skipped_budget
    );
    let exceptional = doc.skipped_budget > 0;
    Ok(Output {
        result: to_value(&doc)?,
        summary,
        fallback_used: false,
        exceptional,
        file_payload: None,
    })
}

fn passes(g: &Graph, f: &Filter) -> bool {
    if let Some(d) = f.delta {
        if g.max_degree() != d {
            return false;
        }
    }
    if f.connected && !g.is_connected() {
        return false;
    }
    if let Some(w) = f.omega_max {
        if clique_number_in(g, &VertexSet::full(g.n())) > w {
            return false;
        }
    }
    true
}

/// Runs the oracle on one filter-passing candidate.
fn probe(
    g: &Graph,
    source: String,
    spec: &PartitionSpec,
    budget: &SearchBudget,
    tally: &mut Tally,
) -> Result<()> {
    tally.matched += 1;
    let full = VertexSet::full(g.n());
    match exists_partition(g, &full, spec, budget) {
        Ok(outcome) if outcome.exists => tally.satisfiable += 1,
        Ok(outcome) => tally.refutations.push(RefutationDoc {
            source,
            n: g.n(),
            m: g.m(),
            max_degree: g.max_degree(),
            clique_number: clique_number_in(g, &full),
            nodes: outcome.nodes,
            edge_list: serialize_graph(g, GraphFormat::EdgeList),
        }),
        Err(Error::Budget(msg)) => tally.skipped.push(format!("{source}: {msg}")),
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Exhaustive sweep of all edge masks on `n` labeled vertices.
fn sweep_masks(
    n: usize,
    spec: &PartitionSpec,
    filter: &Filter,
    budget: &SearchBudget,
    jobs: usize,
) -> Result<Tally> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let total: u64 = 1 << pairs.len();
    let perms = permutations(n);
    let jobs = jobs.min(total as usize).max(1);
    let chunk = total.div_ceil(jobs as u64);
    let results: Vec<Result<Tally>> = thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..jobs {
            let lo = w as u64 * chunk;
            let hi = (lo + chunk).min(total);
            let pairs = &pairs;
            let perms = &perms;
            handles.push(
                scope.spawn(move || sweep_range(n, lo, hi, pairs, perms, spec, filter, budget)),
            );
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut tally = Tally::default();
    for r in results {
        tally.absorb(r?);
    }
    Ok(tally)
}

#[allow(clippy::too_many_arguments)]
fn sweep_range(
    n: usize,
    lo: u64,
    hi: u64,
    pairs: &[(usize, usize)],
    perms: &[[u8; 8]],
    spec: &PartitionSpec,
    filter: &Filter,
    budget: &SearchBudget,
) -> Result<Tally> {
    let mut tally = Tally::default();
    for mask in lo..hi {
        tally.examined += 1;
        let mut rows = [0u8; 8];
        for (slot, &(i, j)) in pairs.iter().enumerate() {
            if mask >> slot & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
        if let Some(d) = filter.delta {
            let max_deg = rows[..n]
                .iter()
                .map(|r| r.count_ones() as usize)
                .max()
                .unwrap_or(0);
            if max_deg != d {
                continue;
            }
        }
        if filter.connected && !rows_connected(&rows, n) {
            continue;
        }
        if !is_canonical(&rows, pairs, perms, mask) {
            continue;
        }
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(slot, _)| mask >> slot & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges)?;
        if let Some(w) = filter.omega_max {
            if clique_number_in(&g, &VertexSet::full(n)) > w {
                continue;
            }
        }
        probe(
            &g,
            format!("exhaustive:n={n}:mask={mask}"),
            spec,
            budget,
            &mut tally,
        )?;
    }
    Ok(tally)
}

#[allow(clippy::too_many_arguments)]
fn sweep_random(
    n: usize,
    count: usize,
    edge_prob: f64,
    seed: u64,
    spec: &PartitionSpec,
    filter: &Filter,
    budget: &SearchBudget,
    jobs: usize,
) -> Result<Tally> {
    let jobs = jobs.min(count.max(1)).max(1);
    let chunk = count.div_ceil(jobs);
    let results: Vec<Result<Tally>> = thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..jobs {
            let lo = w * chunk;
            let hi = (lo + chunk).min(count);
            handles.push(scope.spawn(move || -> Result<Tally> {
                let mut tally = Tally::default();
                for i in lo..hi {
                    let sub_seed = seed.wrapping_add(i as u64);
                    let g = gen_random(n, edge_prob, sub_seed)?;
                    tally.examined += 1;
                    if passes(&g, filter) {
                        probe(
                            &g,
                            format!("random:n={n}:seed={sub_seed}"),
                            spec,
                            budget,
                            &mut tally,
                        )?;
                    }
                }
                Ok(tally)
            }));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("sample worker panicked"))
            .collect()
    });
    let mut tally = Tally::default();
    for r in results {
        tally.absorb(r?);
    }
    Ok(tally)
}

/// True when no relabeling produces a lexicographically smaller edge mask,
/// i.e. this mask is its isomorphism class's representative.
fn is_canonical(rows: &[u8; 8], pairs: &[(usize, usize)], perms: &[[u8; 8]], mask: u64) -> bool {
    'perm: for perm in perms {
        for (slot, &(i, j)) in pairs.iter().enumerate() {
            let orig = mask >> slot & 1;
            let permuted = u64::from(rows[perm[i] as usize] >> perm[j] & 1);
            if permuted < orig {
                return false;
            }
            if permuted > orig {
                continue 'perm;
            }
        }
    }
    true
}

fn rows_connected(rows: &[u8; 8], n: usize) -> bool {
    let mut seen: u8 = 1;
    loop {
        let mut next = seen;
        for v in 0..n {
            if seen >> v & 1 == 1 {
                next |= rows[v];
            }
        }
        if next == seen {
            break;
        }
        seen = next;
    }
    seen.count_ones() as usize == n
}

/// All permutations of `0..n`, padded into fixed arrays; n ≤ 8.
fn permutations(n: usize) -> Vec<[u8; 8]> {
    fn rec(n: usize, depth: usize, cur: &mut [u8; 8], used: &mut [bool; 8], out: &mut Vec<[u8; 8]>) {
        if depth == n {
            out.push(*cur);
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur[depth] = v as u8;
                rec(n, depth + 1, cur, used, out);
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 0, &mut [0u8; 8], &mut [false; 8], &mut out);
    out
}
