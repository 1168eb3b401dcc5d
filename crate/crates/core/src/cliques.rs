//! Exact clique kernels: enumeration, counting, freeness tests, and maximum
//! clique, all restricted to an arbitrary active vertex set.
//!
//! Enumeration is an ascending-id DFS over bitset candidate sets: a partial
//! clique `r` keeps the set of vertices adjacent to everything in `r`, and
//! extends only with candidates larger than the last added vertex, so every
//! t-clique is produced exactly once, in lexicographic order of its sorted
//! vertex list. At the sizes this library targets (n ≤ a few hundred for
//! counting, n ≤ ~60 for the exact searches that sit on top) this is fast and
//! allocation-light.

use crate::graph::Graph;
use crate::set::VertexSet;

/// A complete subgraph, stored as its ascending vertex list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Clique {
    pub vertices: Vec<usize>,
}

/// Result of counting t-cliques with a bounded witness list.
#[derive(Clone, Debug)]
pub struct CliqueReport {
    /// The t that was asked for.
    pub order_queried: usize,
    /// Total number of t-cliques in the active subgraph.
    pub count: u64,
    /// The lexicographically first witnesses, at most `witness_cap` of them.
    pub witnesses: Vec<Clique>,
    pub witness_cap: usize,
}

pub const DEFAULT_WITNESS_CAP: usize = 1024;

/// Visits every t-clique of `g[active]` in lexicographic order of the sorted
/// vertex list. The callback returns `false` to stop early.
pub fn visit_t_cliques_in<F>(g: &Graph, active: &VertexSet, t: usize, mut f: F)
where
    F: FnMut(&[usize]) -> bool,
{
    if t == 0 {
        return;
    }
    let mut stack: Vec<usize> = Vec::with_capacity(t);
    let mut cand = active.clone();
    visit_rec(g, t, &mut stack, &mut cand, &mut f);
}

fn visit_rec<F>(g: &Graph, t: usize, stack: &mut Vec<usize>, cand: &VertexSet, f: &mut F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    if stack.len() == t {
        return f(stack);
    }
    // Not enough candidates left to complete the clique.
    if cand.len() + stack.len() < t {
        return true;
    }
    for v in cand.to_vec() {
        stack.push(v);
        let mut next = cand.intersection(g.neighbors(v));
        next.clear_through(v);
        let keep_going = visit_rec(g, t, stack, &next, f);
        stack.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Counts t-cliques in `g[active]`, collecting the lexicographically first
/// `witness_cap` of them.
pub fn count_cliques_in(
    g: &Graph,
    active: &VertexSet,
    t: usize,
    witness_cap: usize,
) -> CliqueReport {
    let mut count = 0u64;
    let mut witnesses = Vec::new();
    visit_t_cliques_in(g, active, t, |vs| {
        count += 1;
        if witnesses.len() < witness_cap {
            witnesses.push(Clique {
                vertices: vs.to_vec(),
            });
        }
        true
    });
    CliqueReport {
        order_queried: t,
        count,
        witnesses,
        witness_cap,
    }
}

pub fn count_cliques(g: &Graph, t: usize) -> CliqueReport {
    count_cliques_in(g, &VertexSet::full(g.n()), t, DEFAULT_WITNESS_CAP)
}

/// True if `g[active]` contains at least one t-clique.
pub fn has_clique_in(g: &Graph, active: &VertexSet, t: usize) -> bool {
    if t == 0 {
        return true; // the empty clique always exists
    }
    let mut found = false;
    visit_t_cliques_in(g, active, t, |_| {
        found = true;
        false
    });
    found
}

/// True if `g[active]` has no complete subgraph on `p` vertices.
///
/// Degenerate orders follow the subgraph reading: every graph contains the
/// empty clique, so `p = 0` is never free, and `p = 1` is free exactly when
/// the active set is empty.
pub fn is_kp_free(g: &Graph, active: &VertexSet, p: usize) -> bool {
    !has_clique_in(g, active, p)
}

/// All t-cliques of `g[active]` that contain `v`, in lexicographic order.
pub fn cliques_through_vertex_in(g: &Graph, active: &VertexSet, t: usize, v: usize) -> Vec<Clique> {
    let mut out = Vec::new();
    if t == 0 || !active.contains(v) {
        return out;
    }
    visit_t_cliques_in(g, active, t, |vs| {
        if vs.binary_search(&v).is_ok() {
            out.push(Clique {
                vertices: vs.to_vec(),
            });
        }
        true
    });
    out
}

/// Number of t-cliques of `g[active]` containing `v`.
pub fn clique_count_through_vertex_in(g: &Graph, active: &VertexSet, t: usize, v: usize) -> u64 {
    if t == 0 || !active.contains(v) {
        return 0;
    }
    // Every t-clique through v is {v} ∪ (a (t-1)-clique in N(v) ∩ active).
    let hood = g.neighbors(v).intersection(active);
    if t == 1 {
        return 1;
    }
    let mut count = 0u64;
    visit_t_cliques_in(g, &hood, t - 1, |_| {
        count += 1;
        true
    });
    count
}

/// Clique number of `g[active]` via branch and bound with a greedy pivot.
pub fn clique_number_in(g: &Graph, active: &VertexSet) -> usize {
    let mut best = 0usize;
    let mut current = Vec::new();
    omega_rec(g, active, &mut current, &mut best);
    best
}

fn omega_rec(g: &Graph, cand: &VertexSet, current: &mut Vec<usize>, best: &mut usize) {
    if current.len() > *best {
        *best = current.len();
    }
    if current.len() + cand.len() <= *best {
        return;
    }
    // Pivot on a candidate of maximum degree within the candidate set: only
    // non-neighbours of the pivot (and the pivot itself) need to be branched on.
    let mut pivot = usize::MAX;
    let mut pivot_deg = usize::MAX;
    for v in cand.iter() {
        let d = g.neighbors(v).intersection_len(cand);
        if pivot == usize::MAX || d > pivot_deg {
            pivot = v;
            pivot_deg = d;
        }
    }
    if pivot == usize::MAX {
        return;
    }
    let mut branch = cand.difference(g.neighbors(pivot));
    // `branch` contains the pivot (a vertex is never its own neighbour).
    let mut remaining = cand.clone();
    for v in branch.to_vec() {
        branch.remove(v);
        current.push(v);
        let next = remaining.intersection(g.neighbors(v));
        omega_rec(g, &next, current, best);
        current.pop();
        remaining.remove(v);
        if current.len() + remaining.len() <= *best {
            return;
        }
    }
}

pub fn clique_number(g: &Graph) -> usize {
    clique_number_in(g, &VertexSet::full(g.n()))
}

/// The lexicographically first maximum clique of `g[active]`.
pub fn max_clique_in(g: &Graph, active: &VertexSet) -> Clique {
    let omega = clique_number_in(g, active);
    if omega == 0 {
        return Clique { vertices: vec![] };
    }
    let mut first: Option<Vec<usize>> = None;
    visit_t_cliques_in(g, active, omega, |vs| {
        first = Some(vs.to_vec());
        false // lexicographically first is the first one visited
    });
    Clique {
        vertices: first.expect("clique of size omega must exist"),
    }
}
