//! Exact brute-force referees: partition existence, maximum clique-free
//! subsets (with optimum counting), and chromatic number.
//!
//! These searches are deliberately budget-gated — they exist to certify or
//! refute at desk scale, not to scale. Node counts are deterministic (no
//! timeouts by default, single-threaded, fixed orderings), so a refutation
//! certificate is simply the search parameters plus the node count, and
//! re-running reproduces it bit for bit.

use std::time::{Duration, Instant};

use crate::cliques::{clique_number_in, has_clique_in, is_kp_free};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{Partition, PartitionSpec};
use crate::set::VertexSet;

/// Hard limits for the exact searches.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Largest vertex count for two-class existence search (2^n tree).
    pub max_n_bipartition: usize,
    /// Largest k^n assignment space for k ≥ 3 existence search.
    pub max_assignment_space: u128,
    /// Largest vertex count for branch-and-bound subset/coloring searches.
    pub max_n_branch_bound: usize,
    /// Optional wall-clock cutoff, checked every few thousand nodes. `None`
    /// keeps node counts deterministic.
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_n_bipartition: 22,
            max_assignment_space: 1_594_323, // 3^13
            max_n_branch_bound: 26,
            time_limit: None,
        }
    }
}

struct Ticker {
    nodes: u64,
    deadline: Option<Instant>,
}

impl Ticker {
    fn new(limit: Option<Duration>) -> Self {
        Ticker {
            nodes: 0,
            deadline: limit.map(|d| Instant::now() + d),
        }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes % 8192 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Error::Budget("time limit exceeded".into()));
                }
            }
        }
        Ok(())
    }
}

/// Result of an exhaustive partition-existence search.
#[derive(Clone, Debug)]
pub struct ExistsOutcome {
    pub exists: bool,
    pub witness: Option<Partition>,
    /// Assignments attempted; a refutation re-run must reproduce this.
    pub nodes: u64,
    /// k^n, the space the search logically covered.
    pub assignment_space: u128,
}

/// Exhaustively decides whether `g[active]` splits into classes matching
/// `spec` (class `i` inducing no `K_{p_i}`).
///
/// Vertices are assigned in descending active-degree order (ties toward the
/// lower id); a branch dies the moment a class would contain a forbidden
/// clique; among classes of equal order only the first empty one is tried.
pub fn exists_partition(
    g: &Graph,
    active: &VertexSet,
    spec: &PartitionSpec,
    budget: &SearchBudget,
) -> Result<ExistsOutcome> {
    let n_act = active.len();
    let k = spec.k();
    let space = (k as u128).saturating_pow(n_act.min(1000) as u32);
    if k == 1 {
        if n_act > budget.max_n_branch_bound {
            return Err(Error::Budget(format!(
                "single-class check limited to {} vertices, got {n_act}",
                budget.max_n_branch_bound
            )));
        }
        let p = spec.orders()[0];
        let exists = is_kp_free(g, active, p);
        let witness = exists.then(|| Partition {
            classes: vec![active.clone()],
            orders: vec![p],
            fallback_used: false,
        });
        return Ok(ExistsOutcome {
            exists,
            witness,
            nodes: 1,
            assignment_space: space,
        });
    }
    if k == 2 {
        if n_act > budget.max_n_bipartition {
            return Err(Error::Budget(format!(
                "two-class search limited to {} vertices, got {n_act}",
                budget.max_n_bipartition
            )));
        }
    } else if space > budget.max_assignment_space {
        return Err(Error::Budget(format!(
            "assignment space {k}^{n_act} exceeds limit {}",
            budget.max_assignment_space
        )));
    }

    let mut verts: Vec<usize> = active.to_vec();
    verts.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).intersection_len(active)), v));

    let mut classes: Vec<VertexSet> = (0..k).map(|_| VertexSet::new(g.n())).collect();
    let mut ticker = Ticker::new(budget.time_limit);
    let found = assign_rec(g, spec.orders(), &verts, 0, &mut classes, &mut ticker)?;
    let witness = if found {
        let p = Partition {
            classes: classes.clone(),
            orders: spec.orders().to_vec(),
            fallback_used: false,
        };
        p.certify(g, active)?;
        Some(p)
    } else {
        None
    };
    Ok(ExistsOutcome {
        exists: found,
        witness,
        nodes: ticker.nodes,
        assignment_space: space,
    })
}

fn assign_rec(
    g: &Graph,
    orders: &[usize],
    verts: &[usize],
    idx: usize,
    classes: &mut Vec<VertexSet>,
    ticker: &mut Ticker,
) -> Result<bool> {
    if idx == verts.len() {
        return Ok(true);
    }
    let v = verts[idx];
    for c in 0..orders.len() {
        // Among equal-order classes, only the first empty one is distinct.
        if classes[c].is_empty()
            && (0..c).any(|d| orders[d] == orders[c] && classes[d].is_empty())
        {
            continue;
        }
        ticker.tick()?;
        // Adding v to class c creates a K_{p_c} iff its class-neighbours
        // already hold a K_{p_c - 1}.
        let hood = classes[c].intersection(g.neighbors(v));
        if has_clique_in(g, &hood, orders[c] - 1) {
            continue;
        }
        classes[c].insert(v);
        if assign_rec(g, orders, verts, idx + 1, classes, ticker)? {
            return Ok(true);
        }
        classes[c].remove(v);
    }
    Ok(false)
}

/// Result of the exact maximum clique-free-subset search.
#[derive(Clone, Debug)]
pub struct MaxSetOutcome {
    pub size: usize,
    /// Lexicographically first maximum set.
    pub witness: VertexSet,
    /// Number of distinct maximum sets.
    pub optima_count: u64,
    pub nodes: u64,
}

/// Every maximum set, up to `cap` of them (count stays exact).
#[derive(Clone, Debug)]
pub struct AllMaxSets {
    pub size: usize,
    /// Lexicographically ordered; truncated at the collection cap.
    pub sets: Vec<VertexSet>,
    pub count: u64,
    pub truncated: bool,
    pub nodes: u64,
}

/// Size of a largest subset of `active` inducing no `K_p`, its
/// lexicographically first witness, and the exact number of optima.
pub fn exact_max_kpfree(
    g: &Graph,
    active: &VertexSet,
    p: usize,
    budget: &SearchBudget,
) -> Result<MaxSetOutcome> {
    let all = max_kpfree_all(g, active, p, budget, 1)?;
    Ok(MaxSetOutcome {
        size: all.size,
        witness: all.sets.into_iter().next().unwrap_or_else(|| VertexSet::new(g.n())),
        optima_count: all.count,
        nodes: all.nodes,
    })
}

/// Enumerates the maximum `K_p`-free subsets of `active`, collecting at most
/// `cap` of them in lexicographic order while counting all of them exactly.
pub fn max_kpfree_all(
    g: &Graph,
    active: &VertexSet,
    p: usize,
    budget: &SearchBudget,
    cap: usize,
) -> Result<AllMaxSets> {
    if p < 2 {
        return Err(Error::Input(format!(
            "clique-free order must be at least 2, got {p}"
        )));
    }
    let n_act = active.len();
    if n_act > budget.max_n_branch_bound {
        return Err(Error::Budget(format!(
            "subset search limited to {} vertices, got {n_act}",
            budget.max_n_branch_bound
        )));
    }
    let verts: Vec<usize> = active.to_vec();
    let mut search = MaxSetSearch {
        g,
        p,
        verts,
        cap,
        best: 0,
        count: 0,
        sets: Vec::new(),
        chosen: VertexSet::new(g.n()),
        ticker: Ticker::new(budget.time_limit),
    };
    // The empty set is K_p-free for p ≥ 2, so a best of 0 always exists.
    search.run(0)?;
    if search.sets.is_empty() {
        search.sets.push(VertexSet::new(g.n()));
        search.count = search.count.max(1);
    }
    Ok(AllMaxSets {
        size: search.best,
        truncated: search.count > search.sets.len() as u64,
        sets: search.sets,
        count: search.count,
        nodes: search.ticker.nodes,
    })
}

struct MaxSetSearch<'a> {
    g: &'a Graph,
    p: usize,
    verts: Vec<usize>,
    cap: usize,
    best: usize,
    count: u64,
    sets: Vec<VertexSet>,
    chosen: VertexSet,
    ticker: Ticker,
}

impl MaxSetSearch<'_> {
    /// Greedy clique cover of the not-yet-decided suffix; each cover clique
    /// `Q` can contribute at most `min(|Q|, p−1)` vertices to any K_p-free
    /// set, giving an admissible upper bound for pruning.
    fn suffix_bound(&self, idx: usize) -> usize {
        let mut rest = VertexSet::new(self.g.n());
        for &v in &self.verts[idx..] {
            rest.insert(v);
        }
        let mut bound = 0;
        while let Some(v) = rest.first() {
            let mut clique = VertexSet::singleton(self.g.n(), v);
            let mut cand = rest.intersection(self.g.neighbors(v));
            while let Some(w) = cand.first() {
                clique.insert(w);
                cand.intersect_in_place(self.g.neighbors(w));
            }
            bound += clique.len().min(self.p - 1);
            rest.subtract_in_place(&clique);
        }
        bound
    }

    fn record_leaf(&mut self) {
        let size = self.chosen.len();
        if size > self.best {
            self.best = size;
            self.count = 0;
            self.sets.clear();
        }
        if size == self.best {
            self.count += 1;
            if self.sets.len() < self.cap {
                self.sets.push(self.chosen.clone());
            }
        }
    }

    fn run(&mut self, idx: usize) -> Result<()> {
        self.ticker.tick()?;
        if idx == self.verts.len() {
            self.record_leaf();
            return Ok(());
        }
        // Non-strict pruning keeps every subtree that could still tie the
        // best, so optimum counting stays exact.
        if self.chosen.len() + self.suffix_bound(idx) < self.best {
            return Ok(());
        }
        let v = self.verts[idx];
        // Include-first in ascending id order visits equal-size sets in
        // lexicographic order, making the first recorded optimum lex-minimal.
        let hood = self.chosen.intersection(self.g.neighbors(v));
        if !has_clique_in(self.g, &hood, self.p - 1) {
            self.chosen.insert(v);
            self.run(idx + 1)?;
            self.chosen.remove(v);
        }
        self.run(idx + 1)
    }
}

/// Result of the exact chromatic-number search.
#[derive(Clone, Debug)]
pub struct ColoringOutcome {
    pub chromatic_number: usize,
    /// Color (0-based) per vertex; vertices outside the searched set hold
    /// `usize::MAX`.
    pub coloring: Vec<usize>,
    pub nodes: u64,
}

/// Exact chromatic number of `g[active]`: clique lower bound, saturation
/// greedy upper bound, then k-colorability search for each k in between.
pub fn exact_chromatic(
    g: &Graph,
    active: &VertexSet,
    budget: &SearchBudget,
) -> Result<ColoringOutcome> {
    let n_act = active.len();
    if n_act > budget.max_n_branch_bound {
        return Err(Error::Budget(format!(
            "coloring search limited to {} vertices, got {n_act}",
            budget.max_n_branch_bound
        )));
    }
    if n_act == 0 {
        return Ok(ColoringOutcome {
            chromatic_number: 0,
            coloring: vec![usize::MAX; g.n()],
            nodes: 0,
        });
    }
    let lower = clique_number_in(g, active);
    let (upper, greedy) = dsatur(g, active);
    if lower == upper {
        return Ok(ColoringOutcome {
            chromatic_number: upper,
            coloring: greedy,
            nodes: 0,
        });
    }
    let mut verts: Vec<usize> = active.to_vec();
    verts.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).intersection_len(active)), v));
    let mut ticker = Ticker::new(budget.time_limit);
    for k in lower..upper {
        let mut coloring = vec![usize::MAX; g.n()];
        if color_rec(g, &verts, 0, k, 0, &mut coloring, &mut ticker)? {
            return Ok(ColoringOutcome {
                chromatic_number: k,
                coloring,
                nodes: ticker.nodes,
            });
        }
    }
    Ok(ColoringOutcome {
        chromatic_number: upper,
        coloring: greedy,
        nodes: ticker.nodes,
    })
}

fn color_rec(
    g: &Graph,
    verts: &[usize],
    idx: usize,
    k: usize,
    used: usize,
    coloring: &mut Vec<usize>,
    ticker: &mut Ticker,
) -> Result<bool> {
    if idx == verts.len() {
        return Ok(true);
    }
    let v = verts[idx];
    // Color symmetry: a fresh color is only ever the next unused index.
    let limit = k.min(used + 1);
    for c in 0..limit {
        ticker.tick()?;
        if g.neighbor_list(v).iter().any(|&w| coloring[w] == c) {
            continue;
        }
        coloring[v] = c;
        if color_rec(g, verts, idx + 1, k, used.max(c + 1), coloring, ticker)? {
            return Ok(true);
        }
        coloring[v] = usize::MAX;
    }
    Ok(false)
}

/// Saturation-first greedy coloring; returns (colors used, assignment).
fn dsatur(g: &Graph, active: &VertexSet) -> (usize, Vec<usize>) {
    let mut coloring = vec![usize::MAX; g.n()];
    let verts: Vec<usize> = active.to_vec();
    let mut colored = 0usize;
    let mut max_color = 0usize;
    while colored < verts.len() {
        // Pick the uncolored vertex with the most distinct neighbour colors,
        // breaking ties by active degree then by id.
        let mut pick = usize::MAX;
        let mut pick_key = (0usize, 0usize);
        for &v in &verts {
            if coloring[v] != usize::MAX {
                continue;
            }
            let mut seen = Vec::new();
            for &w in g.neighbor_list(v) {
                let cw = coloring[w];
                if cw != usize::MAX && !seen.contains(&cw) {
                    seen.push(cw);
                }
            }
            let key = (seen.len(), g.neighbors(v).intersection_len(active));
            if pick == usize::MAX || key > pick_key {
                pick = v;
                pick_key = key;
            }
        }
        let v = pick;
        let mut c = 0usize;
        while g.neighbor_list(v).iter().any(|&w| coloring[w] == c) {
            c += 1;
        }
        coloring[v] = c;
        max_color = max_color.max(c + 1);
        colored += 1;
    }
    (max_color, coloring)
}
