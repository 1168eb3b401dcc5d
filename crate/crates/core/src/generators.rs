//! Graph generators: named families, two fixed witness graphs, seeded random
//! graphs, and filtered random corpora for the test suites.
//!
//! All randomness is ChaCha8 seeded from an explicit `u64`, and G(n, p)
//! decides pairs in lexicographic order, so every generated graph is a pure
//! function of its parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cliques;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

/// Algorithm behind every seeded generator, recorded in run manifests.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Complete graph K_n.
pub fn gen_complete(n: usize) -> Graph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("complete graph edges are valid")
}

/// Cycle C_n, n ≥ 3.
pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Input(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Strong product `a ⊠ b`: vertices are pairs `(i, j)` numbered row-major as
/// `i * b.n() + j`; two distinct pairs are adjacent when each coordinate is
/// equal or adjacent in its factor.
pub fn gen_strong_product(a: &Graph, b: &Graph) -> Graph {
    let n = a.n() * b.n();
    let nb = b.n();
    let mut edges = Vec::new();
    for u in 0..n {
        let (ua, ub) = (u / nb, u % nb);
        for v in (u + 1)..n {
            let (va, vb) = (v / nb, v % nb);
            let first = ua == va || a.has_edge(ua, va);
            let second = ub == vb || b.has_edge(ub, vb);
            if first && second {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("strong product edges are valid")
}

/// Fixed 8-vertex witness: 4-regular, clique number 3, and admitting no
/// split into a triangle-free class and an edgeless class.
pub fn gen_h1_figure() -> Graph {
    let edges = [
        (0, 1),
        (0, 2),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 4),
        (0, 5),
        (0, 7),
        (3, 5),
        (3, 6),
        (4, 6),
        (4, 7),
        (5, 6),
        (5, 7),
        (6, 7),
    ];
    Graph::from_edges(8, &edges).expect("fixed witness edges are valid")
}

/// Fixed 24-vertex witness: K₈ on vertices 0..8, plus two degree-1 pendants
/// `8+2i` and `9+2i` attached to each core vertex `i`.
pub fn gen_h0_pendant() -> Graph {
    let mut edges = Vec::new();
    for u in 0..8 {
        for v in (u + 1)..8 {
            edges.push((u, v));
        }
    }
    for i in 0..8 {
        edges.push((i, 8 + 2 * i));
        edges.push((i, 9 + 2 * i));
    }
    Graph::from_edges(24, &edges).expect("fixed witness edges are valid")
}

/// G(n, p): each pair `(u, v)` with `u < v`, visited in lexicographic order,
/// becomes an edge independently with probability `edge_prob`.
pub fn gen_random(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::Input(format!(
            "edge probability must lie in [0, 1], got {edge_prob}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < edge_prob {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Parameter block describing one named graph family instance.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Complete { n: usize },
    Cycle { n: usize },
    StrongProduct { left: Box<FamilySpec>, right: Box<FamilySpec> },
    H1Figure,
    H0Pendant,
    Random { n: usize, edge_prob: f64, seed: u64 },
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::StrongProduct { .. } => "strong-product",
            FamilySpec::H1Figure => "h1-figure",
            FamilySpec::H0Pendant => "h0-pendant",
            FamilySpec::Random { .. } => "random",
        }
    }
}

/// Materialises a [`FamilySpec`].
pub fn gen_named(spec: &FamilySpec) -> Result<Graph> {
    match spec {
        FamilySpec::Complete { n } => Ok(gen_complete(*n)),
        FamilySpec::Cycle { n } => gen_cycle(*n),
        FamilySpec::StrongProduct { left, right } => {
            let a = gen_named(left)?;
            let b = gen_named(right)?;
            Ok(gen_strong_product(&a, &b))
        }
        FamilySpec::H1Figure => Ok(gen_h1_figure()),
        FamilySpec::H0Pendant => Ok(gen_h0_pendant()),
        FamilySpec::Random { n, edge_prob, seed } => gen_random(*n, *edge_prob, *seed),
    }
}

/// Clique-number requirement a corpus graph must satisfy, evaluated against
/// the graph's own maximum degree Δ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaConstraint {
    Unconstrained,
    /// ω ≤ Δ − offset.
    AtMostDeltaMinus(usize),
    /// 3ω ≥ 2(Δ + 1).
    AtLeastTwoThirdsDeltaPlusOne,
    Exactly(usize),
}

impl OmegaConstraint {
    fn admits(&self, omega: usize, delta: usize) -> bool {
        match *self {
            OmegaConstraint::Unconstrained => true,
            OmegaConstraint::AtMostDeltaMinus(off) => {
                delta >= off && omega <= delta - off
            }
            OmegaConstraint::AtLeastTwoThirdsDeltaPlusOne => 3 * omega >= 2 * (delta + 1),
            OmegaConstraint::Exactly(w) => omega == w,
        }
    }
}

/// Acceptance filter for randomly generated corpus graphs.
#[derive(Clone, Debug)]
pub struct CorpusFilter {
    pub n_min: usize,
    pub n_max: usize,
    pub delta_min: usize,
    pub delta_max: Option<usize>,
    pub omega_min: usize,
    pub omega: OmegaConstraint,
    pub connected: bool,
    /// Edge probability range sampled uniformly per attempt.
    pub edge_prob: (f64, f64),
}

impl Default for CorpusFilter {
    fn default() -> Self {
        CorpusFilter {
            n_min: 8,
            n_max: 16,
            delta_min: 0,
            delta_max: None,
            omega_min: 0,
            omega: OmegaConstraint::Unconstrained,
            connected: true,
            edge_prob: (0.3, 0.8),
        }
    }
}

/// One accepted corpus graph together with the parameters that reproduce it.
#[derive(Clone, Debug)]
pub struct CorpusGraph {
    pub graph: Graph,
    /// `gen_random(n, edge_prob, sub_seed)` rebuilds `graph` exactly.
    pub sub_seed: u64,
    pub n: usize,
    pub edge_prob: f64,
    pub delta: usize,
    pub omega: usize,
}

#[derive(Clone, Debug)]
pub struct CorpusResult {
    pub graphs: Vec<CorpusGraph>,
    pub requested: usize,
    pub attempts: usize,
}

impl CorpusResult {
    pub fn shortfall(&self) -> usize {
        self.requested.saturating_sub(self.graphs.len())
    }
}

/// Samples random graphs until `count` pass the filter or `max_attempts`
/// attempts are spent. Deterministic in `seed`.
pub fn gen_corpus(
    filter: &CorpusFilter,
    count: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<CorpusResult> {
    if filter.n_min > filter.n_max {
        return Err(Error::Input(format!(
            "corpus size range is empty: {}..={}",
            filter.n_min, filter.n_max
        )));
    }
    let (lo, hi) = filter.edge_prob;
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
        return Err(Error::Input(format!(
            "edge probability range must satisfy 0 ≤ lo ≤ hi ≤ 1, got ({lo}, {hi})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graphs = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while graphs.len() < count && attempts < max_attempts {
        attempts += 1;
        let n = rng.random_range(filter.n_min..=filter.n_max);
        let edge_prob = if lo == hi { lo } else { rng.random_range(lo..hi) };
        let sub_seed = rng.random::<u64>();
        let g = gen_random(n, edge_prob, sub_seed)?;
        if filter.connected && !g.is_connected() {
            continue;
        }
        let delta = g.max_degree();
        if delta < filter.delta_min {
            continue;
        }
        if let Some(dmax) = filter.delta_max {
            if delta > dmax {
                continue;
            }
        }
        let omega = cliques::clique_number_in(&g, &VertexSet::full(g.n()));
        if omega < filter.omega_min || !filter.omega.admits(omega, delta) {
            continue;
        }
        graphs.push(CorpusGraph {
            graph: g,
            sub_seed,
            n,
            edge_prob,
            delta,
            omega,
        });
    }
    Ok(CorpusResult {
        graphs,
        requested: count,
        attempts,
    })
}
