//! Maximum clique-free splits via a bounded exchange walk.
//!
//! Given a connected graph with maximum degree Δ ≥ 5, clique number exactly
//! `p`, and orders `p, q ≥ 3` with `p + q = Δ + 1`, [`max_kpfree_partition`]
//! produces a two-class split whose first class is a *maximum* `K_p`-free set
//! and whose second class induces no `K_q`.
//!
//! The construction enumerates every maximum `K_p`-free set, keeps the ones
//! with the fewest `(p−1)`-cliques ([`min_kp1_filter`]), and seeds from the
//! lexicographically first of those. If the complement of the seed already
//! avoids `K_q`, we are done. Otherwise an exchange walk repeatedly swaps one
//! outside vertex in and one inside vertex out, preserving the set's size and
//! its `(p−1)`-clique count, until a swap strands the incoming vertex outside
//! every `K_q` of the complement — a *descent* — which strictly lowers the
//! number of `K_q` copies. Each swap is dictated by two small sets:
//!
//! * the **pivot set** `A` ([`build_a`]): the intersection of all `K_p`
//!   copies that appear when the outside vertex joins the class — any member
//!   may leave and restore freeness;
//! * the **relay set** `B` ([`build_b`]): the intersection (or tight
//!   component) of the `K_q` copies through the vertex that just left — it
//!   supplies the next outside vertex.
//!
//! Every structural premise of the walk is checked as it is used; a breach,
//! a stalled walk, or an exceeded step cap abandons the walk and falls back
//! to scanning the full minimizer family for a member with a clean
//! complement, so the result is exact on every route. The whole walk is
//! recorded as an [`ExchangeTrace`] that [`verify_trace`] can replay against
//! the graph with fresh recomputation of every quantity.

use crate::cliques::{
    clique_count_through_vertex_in, cliques_through_vertex_in, count_cliques_in, is_kp_free,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{max_kpfree_all, SearchBudget};
use crate::partition::Partition;
use crate::set::VertexSet;

/// Hard cap on how many maximum sets the seeding enumeration will collect.
pub const MAX_OPTIMA: usize = 65_536;

/// How the final split was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedRoute {
    /// The first minimizer already had a clean complement; no swaps.
    SeedOnly,
    /// The exchange walk finished with a clean complement.
    Exchange,
    /// The walk was abandoned and the minimizer family was scanned instead.
    Fallback,
}

/// One swap of the exchange walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Size- and profile-preserving swap that keeps the walk moving.
    Walk,
    /// Swap whose incoming vertex joins no forbidden copy; ends the epoch.
    Descent,
}

/// Replayable record of a single swap.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub index: usize,
    pub epoch: usize,
    pub kind: StepKind,
    /// Outside vertex that enters the class.
    pub v: usize,
    /// Inside vertex that leaves the class.
    pub y: usize,
    /// Pivot set `A` for `v`, including `v` itself.
    pub a_set: Vec<usize>,
    /// Number of forbidden copies through `y` after the swap (walk only).
    pub b_source: Option<usize>,
    /// Relay set `B` for `y` (walk only).
    pub b_set: Option<Vec<usize>>,
    /// Anchor copy through `v` before the swap.
    pub k0: Vec<usize>,
    /// Replacement copy through `y` after the swap (walk only).
    pub k1: Option<Vec<usize>>,
    /// `(p−1)`-clique count of the class after the swap.
    pub kp1_count: u64,
    /// `K_q` count of the complement after the swap.
    pub kq_count: u64,
    pub s_size: usize,
}

/// Complete record of an exchange walk, replayable by [`verify_trace`].
#[derive(Clone, Debug)]
pub struct ExchangeTrace {
    pub seed: Vec<usize>,
    pub p: usize,
    pub q: usize,
    pub steps: Vec<TraceStep>,
}

/// Result of [`max_kpfree_partition`].
#[derive(Clone, Debug)]
pub struct MaxKpfreeOutcome {
    /// Two classes: the maximum `K_p`-free set, then its complement.
    pub partition: Partition,
    /// Size of a maximum `K_p`-free set.
    pub max_size: usize,
    /// Exact number of maximum `K_p`-free sets.
    pub optima_count: u64,
    /// Fewest `(p−1)`-cliques induced by any maximum set.
    pub min_kp1: u64,
    pub route: SeedRoute,
    pub trace: Option<ExchangeTrace>,
    /// Number of descents attempted (0 when no walk ran).
    pub epochs: usize,
}

fn count_t(g: &Graph, active: &VertexSet, t: usize) -> u64 {
    count_cliques_in(g, active, t, 0).count
}

/// Keeps the sets inducing the fewest `(p−1)`-cliques, preserving order.
///
/// The input must be a non-empty family of equal-size `K_p`-free sets (as
/// produced by the maximum-set enumeration); anything else is an internal
/// fault, not bad user input.
pub fn min_kp1_filter(g: &Graph, sets: &[VertexSet], p: usize) -> Result<(Vec<VertexSet>, u64)> {
    if sets.is_empty() {
        return Err(Error::Internal("minimizer filter got an empty family".into()));
    }
    let size = sets[0].len();
    let mut counts = Vec::with_capacity(sets.len());
    for s in sets {
        if s.len() != size {
            return Err(Error::Internal(
                "minimizer filter got sets of unequal size".into(),
            ));
        }
        if !is_kp_free(g, s, p) {
            return Err(Error::Internal(
                "minimizer filter got a set with a forbidden clique".into(),
            ));
        }
        counts.push(count_t(g, s, p - 1));
    }
    let min = *counts.iter().min().expect("non-empty counts");
    let members = sets
        .iter()
        .zip(&counts)
        .filter(|(_, &c)| c == min)
        .map(|(s, _)| s.clone())
        .collect();
    Ok((members, min))
}

/// Pivot set for an outside vertex: the intersection of all `K_p` copies
/// through `v` in the class extended by `v`.
///
/// The class must be maximal, so at least one copy appears; and the copies
/// through one vertex must pairwise share `p−1` vertices, so the
/// intersection keeps at least `p−1`. Either failure is a broken premise,
/// reported as a contract error.
pub fn build_a(g: &Graph, s: &VertexSet, v: usize, p: usize) -> Result<VertexSet> {
    if s.contains(v) {
        return Err(Error::Input(format!("vertex {v} is already inside the class")));
    }
    let mut s_plus = s.clone();
    s_plus.insert(v);
    let copies = cliques_through_vertex_in(g, &s_plus, p, v);
    if copies.is_empty() {
        return Err(Error::Contract(format!(
            "vertex {v} joins the class without creating a forbidden clique; the class is not maximal"
        )));
    }
    let mut a = VertexSet::from_vertices(g.n(), copies[0].vertices.iter().copied());
    for copy in &copies[1..] {
        a.intersect_in_place(&VertexSet::from_vertices(g.n(), copy.vertices.iter().copied()));
    }
    if a.len() < p - 1 {
        return Err(Error::Contract(format!(
            "pivot set of vertex {v} has {} vertices, expected at least {}",
            a.len(),
            p - 1
        )));
    }
    Ok(a)
}

fn component_of(g: &Graph, within: &VertexSet, start: usize) -> VertexSet {
    let mut seen = VertexSet::singleton(g.n(), start);
    let mut queue = vec![start];
    while let Some(u) = queue.pop() {
        for w in g.neighbors(u).intersection(within).iter() {
            if !seen.contains(w) {
                seen.insert(w);
                queue.push(w);
            }
        }
    }
    seen
}

fn is_clique(g: &Graph, verts: &VertexSet) -> bool {
    let vs = verts.to_vec();
    for (i, &u) in vs.iter().enumerate() {
        for &w in &vs[i + 1..] {
            if !g.has_edge(u, w) {
                return false;
            }
        }
    }
    true
}

/// Relay set for the vertex `y` that just moved into `complement`: built
/// from the `K_q` copies through `y` there.
///
/// Exactly three shapes are admissible — one copy, two copies, or exactly
/// `q` copies whose component is a `(q+1)`-clique. One or two copies yield
/// their intersection; the tight component yields itself. Anything else
/// breaches the walk's counting premise. Returns the copy count alongside
/// the set; the set always has between `q−1` and `q+1` vertices.
pub fn build_b(g: &Graph, complement: &VertexSet, y: usize, q: usize) -> Result<(usize, VertexSet)> {
    if !complement.contains(y) {
        return Err(Error::Input(format!("vertex {y} is not in the complement")));
    }
    let copies = cliques_through_vertex_in(g, complement, q, y);
    let c = copies.len();
    let b = match c {
        0 => {
            return Err(Error::Contract(format!(
                "vertex {y} lies in no forbidden copy; the walk should have descended"
            )))
        }
        1 | 2 => {
            let mut b = VertexSet::from_vertices(g.n(), copies[0].vertices.iter().copied());
            for copy in &copies[1..] {
                b.intersect_in_place(&VertexSet::from_vertices(
                    g.n(),
                    copy.vertices.iter().copied(),
                ));
            }
            b
        }
        c if c == q => {
            let comp = component_of(g, complement, y);
            if comp.len() != q + 1 || !is_clique(g, &comp) {
                return Err(Error::Contract(format!(
                    "vertex {y} lies in {q} forbidden copies but its component is not a single clique of {} vertices",
                    q + 1
                )));
            }
            comp
        }
        _ => {
            return Err(Error::Contract(format!(
                "vertex {y} lies in {c} forbidden copies; expected 1, 2, or {q}"
            )))
        }
    };
    if b.len() + 1 < q || b.len() > q + 1 {
        return Err(Error::Contract(format!(
            "relay set of vertex {y} has {} vertices, expected between {} and {}",
            b.len(),
            q - 1,
            q + 1
        )));
    }
    Ok((c, b))
}

/// Checks the copy-count profile the walk relies on: every complement vertex
/// lies in at most two `K_q` copies, or in exactly `q` copies forming a
/// single `(q+1)`-clique component.
fn check_copy_profile(g: &Graph, complement: &VertexSet, q: usize) -> Result<()> {
    for y in complement.iter() {
        let c = clique_count_through_vertex_in(g, complement, q, y);
        if c <= 2 {
            continue;
        }
        if c == q as u64 {
            let comp = component_of(g, complement, y);
            if comp.len() == q + 1 && is_clique(g, &comp) {
                continue;
            }
        }
        return Err(Error::Contract(format!(
            "complement vertex {y} lies in {c} forbidden copies"
        )));
    }
    Ok(())
}

struct ExchangeRun<'a> {
    g: &'a Graph,
    p: usize,
    q: usize,
    s: VertexSet,
    complement: VertexSet,
    /// The `(p−1)`-clique count every intermediate class must preserve.
    kp1_target: u64,
    steps: Vec<TraceStep>,
    epoch: usize,
    epoch_ys: Vec<usize>,
    epoch_a_union: VertexSet,
}

impl<'a> ExchangeRun<'a> {
    fn new(g: &'a Graph, p: usize, q: usize, seed: &VertexSet, kp1_target: u64) -> Self {
        ExchangeRun {
            g,
            p,
            q,
            s: seed.clone(),
            complement: seed.complement(),
            kp1_target,
            steps: Vec::new(),
            epoch: 0,
            epoch_ys: Vec::new(),
            epoch_a_union: VertexSet::new(g.n()),
        }
    }

    fn swap(&mut self, v: usize, y: usize) {
        self.s.insert(v);
        self.s.remove(y);
        self.complement.remove(v);
        self.complement.insert(y);
    }

    #[allow(clippy::too_many_arguments)]
    fn push_step(
        &mut self,
        kind: StepKind,
        v: usize,
        y: usize,
        a: &VertexSet,
        b_source: Option<usize>,
        b_set: Option<Vec<usize>>,
        k0: Vec<usize>,
        k1: Option<Vec<usize>>,
        kq_count: u64,
    ) {
        self.steps.push(TraceStep {
            index: self.steps.len(),
            epoch: self.epoch,
            kind,
            v,
            y,
            a_set: a.to_vec(),
            b_source,
            b_set,
            k0,
            k1,
            kp1_count: self.kp1_target,
            kq_count,
            s_size: self.s.len(),
        });
    }

    /// Runs the walk to a clean complement, or reports why it stopped (any
    /// error here merely routes the caller to the exhaustive fallback).
    fn run(&mut self) -> Result<()> {
        check_copy_profile(self.g, &self.complement, self.q)?;
        let cap = (self.g.n() * self.q).max(64);
        let mut kq = count_t(self.g, &self.complement, self.q);
        loop {
            // Epoch start: anchor at the complement vertex inside the most
            // forbidden copies (ties toward the lower id).
            let mut v = usize::MAX;
            let mut best = 0u64;
            for u in self.complement.iter() {
                let c = clique_count_through_vertex_in(self.g, &self.complement, self.q, u);
                if c > best {
                    best = c;
                    v = u;
                }
            }
            if v == usize::MAX {
                return Err(Error::Contract(
                    "no anchor vertex despite remaining forbidden copies".into(),
                ));
            }
            let mut k0 = cliques_through_vertex_in(self.g, &self.complement, self.q, v)[0]
                .vertices
                .clone();
            self.epoch_ys.clear();
            self.epoch_a_union = VertexSet::new(self.g.n());
            loop {
                if self.steps.len() >= cap {
                    return Err(Error::Budget(format!(
                        "exchange walk exceeded {cap} swaps"
                    )));
                }
                let a = build_a(self.g, &self.s, v, self.p)?;
                if !a.is_disjoint(&self.epoch_a_union) {
                    return Err(Error::Contract(
                        "pivot sets overlap within one epoch".into(),
                    ));
                }
                self.epoch_a_union.union_in_place(&a);
                // Swap candidates: pivot members whose departure keeps the
                // class maximum-size-equivalent — free of forbidden cliques
                // and with the same (p−1)-clique count.
                let mut cands = a.to_vec();
                cands.retain(|&y| {
                    if y == v {
                        return false;
                    }
                    let mut s_new = self.s.clone();
                    s_new.insert(v);
                    s_new.remove(y);
                    is_kp_free(self.g, &s_new, self.p)
                        && count_t(self.g, &s_new, self.p - 1) == self.kp1_target
                });
                if cands.is_empty() {
                    return Err(Error::Contract(
                        "no swap candidate preserves the class profile".into(),
                    ));
                }
                // Descent first: a candidate that would end up outside every
                // forbidden copy strictly shrinks the count.
                let mut descent = None;
                for &y in &cands {
                    let mut comp_new = self.complement.clone();
                    comp_new.remove(v);
                    comp_new.insert(y);
                    if clique_count_through_vertex_in(self.g, &comp_new, self.q, y) == 0 {
                        descent = Some(y);
                        break;
                    }
                }
                if let Some(y) = descent {
                    self.swap(v, y);
                    let kq_new = count_t(self.g, &self.complement, self.q);
                    if kq_new >= kq {
                        return Err(Error::Contract(
                            "descent swap failed to reduce the forbidden count".into(),
                        ));
                    }
                    check_copy_profile(self.g, &self.complement, self.q)?;
                    self.push_step(StepKind::Descent, v, y, &a, None, None, k0, None, kq_new);
                    kq = kq_new;
                    if kq == 0 {
                        return Ok(());
                    }
                    self.epoch += 1;
                    break; // next epoch
                }
                // Walk: lowest candidate owning a copy disjoint from the
                // anchor (copies come back in lexicographic order).
                let mut pick: Option<(usize, Vec<usize>)> = None;
                'scan: for &y in &cands {
                    let mut comp_new = self.complement.clone();
                    comp_new.remove(v);
                    comp_new.insert(y);
                    for copy in cliques_through_vertex_in(self.g, &comp_new, self.q, y) {
                        if copy.vertices.iter().all(|u| !k0.contains(u)) {
                            pick = Some((y, copy.vertices));
                            break 'scan;
                        }
                    }
                }
                let Some((y, k1)) = pick else {
                    return Err(Error::Contract(
                        "no forbidden copy disjoint from the anchor".into(),
                    ));
                };
                self.swap(v, y);
                let (c, b) = build_b(self.g, &self.complement, y, self.q)?;
                check_copy_profile(self.g, &self.complement, self.q)?;
                let kq_new = count_t(self.g, &self.complement, self.q);
                self.push_step(
                    StepKind::Walk,
                    v,
                    y,
                    &a,
                    Some(c),
                    Some(b.to_vec()),
                    k0.clone(),
                    Some(k1.clone()),
                    kq_new,
                );
                self.epoch_ys.push(y);
                kq = kq_new;
                // Relay: next anchor vertex from B, skipping vertices that
                // already left the class this epoch and preferring one
                // outside the old anchor copy.
                let mut pool = b.to_vec();
                pool.retain(|u| !self.epoch_ys.contains(u));
                if pool.is_empty() {
                    return Err(Error::Contract("relay pool exhausted".into()));
                }
                let v_next = pool
                    .iter()
                    .copied()
                    .find(|u| !k0.contains(u))
                    .unwrap_or(pool[0]);
                k0 = if k1.contains(&v_next) {
                    k1
                } else {
                    let copies =
                        cliques_through_vertex_in(self.g, &self.complement, self.q, v_next);
                    if copies.is_empty() {
                        return Err(Error::Contract(
                            "next anchor vertex lies in no forbidden copy".into(),
                        ));
                    }
                    copies[0].vertices.clone()
                };
                v = v_next;
            }
        }
    }
}

/// Largest `K_p`-free class with a `K_q`-free complement, for a connected
/// graph with maximum degree Δ ≥ 5, clique number exactly `p`, `p, q ≥ 3`,
/// and `p + q = Δ + 1`.
///
/// The first class of the returned partition is a maximum `K_p`-free set —
/// certified against the exhaustive enumeration, not merely maximal.
pub fn max_kpfree_partition(
    g: &Graph,
    p: usize,
    q: usize,
    budget: &SearchBudget,
) -> Result<MaxKpfreeOutcome> {
    if !g.is_connected() {
        return Err(Error::Input("requires a connected graph".into()));
    }
    let delta = g.max_degree();
    if delta < 5 {
        return Err(Error::Input(format!(
            "requires maximum degree at least 5, got {delta}"
        )));
    }
    if p < 3 || q < 3 {
        return Err(Error::Input(format!(
            "class orders must both be at least 3, got {p} and {q}"
        )));
    }
    if p + q != delta + 1 {
        return Err(Error::Input(format!(
            "class orders must sum to max degree + 1 = {}, got {}",
            delta + 1,
            p + q
        )));
    }
    let full = VertexSet::full(g.n());
    let omega = crate::cliques::clique_number_in(g, &full);
    if omega != p {
        return Err(Error::Input(format!(
            "clique number is {omega}, expected exactly {p}"
        )));
    }

    let all = max_kpfree_all(g, &full, p, budget, MAX_OPTIMA)?;
    if all.truncated {
        return Err(Error::Budget(format!(
            "more than {MAX_OPTIMA} maximum sets; enumeration truncated"
        )));
    }
    let (members, min_kp1) = min_kp1_filter(g, &all.sets, p)?;
    let seed = members[0].clone();
    let seed_complement = seed.complement();

    let (class, route, trace, epochs) = if count_t(g, &seed_complement, q) == 0 {
        let trace = ExchangeTrace {
            seed: seed.to_vec(),
            p,
            q,
            steps: Vec::new(),
        };
        (seed, SeedRoute::SeedOnly, trace, 0)
    } else {
        let mut run = ExchangeRun::new(g, p, q, &seed, min_kp1);
        let finished = run.run();
        let epochs = run.epoch + 1;
        let trace = ExchangeTrace {
            seed: seed.to_vec(),
            p,
            q,
            steps: run.steps.clone(),
        };
        match finished {
            Ok(()) => (run.s.clone(), SeedRoute::Exchange, trace, epochs),
            Err(_) => {
                // Exhaustive fallback: the minimizer family is complete, so
                // scan it for a member with a clean complement.
                let found = members
                    .iter()
                    .find(|m| count_t(g, &m.complement(), q) == 0)
                    .cloned();
                match found {
                    Some(s) => (s, SeedRoute::Fallback, trace, epochs),
                    None => {
                        return Err(Error::Internal(
                            "no maximum set with the fewest small cliques has a clean complement"
                                .into(),
                        ))
                    }
                }
            }
        }
    };

    if class.len() != all.size {
        return Err(Error::Internal(
            "exchange produced a class of the wrong size".into(),
        ));
    }
    let partition = Partition {
        classes: vec![class.clone(), class.complement()],
        orders: vec![p, q],
        fallback_used: route == SeedRoute::Fallback,
    };
    partition.certify(g, &full)?;
    Ok(MaxKpfreeOutcome {
        partition,
        max_size: all.size,
        optima_count: all.count,
        min_kp1,
        route,
        trace: Some(trace),
        epochs,
    })
}

fn cert(i: usize, msg: &str) -> Error {
    Error::Certification(format!("step {i}: {msg}"))
}

fn valid_copy(g: &Graph, verts: &[usize], q: usize, through: usize, within: &VertexSet) -> bool {
    verts.len() == q
        && verts.windows(2).all(|w| w[0] < w[1])
        && verts.iter().all(|&u| u < g.n() && within.contains(u))
        && verts.contains(&through)
        && verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&w| g.has_edge(u, w)))
}

/// Replays a trace against the graph, recomputing every recorded quantity
/// from scratch and failing on the first discrepancy.
///
/// Checked per step: the class size and `(p−1)`-clique count never move, the
/// class stays free of `K_p`, the pivot and relay sets equal the recorded
/// ones, anchor and replacement copies are genuine copies, the replacement
/// overlaps the anchor in either zero or at least `q−2` vertices, each
/// walk's successor vertex comes from the recorded relay set, and the
/// complement keeps the copy-count profile the walk relies on.
pub fn verify_trace(g: &Graph, trace: &ExchangeTrace) -> Result<()> {
    let n = g.n();
    let p = trace.p;
    let q = trace.q;
    if p < 2 || q < 2 {
        return Err(Error::Certification(format!(
            "degenerate class orders {p} and {q}"
        )));
    }
    if trace.seed.iter().any(|&v| v >= n) {
        return Err(Error::Certification("seed vertex out of range".into()));
    }
    let mut s = VertexSet::from_vertices(n, trace.seed.iter().copied());
    if s.len() != trace.seed.len() {
        return Err(Error::Certification("seed repeats a vertex".into()));
    }
    if !is_kp_free(g, &s, p) {
        return Err(Error::Certification(
            "seed class contains a forbidden clique".into(),
        ));
    }
    let mut complement = s.complement();
    let s_size0 = s.len();
    let kp1_0 = count_t(g, &s, p - 1);
    let mut epoch_ys: Vec<usize> = Vec::new();
    let mut prev: Option<&TraceStep> = None;

    for (i, step) in trace.steps.iter().enumerate() {
        if step.index != i {
            return Err(cert(i, "index out of sequence"));
        }
        match prev {
            None => {
                if step.epoch != 0 {
                    return Err(cert(i, "first step must open epoch 0"));
                }
            }
            Some(pr) => {
                let expected = if pr.kind == StepKind::Descent {
                    pr.epoch + 1
                } else {
                    pr.epoch
                };
                if step.epoch != expected {
                    return Err(cert(i, "epoch numbering broken"));
                }
                if step.epoch != pr.epoch {
                    epoch_ys.clear();
                }
            }
        }
        let walk_fields = step.b_source.is_some() && step.b_set.is_some() && step.k1.is_some();
        let descent_fields = step.b_source.is_none() && step.b_set.is_none() && step.k1.is_none();
        match step.kind {
            StepKind::Walk if !walk_fields => {
                return Err(cert(i, "walk step missing relay fields"))
            }
            StepKind::Descent if !descent_fields => {
                return Err(cert(i, "descent step carries relay fields"))
            }
            _ => {}
        }
        if step.v >= n || !complement.contains(step.v) {
            return Err(cert(i, "entering vertex is not outside the class"));
        }
        if let Some(pr) = prev {
            if pr.epoch == step.epoch {
                let relay = pr.b_set.as_ref().expect("same-epoch predecessor is a walk");
                if !relay.contains(&step.v) {
                    return Err(cert(i, "entering vertex not drawn from the relay set"));
                }
                if epoch_ys.contains(&step.v) {
                    return Err(cert(i, "entering vertex already left this epoch"));
                }
            }
        }
        if !valid_copy(g, &step.k0, q, step.v, &complement) {
            return Err(cert(i, "anchor is not a forbidden copy through the entering vertex"));
        }
        let a = match build_a(g, &s, step.v, p) {
            Ok(a) => a,
            Err(e) => return Err(cert(i, &format!("pivot rebuild failed: {e}"))),
        };
        if a.to_vec() != step.a_set {
            return Err(cert(i, "pivot set differs from the recorded one"));
        }
        if step.y == step.v || !step.a_set.contains(&step.y) || !s.contains(step.y) {
            return Err(cert(i, "leaving vertex is not a pivot member of the class"));
        }
        let mut s_new = s.clone();
        s_new.insert(step.v);
        s_new.remove(step.y);
        let mut comp_new = complement.clone();
        comp_new.remove(step.v);
        comp_new.insert(step.y);
        if s_new.len() != s_size0 || step.s_size != s_size0 {
            return Err(cert(i, "class size moved"));
        }
        if !is_kp_free(g, &s_new, p) {
            return Err(cert(i, "class contains a forbidden clique after the swap"));
        }
        if count_t(g, &s_new, p - 1) != kp1_0 || step.kp1_count != kp1_0 {
            return Err(cert(i, "small-clique count of the class moved"));
        }
        let c_y = clique_count_through_vertex_in(g, &comp_new, q, step.y);
        match step.kind {
            StepKind::Descent => {
                if c_y != 0 {
                    return Err(cert(i, "descent vertex still lies in a forbidden copy"));
                }
            }
            StepKind::Walk => {
                let b_src = step.b_source.expect("checked walk fields");
                if c_y as usize != b_src {
                    return Err(cert(i, "recorded copy count through the leaving vertex is wrong"));
                }
                let (c, b) = match build_b(g, &comp_new, step.y, q) {
                    Ok(out) => out,
                    Err(e) => return Err(cert(i, &format!("relay rebuild failed: {e}"))),
                };
                if c != b_src || Some(b.to_vec()) != step.b_set.clone().map(|mut v| {
                    v.sort_unstable();
                    v
                }) {
                    return Err(cert(i, "relay set differs from the recorded one"));
                }
                let k1 = step.k1.as_ref().expect("checked walk fields");
                if !valid_copy(g, k1, q, step.y, &comp_new) {
                    return Err(cert(
                        i,
                        "replacement is not a forbidden copy through the leaving vertex",
                    ));
                }
                let overlap = k1
                    .iter()
                    .filter(|&&u| u != step.v && step.k0.contains(&u))
                    .count();
                if overlap != 0 && overlap + 2 < q {
                    return Err(cert(i, "replacement overlaps the anchor by a forbidden amount"));
                }
            }
        }
        s = s_new;
        complement = comp_new;
        if count_t(g, &complement, q) != step.kq_count {
            return Err(cert(i, "recorded forbidden-copy count is wrong"));
        }
        if let Err(e) = check_copy_profile(g, &complement, q) {
            return Err(cert(i, &format!("copy-count profile broken: {e}")));
        }
        epoch_ys.push(step.y);
        prev = Some(step);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::exact_max_kpfree;

    /// The 12-vertex, 5-regular, triangle-rich solid with clique number 3:
    /// top apex 0, upper ring 1–5, lower ring 6–10, bottom apex 11.
    fn icosahedron() -> Graph {
        let mut edges = vec![];
        for u in 1..=5 {
            edges.push((0, u));
            edges.push((11, u + 5));
        }
        for i in 0..5 {
            let u = 1 + i;
            let un = 1 + (i + 1) % 5;
            let w = 6 + i;
            let wn = 6 + (i + 1) % 5;
            edges.push((u, un));
            edges.push((w, wn));
            edges.push((u, w));
            edges.push((u, wn));
        }
        Graph::from_edges(12, &edges).unwrap()
    }

    #[test]
    fn pivot_of_a_single_copy_is_the_whole_copy() {
        // Class {0,1} plus entering vertex 2 adjacent to both: one triangle.
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let s = VertexSet::from_vertices(3, [0, 1]);
        let a = build_a(&g, &s, 2, 3).unwrap();
        assert_eq!(a.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn pivot_of_two_sharing_copies_is_their_overlap() {
        // Triangles {0,1,3} and {0,2,3} through the entering vertex 3.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (3, 0), (3, 1), (3, 2)]).unwrap();
        let s = VertexSet::from_vertices(4, [0, 1, 2]);
        let a = build_a(&g, &s, 3, 3).unwrap();
        assert_eq!(a.to_vec(), vec![0, 3]);
    }

    #[test]
    fn pivot_of_disjoint_copies_breaches_the_contract() {
        // Triangles {0,1,4} and {2,3,4} share only the entering vertex 4.
        let g = Graph::from_edges(
            5,
            &[(0, 1), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)],
        )
        .unwrap();
        let s = VertexSet::from_vertices(5, [0, 1, 2, 3]);
        assert!(matches!(build_a(&g, &s, 4, 3), Err(Error::Contract(_))));
    }

    #[test]
    fn pivot_of_a_non_maximal_class_breaches_the_contract() {
        // Vertex 2 is isolated from the class: joining creates nothing.
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let s = VertexSet::from_vertices(3, [0, 1]);
        assert!(matches!(build_a(&g, &s, 2, 3), Err(Error::Contract(_))));
    }

    #[test]
    fn relay_shapes_follow_the_copy_count() {
        // One triangle through 0: relay = that triangle.
        let g1 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let all1 = VertexSet::full(3);
        let (c1, b1) = build_b(&g1, &all1, 0, 3).unwrap();
        assert_eq!((c1, b1.to_vec()), (1, vec![0, 1, 2]));

        // Triangles {0,1,2} and {0,1,3}: relay = shared edge {0,1}.
        let g2 = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        let all2 = VertexSet::full(4);
        let (c2, b2) = build_b(&g2, &all2, 0, 3).unwrap();
        assert_eq!((c2, b2.to_vec()), (2, vec![0, 1]));

        // A 4-clique component: exactly q = 3 copies through 0, relay = the
        // whole component.
        let g3 = crate::generators::gen_complete(4);
        let all3 = VertexSet::full(4);
        let (c3, b3) = build_b(&g3, &all3, 0, 3).unwrap();
        assert_eq!((c3, b3.to_vec()), (3, vec![0, 1, 2, 3]));
    }

    #[test]
    fn relay_rejects_profile_breaches() {
        // Fan: 0 adjacent to 1..4 with path edges — three triangles through
        // 0, but the component is larger than a 4-clique.
        let g = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)],
        )
        .unwrap();
        assert!(matches!(
            build_b(&g, &VertexSet::full(5), 0, 3),
            Err(Error::Contract(_))
        ));

        // Wheel: four triangles through 0 — outside every admissible shape.
        let g4 = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)],
        )
        .unwrap();
        assert!(matches!(
            build_b(&g4, &VertexSet::full(5), 0, 3),
            Err(Error::Contract(_))
        ));

        // No copy at all: the walk should have descended instead.
        let g0 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            build_b(&g0, &VertexSet::full(3), 0, 3),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn minimizer_filter_keeps_all_ties() {
        let g = crate::generators::gen_complete(4);
        let all = max_kpfree_all(&g, &VertexSet::full(4), 3, &SearchBudget::default(), 64)
            .unwrap();
        assert_eq!(all.size, 2);
        assert_eq!(all.count, 6);
        let (members, min_kp1) = min_kp1_filter(&g, &all.sets, 3).unwrap();
        // Every pair of K4 vertices induces exactly one edge.
        assert_eq!(min_kp1, 1);
        assert_eq!(members.len(), 6);
    }

    #[test]
    fn icosahedron_splits_exactly() {
        let g = icosahedron();
        assert!(g.is_connected());
        assert_eq!(g.max_degree(), 5);
        assert_eq!(g.m(), 30);
        assert_eq!(crate::cliques::clique_number(&g), 3);

        let budget = SearchBudget::default();
        let out = max_kpfree_partition(&g, 3, 3, &budget).unwrap();
        out.partition.certify(&g, &VertexSet::full(12)).unwrap();
        let exact = exact_max_kpfree(&g, &VertexSet::full(12), 3, &budget).unwrap();
        assert_eq!(out.max_size, exact.size);
        assert_eq!(out.partition.classes[0].len(), exact.size);
        assert_eq!(out.optima_count, exact.optima_count);
        assert!(is_kp_free(&g, &out.partition.classes[1], 3));

        let trace = out.trace.as_ref().unwrap();
        verify_trace(&g, trace).unwrap();
    }

    /// `blocks` disjoint K₄ whose top vertices are pairwise adjacent (a
    /// spine), with `pendant` hanging one extra vertex off the first spine
    /// vertex. The lexicographically first minimizer keeps every non-spine
    /// vertex, so its complement is exactly the spine clique — a seed the
    /// walk must repair.
    fn spined_blocks(blocks: usize, pendant: bool) -> Graph {
        let base = 3 * blocks;
        let mut edges = vec![];
        for i in 0..blocks {
            let members = [3 * i, 3 * i + 1, 3 * i + 2, base + i];
            for a in 0..4 {
                for b in a + 1..4 {
                    edges.push((members[a], members[b]));
                }
            }
        }
        for i in 0..blocks {
            for j in i + 1..blocks {
                edges.push((base + i, base + j));
            }
        }
        let mut n = base + blocks;
        if pendant {
            edges.push((base, n));
            n += 1;
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn spine_seed_forces_a_descent() {
        // Three blocks, spine triangle, pendant: Δ = 6, ω = 4, orders (4, 3).
        let g = spined_blocks(3, true);
        assert_eq!(g.max_degree(), 6);
        assert_eq!(crate::cliques::clique_number(&g), 4);
        let out = max_kpfree_partition(&g, 4, 3, &SearchBudget::default()).unwrap();
        assert_eq!(out.route, SeedRoute::Exchange);
        assert_eq!(out.max_size, 10);
        let trace = out.trace.as_ref().unwrap();
        assert!(!trace.steps.is_empty());
        assert_eq!(count_t(&g, &out.partition.classes[1], 3), 0);
        verify_trace(&g, trace).unwrap();
    }

    #[test]
    fn spine_clique_needs_two_descents() {
        // Four blocks, spine K₄, no pendant: Δ = 6 already. The seed's
        // complement is the whole spine — a (q+1)-clique of triangles — so
        // one swap cannot clean it and the walk needs a second epoch.
        let g = spined_blocks(4, false);
        assert_eq!(g.max_degree(), 6);
        let out = max_kpfree_partition(&g, 4, 3, &SearchBudget::default()).unwrap();
        assert_eq!(out.route, SeedRoute::Exchange);
        assert_eq!(out.epochs, 2);
        let trace = out.trace.as_ref().unwrap();
        assert_eq!(trace.steps.len(), 2);
        assert!(trace.steps.iter().all(|s| s.kind == StepKind::Descent));
        assert!(trace.steps[0].kq_count > trace.steps[1].kq_count);
        verify_trace(&g, trace).unwrap();

        // Relabeling a descent as a walk step must fail the replay: the
        // relay fields a walk step carries are missing.
        let mut bad = trace.clone();
        bad.steps[0].kind = StepKind::Walk;
        assert!(matches!(
            verify_trace(&g, &bad),
            Err(Error::Certification(_))
        ));
    }

    #[test]
    fn tampered_traces_fail_verification() {
        let g = icosahedron();
        let out = max_kpfree_partition(&g, 3, 3, &SearchBudget::default()).unwrap();
        let trace = out.trace.unwrap();
        // A wrong recorded count must be caught on any trace with steps; a
        // corrupted seed must be caught even without steps.
        if !trace.steps.is_empty() {
            let mut bad = trace.clone();
            bad.steps[0].kq_count += 1;
            assert!(matches!(verify_trace(&g, &bad), Err(Error::Certification(_))));
        }
        let mut bad_seed = trace.clone();
        bad_seed.seed.push(100);
        assert!(matches!(
            verify_trace(&g, &bad_seed),
            Err(Error::Certification(_))
        ));
    }

    #[test]
    fn hypothesis_violations_are_input_errors() {
        let budget = SearchBudget::default();
        // Wrong clique number: the strong product of a 5-cycle and an edge
        // has clique number 4, not 3.
        let prod = crate::generators::gen_strong_product(
            &crate::generators::gen_cycle(5).unwrap(),
            &crate::generators::gen_complete(2),
        );
        assert!(matches!(
            max_kpfree_partition(&prod, 3, 3, &budget),
            Err(Error::Input(_))
        ));
        // Orders not summing to max degree + 1.
        let g = icosahedron();
        assert!(matches!(
            max_kpfree_partition(&g, 3, 4, &budget),
            Err(Error::Input(_))
        ));
        // Order below 3.
        assert!(matches!(
            max_kpfree_partition(&prod, 4, 2, &budget),
            Err(Error::Input(_))
        ));
        // Disconnected input.
        let two = Graph::from_edges(
            12,
            &[
                (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
                (6, 7),
            ],
        )
        .unwrap();
        assert!(matches!(
            max_kpfree_partition(&two, 3, 3, &budget),
            Err(Error::Input(_))
        ));
    }
}
