//! Naive reference implementations used to cross-check the optimized
//! kernels. Everything here enumerates bitmask subsets directly, so it is
//! only usable for small n, which is exactly the point: the code is short
//! enough to audit by eye.
#![allow(dead_code)] // each test target compiles its own copy

use kpfree::graph::Graph;
use kpfree::set::VertexSet;

/// All pairs inside `mask` adjacent?
fn mask_is_clique(g: &Graph, mask: u32) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut others = rest;
        while others != 0 {
            let v = others.trailing_zeros() as usize;
            others &= others - 1;
            if !g.neighbors(u).contains(v) {
                return false;
            }
        }
    }
    true
}

/// Number of t-cliques, by checking every subset of size t.
pub fn naive_count_cliques(g: &Graph, t: usize) -> u64 {
    assert!(g.n() <= 20, "naive counter is exponential");
    let mut count = 0;
    for mask in 0u32..(1 << g.n()) {
        if mask.count_ones() as usize == t && mask_is_clique(g, mask) {
            count += 1;
        }
    }
    count
}

/// Does `mask` contain a p-clique? Checks every p-subset of `mask`.
fn mask_has_kp(g: &Graph, mask: u32, p: usize) -> bool {
    if (mask.count_ones() as usize) < p {
        return false;
    }
    // Walk submasks of `mask` with exactly p bits.
    let mut sub = mask;
    loop {
        if sub.count_ones() as usize == p && mask_is_clique(g, sub) {
            return true;
        }
        if sub == 0 {
            return false;
        }
        sub = (sub - 1) & mask;
    }
}

/// Maximum size of a K_p-free subset together with the number of subsets
/// attaining it, by full enumeration.
pub fn naive_max_kpfree(g: &Graph, p: usize) -> (usize, u64) {
    assert!(g.n() <= 16, "naive maximizer is doubly exponential");
    let mut best = 0usize;
    let mut count = 0u64;
    for mask in 0u32..(1 << g.n()) {
        let size = mask.count_ones() as usize;
        if size < best || mask_has_kp(g, mask, p) {
            continue;
        }
        if size > best {
            best = size;
            count = 1;
        } else {
            count += 1;
        }
    }
    (best, count)
}

/// Does some assignment of the vertices into |orders| classes make class i
/// K_{orders[i]}-free? Tries every assignment.
pub fn naive_exists_partition(g: &Graph, orders: &[usize]) -> bool {
    let n = g.n();
    let k = orders.len();
    assert!((k as u64).pow(n as u32) <= 1 << 22, "assignment space too large");
    let mut assignment = vec![0usize; n];
    'outer: loop {
        let mut masks = vec![0u32; k];
        for (v, &c) in assignment.iter().enumerate() {
            masks[c] |= 1 << v;
        }
        if masks
            .iter()
            .zip(orders)
            .all(|(&m, &p)| !mask_has_kp(g, m, p))
        {
            return true;
        }
        for slot in assignment.iter_mut() {
            *slot += 1;
            if *slot < k {
                continue 'outer;
            }
            *slot = 0;
        }
        return false;
    }
}

/// Sorted vertex list of a set, for readable assertion failures.
pub fn members(s: &VertexSet) -> Vec<usize> {
    s.to_vec()
}

/// `blocks` disjoint K_ω whose top vertices are pairwise adjacent (a spine
/// clique), plus optional pendants: one on the first spine vertex when the
/// spine is smaller than ω (lifting Δ to ω + spine − 1), and `extra` on the
/// lowest non-spine vertices. The lexicographically first minimum
/// K_ω-free-set minimizer keeps every non-spine vertex, so its complement
/// is exactly the spine clique — a seed the exchange walk must repair.
pub fn spined_blocks(omega: usize, blocks: usize, extra: usize) -> Graph {
    let base = blocks * (omega - 1);
    let mut edges = Vec::new();
    for i in 0..blocks {
        let lo = i * (omega - 1);
        let members: Vec<usize> = (lo..lo + omega - 1).chain([base + i]).collect();
        for a in 0..members.len() {
            for b in a + 1..members.len() {
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
    if blocks < omega {
        edges.push((base, n)); // lift the first spine vertex to Δ
        n += 1;
    }
    for e in 0..extra {
        edges.push((e, n));
        n += 1;
    }
    Graph::from_edges(n, &edges).unwrap()
}
