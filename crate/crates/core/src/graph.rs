//! Simple undirected graphs with dense 0-based vertex ids.
//!
//! Adjacency is stored twice: as bitsets (for the clique kernels, which live
//! on word-parallel intersections) and as sorted neighbour lists (for cheap
//! ordered iteration). Both views are built once and never mutated; algorithms
//! that shrink a graph either track an active [`VertexSet`] or take an
//! explicit induced subgraph.

use crate::error::{Error, Result};
use crate::set::VertexSet;

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
    lists: Vec<Vec<usize>>,
}

/// Summary degree data for a graph or induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    /// Vertices attaining the maximum degree, ascending.
    pub max_vertices: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list over vertices `0..n`.
    ///
    /// Rejects self-loops, duplicate edges (in either orientation), and
    /// endpoints outside the vertex range.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj: Vec<VertexSet> = (0..n).map(|_| VertexSet::new(n)).collect();
        let mut m = 0usize;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            if adj[u].contains(v) {
                return Err(Error::Input(format!("duplicate edge ({u}, {v})")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            m += 1;
        }
        let lists = adj.iter().map(|s| s.to_vec()).collect();
        Ok(Graph { n, m, adj, lists })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Neighbourhood of `v` as a bitset.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// Neighbours of `v` in ascending order.
    #[inline]
    pub fn neighbor_list(&self, v: usize) -> &[usize] {
        &self.lists[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.lists[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.lists[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree_stats(&self) -> DegreeStats {
        self.degree_stats_in(&VertexSet::full(self.n))
    }

    /// Degree statistics of the subgraph induced by `active`.
    ///
    /// An empty active set yields `min = max = 0` with no witnesses.
    pub fn degree_stats_in(&self, active: &VertexSet) -> DegreeStats {
        let mut min = usize::MAX;
        let mut max = 0usize;
        let mut max_vertices = Vec::new();
        for v in active.iter() {
            let d = self.adj[v].intersection_len(active);
            if d < min {
                min = d;
            }
            if d > max {
                max = d;
                max_vertices.clear();
            }
            if d == max {
                max_vertices.push(v);
            }
        }
        if min == usize::MAX {
            return DegreeStats {
                min: 0,
                max: 0,
                max_vertices: Vec::new(),
            };
        }
        DegreeStats { min, max, max_vertices }
    }

    /// Maximum degree of the whole graph.
    pub fn max_degree(&self) -> usize {
        self.degree_stats().max
    }

    /// True if no two members of `s` are adjacent.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    /// `s` is independent and no vertex of `within` outside `s` can be added.
    pub fn is_maximal_independent_in(&self, s: &VertexSet, within: &VertexSet) -> bool {
        if !s.is_subset(within) || !self.is_independent(s) {
            return false;
        }
        within
            .difference(s)
            .iter()
            .all(|v| !self.adj[v].is_disjoint(s))
    }

    /// Connected components of the subgraph induced by `active`, each a
    /// bitset. Components are ordered by their smallest vertex.
    pub fn components_in(&self, active: &VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut out = Vec::new();
        for start in active.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![start];
            comp.insert(start);
            seen.insert(start);
            while let Some(v) = stack.pop() {
                for w in self.adj[v].intersection(active).iter() {
                    if !comp.contains(w) {
                        comp.insert(w);
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_in(&VertexSet::full(self.n))
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `active`, relabelled to `0..active.len()` in
    /// ascending order of the original ids. Returns the new graph together
    /// with `map` where `map[new_id] = old_id`.
    pub fn induced_subgraph(&self, active: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if active.universe() != self.n {
            return Err(Error::Input(format!(
                "active set universe {} does not match graph order {}",
                active.universe(),
                self.n
            )));
        }
        let map: Vec<usize> = active.to_vec();
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            back[old] = new;
        }
        let mut edges = Vec::new();
        for (new_u, &old_u) in map.iter().enumerate() {
            for &old_v in &self.lists[old_u] {
                if old_v > old_u && active.contains(old_v) {
                    edges.push((new_u, back[old_v]));
                }
            }
        }
        let g = Graph::from_edges(map.len(), &edges)?;
        Ok((g, map))
    }
}
