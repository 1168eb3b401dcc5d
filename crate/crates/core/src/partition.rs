//! Partition shapes and certified partitions.
//!
//! A partition request is a non-increasing list of clique orders
//! `p_1 ≥ … ≥ p_k ≥ 2`; class `i` of a valid result induces no complete
//! subgraph on `p_i` vertices. A shape fits a graph of maximum degree Δ when
//! `Σ p_i = Δ − 1 + k` (proper (Δ−1)-coloring is the all-twos case).
//! Every partition the library hands out is re-certified from scratch by
//! [`Partition::certify`] before it crosses an API boundary.

use crate::cliques::is_kp_free;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

/// Non-increasing clique orders `p_1 ≥ … ≥ p_k ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    orders: Vec<usize>,
}

impl PartitionSpec {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Input("partition shape needs at least one class".into()));
        }
        if let Some(&bad) = orders.iter().find(|&&p| p < 2) {
            return Err(Error::Input(format!(
                "class orders must be at least 2, found {bad}"
            )));
        }
        if orders.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Input(format!(
                "class orders must be non-increasing, got {orders:?}"
            )));
        }
        Ok(PartitionSpec { orders })
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn k(&self) -> usize {
        self.orders.len()
    }

    pub fn sum(&self) -> usize {
        self.orders.iter().sum()
    }

    /// The maximum degree this shape is sized for: Δ with `Σ p_i = Δ − 1 + k`.
    pub fn required_max_degree(&self) -> usize {
        self.sum() + 1 - self.k()
    }

    /// Checks `Σ p_i = Δ − 1 + k` against a concrete maximum degree.
    pub fn validate_for_max_degree(&self, delta: usize) -> Result<()> {
        let need = delta + self.k() - 1;
        if self.sum() != need {
            return Err(Error::Input(format!(
                "shape {:?} sums to {} but maximum degree {} with {} classes requires {}",
                self.orders,
                self.sum(),
                delta,
                self.k(),
                need
            )));
        }
        Ok(())
    }
}

/// A vertex partition with per-class clique orders.
///
/// `classes[i]` must induce no `K_{orders[i]}`; `orders` is parallel to
/// `classes` and need not be sorted (callers may permute classes).
#[derive(Clone, Debug)]
pub struct Partition {
    pub classes: Vec<VertexSet>,
    pub orders: Vec<usize>,
    /// True when any class was produced by exact-search fallback rather than
    /// the constructive procedure.
    pub fallback_used: bool,
}

impl Partition {
    /// Re-verifies the partition from scratch: classes are pairwise
    /// disjoint, cover exactly `within`, and class `i` induces no
    /// `K_{orders[i]}`.
    pub fn certify(&self, g: &Graph, within: &VertexSet) -> Result<()> {
        if self.classes.len() != self.orders.len() {
            return Err(Error::Certification(format!(
                "{} classes but {} orders",
                self.classes.len(),
                self.orders.len()
            )));
        }
        if self.classes.is_empty() {
            return Err(Error::Certification("partition has no classes".into()));
        }
        let mut seen = VertexSet::new(g.n());
        for (i, class) in self.classes.iter().enumerate() {
            if !seen.is_disjoint(class) {
                return Err(Error::Certification(format!(
                    "class {i} overlaps an earlier class"
                )));
            }
            seen.union_in_place(class);
        }
        if seen != *within {
            return Err(Error::Certification(
                "classes do not cover exactly the requested vertex set".into(),
            ));
        }
        for (i, (class, &p)) in self.classes.iter().zip(&self.orders).enumerate() {
            if !is_kp_free(g, class, p) {
                return Err(Error::Certification(format!(
                    "class {i} contains a complete subgraph on {p} vertices"
                )));
            }
        }
        Ok(())
    }
}
