//! Fixed-universe vertex sets backed by 64-bit words.
//!
//! A [`VertexSet`] always knows the size of the universe it lives in, so set
//! complement is well defined and two sets from different graphs cannot be
//! mixed up silently (operations on mismatched universes panic, since that is
//! always a programming error rather than bad user input).

use std::cmp::Ordering;
use std::fmt;

/// A subset of `{0, 1, …, universe-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(universe: usize) -> usize {
    universe.div_ceil(64)
}

impl VertexSet {
    /// The empty subset of a universe with `universe` elements.
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0u64; word_count(universe)],
        }
    }

    /// The full set `{0, …, universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut s = VertexSet {
            universe,
            words: vec![!0u64; word_count(universe)],
        };
        s.trim_tail();
        s
    }

    /// The singleton `{v}`.
    pub fn singleton(universe: usize, v: usize) -> Self {
        let mut s = VertexSet::new(universe);
        s.insert(v);
        s
    }

    /// Builds a set from an iterator of vertex ids.
    ///
    /// Panics if any id is outside the universe.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(universe: usize, vertices: I) -> Self {
        let mut s = VertexSet::new(universe);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.universe);
        self.words[v >> 6] & (1u64 << (v & 63)) != 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    /// Number of members.
    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((i << 6) + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterates members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = i << 6;
            std::iter::successors((w != 0).then_some(w), |&t| {
                let rest = t & (t - 1); // clear the lowest set bit
                (rest != 0).then_some(rest)
            })
            .map(move |t| base + t.trailing_zeros() as usize)
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_universe(&self, other: &VertexSet) {
        assert_eq!(
            self.universe, other.universe,
            "vertex sets from different universes"
        );
    }

    fn trim_tail(&mut self) {
        let rem = self.universe & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn union_in_place(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_in_place(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract_in_place(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_in_place(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_in_place(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.subtract_in_place(other);
        s
    }

    /// Complement within the universe.
    pub fn complement(&self) -> VertexSet {
        let mut s = VertexSet {
            universe: self.universe,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim_tail();
        s
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// `|self ∩ other|` without materialising the intersection.
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Removes every member `<= v`. Used by ascending clique enumeration.
    pub fn clear_through(&mut self, v: usize) {
        debug_assert!(v < self.universe);
        let wi = v >> 6;
        for w in &mut self.words[..wi] {
            *w = 0;
        }
        let rem = v & 63;
        if rem == 63 {
            self.words[wi] = 0;
        } else {
            self.words[wi] &= !((1u64 << (rem + 1)) - 1);
        }
    }
}

impl Ord for VertexSet {
    /// Lexicographic order on the ascending member sequence, so that
    /// "smallest" ties agree with comparing sorted vertex lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
