//! Dense undirected simple graphs with bit-parallel adjacency rows.
//!
//! Every vertex stores its neighborhood as a bitset row, so adjacency
//! queries are O(1) and the codegree of a set — the number of vertices
//! joined to every member — is a word-wise intersection of rows followed
//! by a popcount. Codegree enumeration over all pairs and triples
//! dominates the runtime of everything built on top, which is why the
//! representation is dense rather than adjacency-list based.

use thiserror::Error;

use crate::ratio::{rat_u, Rat};

/// Hard cap on the vertex count; keeps a full adjacency matrix under ~50 MB.
pub const MAX_VERTICES: usize = 20_000;

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count must be between 1 and {MAX_VERTICES}, got {0}")]
    InvalidOrder(usize),
    #[error("self-loop ({0}, {0}) is not allowed")]
    SelfLoop(u32),
    #[error("edge ({0}, {1}) is out of range for {2} vertices")]
    EdgeOutOfRange(u32, u32, usize),
    #[error("vertex {0} is out of range for universe {1}")]
    VertexOutOfRange(u32, usize),
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("vertex sets must be disjoint")]
    OverlappingSets,
}

/// A subset of the vertices `0..universe` of some graph, stored as a bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet { universe, words: vec![0; words_for(universe)], len: 0 }
    }

    /// The set `{0, .., universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut words = vec![!0u64; words_for(universe)];
        trim_tail(&mut words, universe);
        VertexSet { universe, words, len: universe }
    }

    pub fn from_members<I: IntoIterator<Item = u32>>(
        universe: usize,
        members: I,
    ) -> Result<Self, GraphError> {
        let mut set = VertexSet::empty(universe);
        for v in members {
            if (v as usize) >= universe {
                return Err(GraphError::VertexOutOfRange(v, universe));
            }
            set.insert(v);
        }
        Ok(set)
    }

    /// The contiguous range `lo..hi` as a set.
    pub fn from_range(universe: usize, lo: u32, hi: u32) -> Result<Self, GraphError> {
        Self::from_members(universe, lo..hi)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: u32) -> bool {
        let v = v as usize;
        v < self.universe && self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    /// Inserts `v`; returns whether it was newly added.
    pub fn insert(&mut self, v: u32) -> bool {
        let vi = v as usize;
        assert!(vi < self.universe, "vertex {v} out of range for universe {}", self.universe);
        let word = &mut self.words[vi / WORD_BITS];
        let mask = 1u64 << (vi % WORD_BITS);
        if *word & mask == 0 {
            *word |= mask;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = (wi * WORD_BITS) as u32;
            BitIter(w).map(move |b| base + b)
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.universe, other.universe, "mismatched universes");
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet { universe: self.universe, words, len }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.universe, other.universe, "mismatched universes");
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet { universe: self.universe, words, len }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.universe, other.universe, "mismatched universes");
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet { universe: self.universe, words, len }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

fn trim_tail(words: &mut [u64], n: usize) {
    let rem = n % WORD_BITS;
    if rem != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << rem) - 1;
        }
    }
}

/// Dense undirected simple graph on vertices `0..n`.
///
/// Immutable once built; all read operations take `&self` and are safe to
/// call concurrently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(GraphError::InvalidOrder(n));
        }
        let words = words_for(n);
        Ok(Graph { n, words, bits: vec![0; n * words] })
    }

    /// Builds a graph from an unordered edge list. Duplicate pairs collapse
    /// to a single edge; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge_checked(&mut self, u: u32, v: u32) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if (u as usize) >= self.n || (v as usize) >= self.n {
            return Err(GraphError::EdgeOutOfRange(u, v, self.n));
        }
        self.set_edge(u as usize, v as usize);
        Ok(())
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.words + v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
        self.bits[v * self.words + u / WORD_BITS] |= 1u64 << (u % WORD_BITS);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        let total: u64 = self.bits.iter().map(|w| w.count_ones() as u64).sum();
        total / 2
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (u, v) = (u as usize, v as usize);
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.bits[u * self.words + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    /// `u ~ v` in the result iff `u != v` and `u !~ v` here.
    pub fn complement(&self) -> Graph {
        let mut g = Graph { n: self.n, words: self.words, bits: vec![0; self.bits.len()] };
        for u in 0..self.n {
            let src = self.row(u);
            let dst = &mut g.bits[u * g.words..(u + 1) * g.words];
            for (d, s) in dst.iter_mut().zip(src) {
                *d = !s;
            }
            // clear the diagonal bit and the tail beyond n
            dst[u / WORD_BITS] &= !(1u64 << (u % WORD_BITS));
            trim_tail(dst, self.n);
        }
        g
    }

    /// Number of neighbors of `u`.
    pub fn degree(&self, u: u32) -> u64 {
        let u = u as usize;
        assert!(u < self.n, "vertex out of range");
        self.row(u).iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Number of neighbors of `u` inside `y`.
    pub fn degree_in(&self, u: u32, y: &VertexSet) -> u64 {
        let u = u as usize;
        assert!(u < self.n, "vertex out of range");
        assert_eq!(y.universe(), self.n, "set universe mismatch");
        self.row(u).iter().zip(y.words()).map(|(w, m)| (w & m).count_ones() as u64).sum()
    }

    /// Number of vertices joined to every vertex of `r`.
    ///
    /// `r` must be nonempty: the vacuous value for an empty set would be `n`
    /// (every vertex is joined to all of nothing), but accepting it silently
    /// invites misuse, so the boundary rejects it.
    pub fn codegree(&self, r: &VertexSet) -> u64 {
        self.codegree_in(r, &VertexSet::full(self.n))
    }

    /// Number of vertices in `y` joined to every vertex of `r`.
    pub fn codegree_in(&self, r: &VertexSet, y: &VertexSet) -> u64 {
        assert!(!r.is_empty(), "codegree of the empty set is rejected at the boundary");
        assert_eq!(r.universe(), self.n, "set universe mismatch");
        assert_eq!(y.universe(), self.n, "set universe mismatch");
        let mut acc: Vec<u64> = y.words().to_vec();
        for v in r.iter() {
            for (a, w) in acc.iter_mut().zip(self.row(v as usize)) {
                *a &= w;
            }
        }
        acc.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Codegree of the pair `{u, v}`: vertices adjacent to both.
    pub fn codegree_pair(&self, u: u32, v: u32) -> u64 {
        let (u, v) = (u as usize, v as usize);
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.row(u).iter().zip(self.row(v)).map(|(a, b)| (a & b).count_ones() as u64).sum()
    }

    pub(crate) fn codegree_pair_in_words(&self, u: usize, v: usize, mask: &[u64]) -> u64 {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .zip(mask)
            .map(|((a, b), m)| (a & b & m).count_ones() as u64)
            .sum()
    }

    fn check_pair(&self, a: &VertexSet, b: &VertexSet) -> Result<(), GraphError> {
        assert_eq!(a.universe(), self.n, "set universe mismatch");
        assert_eq!(b.universe(), self.n, "set universe mismatch");
        if a.is_empty() || b.is_empty() {
            return Err(GraphError::EmptySet);
        }
        if !a.is_disjoint(b) {
            return Err(GraphError::OverlappingSets);
        }
        Ok(())
    }

    /// Number of edges with one end in `a` and the other in `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> Result<u64, GraphError> {
        self.check_pair(a, b)?;
        Ok(a.iter().map(|u| self.degree_in(u, b)).sum())
    }

    /// `e(a, b) / (|a| * |b|)` as an exact rational in `[0, 1]`.
    pub fn density(&self, a: &VertexSet, b: &VertexSet) -> Result<Rat, GraphError> {
        let e = self.edges_between(a, b)?;
        Ok(rat_u(e) / rat_u((a.len() * b.len()) as u64))
    }

    /// Number of edges with both ends in `a`.
    pub fn induced_edge_count(&self, a: &VertexSet) -> u64 {
        assert_eq!(a.universe(), self.n, "set universe mismatch");
        let total: u64 = a.iter().map(|u| self.degree_in(u, a)).sum();
        total / 2
    }
}
