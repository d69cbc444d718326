//! Simple undirected graphs on `{0, .., n-1}` with bitset adjacency.
//!
//! Adjacency is stored as one row of `u64` words per vertex so that the
//! induced-clique test and clique enumeration run on word operations; these
//! are the inner loops of the solver and of every Monte Carlo trial.

use crate::combin::choose2;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    edge_count: u64,
}

impl Graph {
    /// Empty graph on `n` vertices.
    pub fn new(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n.max(1) * words],
            edge_count: 0,
        }
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting out-of-range endpoints,
    /// self-loops and duplicate edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::new(n);
        for (idx, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::parameter(format!(
                    "edge {idx} [{u},{v}] out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::parameter(format!("edge {idx} [{u},{v}] is a self-loop")));
            }
            if g.has_edge(u, v) {
                return Err(Error::parameter(format!("duplicate edge [{u},{v}] at index {idx}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// Number of vertex pairs, `C(n, 2)`.
    pub fn pair_count(&self) -> u64 {
        choose2(self.n as u64)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "invalid edge ({u},{v})");
        if !self.has_edge(u, v) {
            self.adj[u * self.words + v / 64] |= 1 << (v % 64);
            self.adj[v * self.words + u / 64] |= 1 << (u % 64);
            self.edge_count += 1;
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "invalid edge ({u},{v})");
        if self.has_edge(u, v) {
            self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
            self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
            self.edge_count -= 1;
        }
    }

    /// Neighbor bitset of `v` as a word slice.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v))
    }

    /// Edges in lexicographic order (`u < v`).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count as usize);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Number of neighbors of `v` inside the vertex set `mask`.
    pub fn degree_in(&self, v: usize, mask: &[u64]) -> usize {
        self.row(v)
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// True when the given vertices are pairwise adjacent.
    pub fn induces_clique(&self, verts: &[usize]) -> bool {
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of edges of this graph inside the vertex set `verts`.
    pub fn edges_within(&self, verts: &[usize]) -> u64 {
        let mut count = 0;
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                if self.has_edge(u, v) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Number of edges with one endpoint in `xs` and the other in `ys`
    /// (the sets are expected to be disjoint).
    pub fn edges_between(&self, xs: &[usize], ys: &[usize]) -> u64 {
        let ymask = make_mask(self.n, ys.iter().copied());
        xs.iter()
            .map(|&x| self.degree_in(x, &ymask) as u64)
            .sum()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.edge_count, self.edges())
    }
}

/// Builds a vertex bitset for an `n`-vertex graph.
pub fn make_mask(n: usize, verts: impl Iterator<Item = usize>) -> Vec<u64> {
    let words = n.div_ceil(64).max(1);
    let mut mask = vec![0u64; words];
    for v in verts {
        debug_assert!(v < n);
        mask[v / 64] |= 1 << (v % 64);
    }
    mask
}

pub fn mask_popcount(mask: &[u64]) -> usize {
    mask.iter().map(|w| w.count_ones() as usize).sum()
}

/// Iterates set bits of a word slice in ascending order.
pub struct BitIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> BitIter<'a> {
        BitIter {
            words,
            word_idx: 0,
            current: if words.is_empty() { 0 } else { words[0] },
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * 64 + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_basics() {
        let mut g = Graph::new(5);
        g.add_edge(0, 3);
        g.add_edge(3, 4);
        assert!(g.has_edge(3, 0));
        assert!(!g.has_edge(0, 4));
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(3), 2);
        g.add_edge(0, 3); // idempotent
        assert_eq!(g.edge_count(), 2);
        g.remove_edge(0, 3);
        assert_eq!(g.edge_count(), 1);
        assert!(!g.has_edge(0, 3));
    }

    #[test]
    fn complete_graph_edge_count() {
        for n in 0..10 {
            let g = Graph::complete(n);
            assert_eq!(g.edge_count(), choose2(n as u64));
        }
    }

    #[test]
    fn from_edges_validation() {
        assert!(Graph::from_edges(3, &[(0, 1), (1, 2)]).is_ok());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn works_past_64_vertices() {
        let mut g = Graph::new(130);
        g.add_edge(0, 129);
        g.add_edge(64, 65);
        assert!(g.has_edge(129, 0));
        assert!(g.has_edge(65, 64));
        assert_eq!(g.degree(64), 1);
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![129]);
        assert_eq!(g.edges(), vec![(0, 129), (64, 65)]);
    }

    #[test]
    fn degree_in_and_masks() {
        let g = Graph::complete(6);
        let mask = make_mask(6, [1, 2, 5].into_iter());
        assert_eq!(mask_popcount(&mask), 3);
        assert_eq!(g.degree_in(0, &mask), 3);
        assert_eq!(g.degree_in(1, &mask), 2);
    }

    #[test]
    fn edges_between_counts() {
        // K_{2,3} as bipartite graph.
        let mut g = Graph::new(5);
        for u in 0..2 {
            for v in 2..5 {
                g.add_edge(u, v);
            }
        }
        assert_eq!(g.edges_between(&[0, 1], &[2, 3, 4]), 6);
        assert_eq!(g.edges_within(&[0, 1]), 0);
        assert!(g.induces_clique(&[0, 2]));
        assert!(!g.induces_clique(&[0, 1, 2]));
    }
}
