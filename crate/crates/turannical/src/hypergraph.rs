//! r-uniform restriction hypergraphs on `{0, .., n-1}`.

use crate::combin::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// An r-uniform hypergraph. Hyperedges are stored sorted (each edge
/// ascending, the edge list lexicographic) and deduplicated, which makes
/// detection witnesses and solver runs deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl UniformHypergraph {
    pub fn empty(r: usize, n: usize) -> Result<UniformHypergraph> {
        if r < 2 {
            return Err(Error::parameter(format!("uniformity r={r} must be at least 2")));
        }
        Ok(UniformHypergraph {
            r,
            n,
            edges: Vec::new(),
        })
    }

    /// Validates, sorts and stores an edge list. Rejects edges of the wrong
    /// size, out-of-range or repeated vertices, and duplicate edges.
    pub fn new(r: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<UniformHypergraph> {
        let mut hg = UniformHypergraph::empty(r, n)?;
        let mut sorted: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
        for (idx, mut e) in edges.into_iter().enumerate() {
            if e.len() != r {
                return Err(Error::parameter(format!(
                    "edge {idx} has {} vertices, expected r={r}",
                    e.len()
                )));
            }
            e.sort_unstable();
            for w in e.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::parameter(format!(
                        "edge {idx} {e:?} repeats vertex {}",
                        w[0]
                    )));
                }
            }
            if *e.last().unwrap() >= n {
                return Err(Error::parameter(format!(
                    "edge {idx} {e:?} out of range for n={n}"
                )));
            }
            sorted.push(e);
        }
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::parameter(format!("duplicate edge {:?}", w[0])));
            }
        }
        hg.edges = sorted;
        Ok(hg)
    }

    /// Complete r-uniform hypergraph on `n` vertices.
    pub fn complete(r: usize, n: usize) -> Result<UniformHypergraph> {
        let mut hg = UniformHypergraph::empty(r, n)?;
        let count = binomial(n as u64, r as u64)?;
        hg.edges = Vec::with_capacity(count as usize);
        for_each_combination(n, r, |c| hg.edges.push(c.to_vec()));
        Ok(hg)
    }

    /// Used by samplers that produce edges already sorted and distinct.
    pub(crate) fn from_sorted_edges(r: usize, n: usize, edges: Vec<Vec<usize>>) -> UniformHypergraph {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == r));
        UniformHypergraph { r, n, edges }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        self.edges.binary_search_by(|e| e.as_slice().cmp(edge)).is_ok()
    }

    /// Adds a hyperedge (used by monotonicity tests); keeps the list sorted.
    pub fn insert_edge(&mut self, mut edge: Vec<usize>) -> Result<()> {
        edge.sort_unstable();
        if edge.len() != self.r {
            return Err(Error::parameter(format!(
                "edge {edge:?} has wrong size for r={}",
                self.r
            )));
        }
        if edge.windows(2).any(|w| w[0] == w[1]) || *edge.last().unwrap() >= self.n {
            return Err(Error::parameter(format!("invalid edge {edge:?}")));
        }
        if let Err(pos) = self.edges.binary_search(&edge) {
            self.edges.insert(pos, edge);
        }
        Ok(())
    }

    /// Link hypergraph of a vertex set `x` with `|x| < r`: the
    /// `(r-|x|)`-uniform hypergraph whose edges are the completions of `x`
    /// to a hyperedge.
    pub fn link(&self, x: &[usize]) -> Result<UniformHypergraph> {
        let s = x.len();
        if s >= self.r {
            return Err(Error::parameter(format!(
                "link set of size {s} must be smaller than r={}",
                self.r
            )));
        }
        let mut xs = x.to_vec();
        xs.sort_unstable();
        if xs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::parameter(format!("link set {x:?} repeats a vertex")));
        }
        if xs.last().is_some_and(|&v| v >= self.n) {
            return Err(Error::parameter(format!(
                "link set {x:?} out of range for n={}",
                self.n
            )));
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        for e in &self.edges {
            if xs.iter().all(|v| e.binary_search(v).is_ok()) {
                out.push(e.iter().copied().filter(|v| !xs.contains(v)).collect());
            }
        }
        out.sort_unstable();
        // Link uniformity can be 1; bypass the r >= 2 constructor check.
        Ok(UniformHypergraph {
            r: self.r - s,
            n: self.n,
            edges: out,
        })
    }

    /// Set of vertices covered by the hyperedges of this hypergraph.
    pub fn covered_vertices(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for e in &self.edges {
            for &v in e {
                seen[v] = true;
            }
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }
}

/// Number of hyperedges containing both `u` and `v` with at least `i` graph
/// edges among the pairs inside the hyperedge, not counting the pair
/// `{u, v}` itself. Zero when `u == v`.
pub fn deg_i(f: &UniformHypergraph, g: &Graph, u: usize, v: usize, i: u64) -> u64 {
    if u == v || u >= f.n() || v >= f.n() {
        return 0;
    }
    let mut count = 0;
    for e in f.edges() {
        if e.binary_search(&u).is_err() || e.binary_search(&v).is_err() {
            continue;
        }
        let mut inside = g.edges_within(e);
        if g.has_edge(u, v) {
            inside -= 1;
        }
        if inside >= i {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_validates() {
        assert!(UniformHypergraph::new(3, 4, vec![vec![0, 1, 2]]).is_ok());
        assert!(UniformHypergraph::new(3, 4, vec![vec![0, 1]]).is_err());
        assert!(UniformHypergraph::new(3, 4, vec![vec![0, 1, 4]]).is_err());
        assert!(UniformHypergraph::new(3, 4, vec![vec![0, 1, 1]]).is_err());
        assert!(UniformHypergraph::new(3, 4, vec![vec![0, 1, 2], vec![2, 1, 0]]).is_err());
        assert!(UniformHypergraph::new(1, 4, vec![]).is_err());
    }

    #[test]
    fn edges_are_sorted() {
        let hg = UniformHypergraph::new(3, 5, vec![vec![4, 3, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(hg.edges(), &[vec![0, 1, 2], vec![2, 3, 4]]);
        assert!(hg.contains_edge(&[2, 3, 4]));
        assert!(!hg.contains_edge(&[0, 1, 3]));
    }

    #[test]
    fn complete_count() {
        let hg = UniformHypergraph::complete(3, 6).unwrap();
        assert_eq!(hg.edge_count(), 20);
        let hg = UniformHypergraph::complete(4, 3).unwrap();
        assert_eq!(hg.edge_count(), 0);
    }

    #[test]
    fn link_of_pair_in_complete() {
        let hg = UniformHypergraph::complete(3, 6).unwrap();
        let link = hg.link(&[1, 4]).unwrap();
        assert_eq!(link.r(), 1);
        assert_eq!(link.edge_count(), 4); // all n-2 singletons
    }

    #[test]
    fn link_from_definition() {
        let hg = UniformHypergraph::new(3, 5, vec![vec![1, 2, 3], vec![1, 2, 4]]).unwrap();
        let link = hg.link(&[1, 2]).unwrap();
        assert_eq!(link.edges(), &[vec![3], vec![4]]);
        let link = hg.link(&[4]).unwrap();
        assert_eq!(link.r(), 2);
        assert_eq!(link.edges(), &[vec![1, 2]]);
        let empty = UniformHypergraph::new(3, 5, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(empty.link(&[4]).unwrap().edge_count(), 0);
    }

    #[test]
    fn link_rejects_oversized_set() {
        let hg = UniformHypergraph::complete(3, 5).unwrap();
        assert!(hg.link(&[0, 1, 2]).is_err());
        assert!(hg.link(&[0, 0]).is_err());
    }

    #[test]
    fn link_edge_count_equals_edges_containing_x() {
        let hg = UniformHypergraph::new(
            3,
            6,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![3, 4, 5]],
        )
        .unwrap();
        for x in [vec![0usize], vec![0, 1], vec![3], vec![4, 5]] {
            let containing = hg
                .edges()
                .iter()
                .filter(|e| x.iter().all(|v| e.contains(v)))
                .count() as u64;
            assert_eq!(hg.link(&x).unwrap().edge_count(), containing);
        }
    }

    #[test]
    fn deg_i_examples() {
        // Single hyperedge {1,2,3}; G has just the edge {1,3}.
        let f = UniformHypergraph::new(3, 4, vec![vec![1, 2, 3]]).unwrap();
        let g = Graph::from_edges(4, &[(1, 3)]).unwrap();
        assert_eq!(deg_i(&f, &g, 1, 2, 1), 1);
        assert_eq!(deg_i(&f, &g, 1, 2, 2), 0);
        // u == v always gives 0.
        assert_eq!(deg_i(&f, &g, 2, 2, 0), 0);
        // K_3 on {1,2,3}: two pairs besides {1,2} are present.
        let k3 = Graph::from_edges(4, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(deg_i(&f, &k3, 1, 2, 2), 1);
        assert_eq!(deg_i(&f, &k3, 1, 2, 3), 0);
    }

    #[test]
    fn deg_0_counts_all_incident_edges() {
        let f = UniformHypergraph::complete(3, 5).unwrap();
        let g = Graph::new(5);
        // deg_0(u,v) = number of hyperedges containing u,v = n-2.
        assert_eq!(deg_i(&f, &g, 0, 1, 0), 3);
        // Monotone non-increasing in i.
        let g2 = Graph::complete(5);
        let mut prev = u64::MAX;
        for i in 0..4 {
            let d = deg_i(&f, &g2, 0, 1, i);
            assert!(d <= prev);
            prev = d;
        }
    }

    #[test]
    fn deg_i_never_counts_uv_edge() {
        let f = UniformHypergraph::new(3, 4, vec![vec![0, 1, 2]]).unwrap();
        let with_uv = Graph::from_edges(4, &[(0, 1)]).unwrap();
        let without = Graph::new(4);
        for i in 0..3 {
            assert_eq!(deg_i(&f, &with_uv, 0, 1, i), deg_i(&f, &without, 0, 1, i));
        }
    }
}
