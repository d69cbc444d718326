//! Fixed-order clique enumeration and counting on bitset adjacency.
//!
//! Enumeration recurses on candidate-set intersections restricted to
//! increasing vertices, so each r-clique is visited exactly once and the
//! output order is lexicographic.

use crate::error::{Error, Result};
use crate::graph::{make_mask, mask_popcount, BitIter, Graph};

/// The r-cliques of a reference graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSet {
    pub r: usize,
    pub members: Vec<Vec<usize>>,
}

impl CliqueSet {
    pub fn count(&self) -> u64 {
        self.members.len() as u64
    }
}

/// All r-subsets inducing `K_r` in `g`, each exactly once.
pub fn enumerate_cliques(g: &Graph, r: usize) -> Result<CliqueSet> {
    if r < 2 || r > g.n() {
        return Err(Error::parameter(format!(
            "clique order r={r} out of range for n={}",
            g.n()
        )));
    }
    let full = make_mask(g.n(), 0..g.n());
    let mut members = Vec::new();
    let mut current = Vec::with_capacity(r);
    enumerate_rec(g, &full, r, &mut current, &mut members);
    Ok(CliqueSet { r, members })
}

/// Restricts `cand` to candidates adjacent to `v` and greater than `v`.
fn shrink(g: &Graph, cand: &[u64], v: usize) -> Vec<u64> {
    let mut next: Vec<u64> = cand.iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
    let word = v / 64;
    for w in next.iter_mut().take(word) {
        *w = 0;
    }
    if v % 64 == 63 {
        next[word] = 0;
    } else {
        next[word] &= !((1u64 << (v % 64 + 1)) - 1);
    }
    next
}

fn enumerate_rec(
    g: &Graph,
    cand: &[u64],
    depth: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == 0 {
        out.push(current.clone());
        return;
    }
    for v in BitIter::new(cand) {
        current.push(v);
        enumerate_rec(g, &shrink(g, cand, v), depth - 1, current, out);
        current.pop();
    }
}

/// Number of k-cliques inside the vertex set `cand` whose vertices are in
/// ascending order (callers pass candidate sets already above the chosen
/// prefix).
fn count_in_mask(g: &Graph, cand: &[u64], k: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    if k == 1 {
        return mask_popcount(cand) as u64;
    }
    let mut total = 0;
    for v in BitIter::new(cand) {
        total += count_in_mask(g, &shrink(g, cand, v), k - 1);
    }
    total
}

/// Number of r-cliques in `g`. Returns 0 when `r > n`.
pub fn count_cliques(g: &Graph, r: usize) -> u64 {
    if r == 0 || r > g.n() {
        return if r == 0 { 1 } else { 0 };
    }
    let full = make_mask(g.n(), 0..g.n());
    count_in_mask(g, &full, r)
}

/// Number of `K_r` copies containing vertex `v`.
pub fn clique_count_at_vertex(g: &Graph, r: usize, v: usize) -> Result<u64> {
    if r < 2 || r > g.n() {
        return Err(Error::parameter(format!(
            "clique order r={r} out of range for n={}",
            g.n()
        )));
    }
    if v >= g.n() {
        return Err(Error::parameter(format!("vertex {v} out of range for n={}", g.n())));
    }
    Ok(count_in_mask(g, g.row(v), r - 1))
}

/// Number of `K_r` copies containing the edge `e` (its book size).
pub fn book_size(g: &Graph, r: usize, e: (usize, usize)) -> Result<u64> {
    let (u, v) = e;
    if r < 2 || r > g.n() {
        return Err(Error::parameter(format!(
            "clique order r={r} out of range for n={}",
            g.n()
        )));
    }
    if u >= g.n() || v >= g.n() || u == v || !g.has_edge(u, v) {
        return Err(Error::parameter(format!("({u},{v}) is not an edge")));
    }
    let common: Vec<u64> = g.row(u).iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
    Ok(count_in_mask(g, &common, r - 2))
}

/// Edge maximizing the book size, with the size. `None` on edgeless graphs.
/// Ties resolve to the lexicographically first edge.
pub fn max_book(g: &Graph, r: usize) -> Result<Option<((usize, usize), u64)>> {
    if r < 2 || r > g.n() {
        return Err(Error::parameter(format!(
            "clique order r={r} out of range for n={}",
            g.n()
        )));
    }
    let mut best: Option<((usize, usize), u64)> = None;
    for e in g.edges() {
        let b = book_size(g, r, e)?;
        if best.is_none() || b > best.unwrap().1 {
            best = Some((e, b));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binomial;

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    /// Brute force over all r-subsets; the independent check for the
    /// recursive enumerator.
    fn brute_count(g: &Graph, r: usize) -> u64 {
        let mut count = 0;
        crate::combin::for_each_combination(g.n(), r, |c| {
            if g.induces_clique(c) {
                count += 1;
            }
        });
        count
    }

    #[test]
    fn complete_graph_has_all_triples() {
        let cs = enumerate_cliques(&Graph::complete(4), 3).unwrap();
        assert_eq!(cs.count(), 4);
        assert_eq!(cs.members[0], vec![0, 1, 2]);
    }

    #[test]
    fn cycle_is_triangle_free() {
        assert_eq!(enumerate_cliques(&cycle(5), 3).unwrap().count(), 0);
    }

    #[test]
    fn turan_plus_edge_has_three_triangles() {
        // T_3(6) = K_{3,3} (canonical parts by parity) plus one intra-part edge.
        let mut g = Graph::new(6);
        for u in 0..6 {
            for v in u + 1..6 {
                if u % 2 != v % 2 {
                    g.add_edge(u, v);
                }
            }
        }
        g.add_edge(0, 2);
        let cs = enumerate_cliques(&g, 3).unwrap();
        assert_eq!(cs.count(), 3, "brute force triple scan gives 3");
        assert_eq!(brute_count(&g, 3), 3);
    }

    #[test]
    fn count_matches_enumeration_on_random_graphs() {
        use crate::rng::indexed_unit;
        for seed in 0..20u64 {
            let n = 8;
            let mut g = Graph::new(n);
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if indexed_unit(seed, idx) < 0.5 {
                        g.add_edge(u, v);
                    }
                    idx += 1;
                }
            }
            for r in 2..=5 {
                let by_enum = enumerate_cliques(&g, r).unwrap().count();
                assert_eq!(count_cliques(&g, r), by_enum);
                assert_eq!(by_enum, brute_count(&g, r));
            }
        }
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(clique_count_at_vertex(&Graph::complete(5), 3, 2).unwrap(), 6);
        assert_eq!(clique_count_at_vertex(&cycle(5), 3, 0).unwrap(), 0);
        // K_{3,3} plus an intra-part edge (u,w): u sits in 3 triangles.
        let mut g = Graph::new(6);
        for u in 0..3 {
            for v in 3..6 {
                g.add_edge(u, v);
            }
        }
        g.add_edge(0, 1);
        assert_eq!(clique_count_at_vertex(&g, 3, 0).unwrap(), 3);
    }

    #[test]
    fn vertex_count_sum_rule() {
        let g = Graph::complete(7);
        for r in 2..=5 {
            let total: u64 = (0..7)
                .map(|v| clique_count_at_vertex(&g, r, v).unwrap())
                .sum();
            assert_eq!(total, r as u64 * count_cliques(&g, r));
        }
    }

    #[test]
    fn book_sizes() {
        assert_eq!(book_size(&Graph::complete(4), 3, (1, 3)).unwrap(), 2);
        let mut g = Graph::new(6);
        for u in 0..3 {
            for v in 3..6 {
                g.add_edge(u, v);
            }
        }
        g.add_edge(0, 1);
        // Common neighborhood of the intra-part edge is the opposite part.
        assert_eq!(book_size(&g, 3, (0, 1)).unwrap(), 3);
        assert_eq!(max_book(&g, 3).unwrap(), Some(((0, 1), 3)));
        assert_eq!(book_size(&cycle(6), 3, (0, 1)).unwrap(), 0);
        assert!(book_size(&cycle(6), 3, (0, 2)).is_err());
    }

    #[test]
    fn book_sum_rule() {
        let g = Graph::complete(6);
        for r in 2..=4 {
            let total: u64 = g.edges().iter().map(|&e| book_size(&g, r, e).unwrap()).sum();
            assert_eq!(
                total,
                binomial(r as u64, 2).unwrap() * count_cliques(&g, r)
            );
        }
    }

    #[test]
    fn parameter_errors() {
        let g = Graph::complete(4);
        assert!(enumerate_cliques(&g, 1).is_err());
        assert!(enumerate_cliques(&g, 5).is_err());
        assert!(clique_count_at_vertex(&g, 3, 9).is_err());
        assert!(max_book(&Graph::new(3), 4).is_err());
        assert_eq!(max_book(&Graph::new(3), 2).unwrap(), None);
    }

    #[test]
    fn bipartite_graphs_have_no_triangles() {
        for n in 2..9 {
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if u % 2 != v % 2 {
                        g.add_edge(u, v);
                    }
                }
            }
            if n >= 3 {
                assert_eq!(count_cliques(&g, 3), 0);
            }
        }
    }
}
