//! Extremal formulas and constructions: Turán numbers and graphs, the
//! restricted extremal function, its extremal construction, and
//! intersection restriction hypergraphs.

use crate::combin::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;

/// Parameters of the restricted extremal problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TuranParams {
    pub r: usize,
    pub n: usize,
    pub m: usize,
}

impl TuranParams {
    pub fn new(r: usize, n: usize, m: usize) -> Result<TuranParams> {
        if r < 3 {
            return Err(Error::parameter(format!("clique order r={r} must be at least 3")));
        }
        if m > n {
            return Err(Error::parameter(format!(
                "restricted set size m={m} exceeds n={n}"
            )));
        }
        Ok(TuranParams { r, n, m })
    }
}

fn check_r(r: usize) -> Result<()> {
    if r < 3 {
        return Err(Error::parameter(format!("clique order r={r} must be at least 3")));
    }
    Ok(())
}

fn choose2_wide(n: u128) -> u128 {
    n * n.saturating_sub(1) / 2
}

fn narrow(x: u128, what: &'static str) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow(what))
}

/// Edge count of the complete balanced `(r-1)`-partite graph on `n`
/// vertices: `C(n,2)` minus the pairs inside each part.
pub fn turan_number(r: usize, n: usize) -> Result<u64> {
    check_r(r)?;
    let parts = (r - 1) as u128;
    let n = n as u128;
    let small = n / parts;
    let large_count = n % parts;
    let intra = large_count * choose2_wide(small + 1) + (parts - large_count) * choose2_wide(small);
    narrow(choose2_wide(n) - intra, "turan_number")
}

/// Canonical Turán graph `T_r(n)`: vertex `v` goes to part `v mod (r-1)`.
pub fn turan_graph(r: usize, n: usize) -> Result<Graph> {
    check_r(r)?;
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if u % (r - 1) != v % (r - 1) {
                g.add_edge(u, v);
            }
        }
    }
    debug_assert_eq!(g.edge_count(), turan_number(r, n)?);
    Ok(g)
}

/// Verifies the two Turán increment identities
/// `t_r(n+1) - t_r(n) = n - floor(n/(r-1))` and
/// `t_r(n+r) - t_r(n) = (r-1)n + C(r,2) - floor((n+r-1)/(r-1))`.
pub fn turan_increment_identity_check(r: usize, n: usize) -> Result<bool> {
    check_r(r)?;
    let t_n = turan_number(r, n)?;
    let one = turan_number(r, n + 1)? - t_n == n as u64 - (n / (r - 1)) as u64;
    let lhs = turan_number(r, n + r)? - t_n;
    let rhs = ((r - 1) * n) as u64 + binomial(r as u64, 2)? - ((n + r - 1) / (r - 1)) as u64;
    Ok(one && lhs == rhs)
}

/// Maximum edges of an `n`-vertex graph in which no `K_r` meets a fixed
/// m-set: `t_r(n)` when `n <= (r-1)m`, otherwise
/// `C(n,2) - nm + (r-1) C(m+1,2)`.
pub fn turm(r: usize, n: usize, m: usize) -> Result<u64> {
    check_r(r)?;
    if m > n {
        return Err(Error::parameter(format!("m={m} exceeds n={n}")));
    }
    if n <= (r - 1) * m {
        return turan_number(r, n);
    }
    let (nw, mw) = (n as u128, m as u128);
    narrow(
        choose2_wide(nw) - nw * mw + (r as u128 - 1) * choose2_wide(mw + 1),
        "turm",
    )
}

/// The extremal construction for `turm`, together with its restricted set.
///
/// For `n <= (r-1)m` this is the Turán graph with `M = {0, .., m-1}`.
/// Otherwise a `T_r((r-1)m)` core carries `M` spread over its parts, and the
/// remaining vertices are joined to everything except `M`. The construction
/// is verified to have exactly `turm(r,n,m)` edges and no `K_r` meeting `M`;
/// a verification failure is an internal error.
pub fn turm_graph(r: usize, n: usize, m: usize) -> Result<(Graph, Vec<usize>)> {
    check_r(r)?;
    if m > n {
        return Err(Error::parameter(format!("m={m} exceeds n={n}")));
    }
    let m_set: Vec<usize> = (0..m).collect();
    let g = if n <= (r - 1) * m {
        turan_graph(r, n)?
    } else {
        let core = (r - 1) * m;
        let mut g = Graph::new(n);
        for u in 0..core {
            for v in u + 1..core {
                if u % (r - 1) != v % (r - 1) {
                    g.add_edge(u, v);
                }
            }
        }
        for u in core..n {
            for v in m..n {
                if u != v {
                    g.add_edge(u, v);
                }
            }
        }
        g
    };
    let expect = turm(r, n, m)?;
    assert_eq!(
        g.edge_count(),
        expect,
        "turm_graph({r},{n},{m}) edge count disagrees with the formula"
    );
    for &v in &m_set {
        assert_eq!(
            cliques_through(&g, r, v),
            0,
            "turm_graph({r},{n},{m}) has a K_{r} meeting M at vertex {v}"
        );
    }
    Ok((g, m_set))
}

/// The intersection restriction hypergraph `I^(r)(n, m)`: all r-subsets of
/// `{0, .., n-1}` meeting `{0, .., m-1}`.
pub fn intersection_hypergraph(r: usize, n: usize, m: usize) -> Result<UniformHypergraph> {
    check_r(r)?;
    if m > n {
        return Err(Error::parameter(format!("m={m} exceeds n={n}")));
    }
    let count = binomial(n as u64, r as u64)? - binomial((n - m) as u64, r as u64)?;
    let mut edges = Vec::with_capacity(count as usize);
    for_each_combination(n, r, |c| {
        // Sorted subsets meet [m] exactly when the first element does.
        if c[0] < m {
            edges.push(c.to_vec());
        }
    });
    Ok(UniformHypergraph::from_sorted_edges(r, n, edges))
}

/// Count of `K_r` copies through `v`, 0 whenever `r > n`; used by the
/// construction verifier.
pub(crate) fn cliques_through(g: &Graph, r: usize, v: usize) -> u64 {
    if r > g.n() {
        return 0;
    }
    crate::cliques::clique_count_at_vertex(g, r, v).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::choose2;
    use crate::cliques::count_cliques;
    use crate::detect;

    #[test]
    fn turan_number_values() {
        assert_eq!(turan_number(3, 5).unwrap(), 6); // K_{2,3}
        assert_eq!(turan_number(4, 6).unwrap(), 12); // K_{2,2,2}
        assert_eq!(turan_number(3, 2).unwrap(), 1); // n < r: complete graph
        assert_eq!(turan_number(3, 0).unwrap(), 0);
        assert_eq!(turan_number(3, 10).unwrap(), 25);
        assert_eq!(turan_number(3, 7).unwrap(), 12);
    }

    #[test]
    fn turan_graph_matches_number_and_is_clique_free() {
        for r in 3..=6 {
            for n in 0..=40 {
                let g = turan_graph(r, n).unwrap();
                assert_eq!(g.edge_count(), turan_number(r, n).unwrap());
                if r <= n {
                    assert_eq!(count_cliques(&g, r), 0, "T_{r}({n}) contains K_{r}");
                }
            }
        }
    }

    #[test]
    fn turan_graph_shapes() {
        let g = turan_graph(3, 4).unwrap();
        assert_eq!(g.edge_count(), 4); // K_{2,2}
        let g = turan_graph(4, 6).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(count_cliques(&g, 4), 0);
        let g = turan_graph(3, 7).unwrap();
        assert_eq!(g.edge_count(), 12); // K_{3,4}
    }

    #[test]
    fn increment_identities() {
        assert!(turan_increment_identity_check(3, 5).unwrap());
        assert!(turan_increment_identity_check(4, 6).unwrap());
        assert!(turan_increment_identity_check(3, 0).unwrap());
        for r in 3..=6 {
            for n in 0..30 {
                assert!(turan_increment_identity_check(r, n).unwrap());
            }
        }
    }

    #[test]
    fn turm_values() {
        assert_eq!(turm(3, 10, 5).unwrap(), 25); // first branch: t_3(10)
        assert_eq!(turm(3, 10, 2).unwrap(), 31);
        assert_eq!(turm(3, 7, 2).unwrap(), 13);
        for n in 1..12 {
            assert_eq!(turm(3, n, 0).unwrap(), choose2(n as u64));
        }
    }

    #[test]
    fn turm_branches_agree_at_boundary() {
        // At n = (r-1)m both branches give the same value; the second branch
        // rearranges to m^2 C(r-1,2) there.
        for r in 3..=6 {
            for m in 1..=8 {
                let n = (r - 1) * m;
                let first = turan_number(r, n).unwrap() as i128;
                let second = choose2(n as u64) as i128 - (n as i128 * m as i128)
                    + (r as i128 - 1) * choose2(m as u64 + 1) as i128;
                assert_eq!(first, second, "r={r} m={m}");
                assert_eq!(first, (m * m) as i128 * choose2(r as u64 - 1) as i128);
            }
        }
    }

    #[test]
    fn turm_equals_turan_exactly_on_first_branch() {
        for r in 3..=5 {
            for n in 1..=12 {
                for m in 0..=n {
                    let v = turm(r, n, m).unwrap();
                    let t = turan_number(r, n).unwrap();
                    if n <= (r - 1) * m {
                        assert_eq!(v, t);
                    } else {
                        assert!(v >= t, "turm({r},{n},{m})={v} below t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn turm_graph_construction() {
        let (g, mset) = turm_graph(3, 10, 2).unwrap();
        assert_eq!(g.edge_count(), 31);
        assert_eq!(mset, vec![0, 1]);
        // No triangle meets M: scan triangles through each M vertex.
        for &v in &mset {
            assert_eq!(cliques_through(&g, 3, v), 0);
        }
        let (g, _) = turm_graph(3, 4, 2).unwrap();
        assert_eq!(g.edge_count(), 4); // first branch: T_3(4)
        let (g, _) = turm_graph(3, 5, 2).unwrap();
        assert_eq!(g.edge_count(), 6); // K_{2,2} plus one universal-off-M vertex
    }

    #[test]
    fn turm_graph_m_zero_gives_complete() {
        let (g, mset) = turm_graph(3, 6, 0).unwrap();
        assert!(mset.is_empty());
        assert_eq!(g.edge_count(), choose2(6));
    }

    #[test]
    fn intersection_hypergraph_counts() {
        assert_eq!(intersection_hypergraph(3, 4, 4).unwrap().edge_count(), 4);
        assert_eq!(intersection_hypergraph(3, 4, 0).unwrap().edge_count(), 0);
        assert_eq!(intersection_hypergraph(3, 5, 1).unwrap().edge_count(), 6);
        let hg = intersection_hypergraph(3, 6, 2).unwrap();
        assert_eq!(
            hg.edge_count(),
            binomial(6, 3).unwrap() - binomial(4, 3).unwrap()
        );
        for e in hg.edges() {
            assert!(e[0] < 2);
        }
    }

    #[test]
    fn turm_graph_is_never_detected_by_intersection_hypergraph() {
        for r in 3..=4 {
            for n in 1..=9 {
                for m in 1..=n {
                    let (g, _) = turm_graph(r, n, m).unwrap();
                    let f = intersection_hypergraph(r, n, m).unwrap();
                    let res = detect::detects(&f, &g).unwrap();
                    assert!(!res.detected, "r={r} n={n} m={m}");
                }
            }
        }
    }
}
