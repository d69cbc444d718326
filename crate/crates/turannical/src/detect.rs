//! The core detection predicate: does some hyperedge of a restriction
//! hypergraph induce a complete graph in the target graph?

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;
use serde::{Deserialize, Serialize};

/// Outcome of a detection query. `detected` holds exactly when a witness
/// hyperedge is present, exactly when the detected count is at least one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionResult {
    pub detected: bool,
    pub witness_hyperedge: Option<Vec<usize>>,
    /// Number of hyperedges inducing `K_r`; filled when counting was asked for.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detected_count: Option<u64>,
}

fn check_compatible(f: &UniformHypergraph, g: &Graph) -> Result<()> {
    if f.n() != g.n() {
        return Err(Error::parameter(format!(
            "hypergraph has n={} but graph has n={}",
            f.n(),
            g.n()
        )));
    }
    if f.r() < 3 {
        return Err(Error::parameter(format!(
            "detection needs r >= 3, got r={}",
            f.r()
        )));
    }
    Ok(())
}

/// True iff some hyperedge of `f` induces `K_r` in `g`. Hyperedges are
/// tested in sorted order and the scan short-circuits, so the reported
/// witness is the lexicographically first firing hyperedge.
pub fn detects(f: &UniformHypergraph, g: &Graph) -> Result<DetectionResult> {
    check_compatible(f, g)?;
    for e in f.edges() {
        if g.induces_clique(e) {
            return Ok(DetectionResult {
                detected: true,
                witness_hyperedge: Some(e.clone()),
                detected_count: None,
            });
        }
    }
    Ok(DetectionResult {
        detected: false,
        witness_hyperedge: None,
        detected_count: None,
    })
}

/// Number of hyperedges of `f` inducing `K_r` in `g`.
pub fn detected_clique_count(f: &UniformHypergraph, g: &Graph) -> Result<u64> {
    check_compatible(f, g)?;
    Ok(f.edges().iter().filter(|e| g.induces_clique(e)).count() as u64)
}

/// Exact detected fraction, `detected_clique_count / |E(F)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio64 {
    pub num: u64,
    pub den: u64,
}

impl Ratio64 {
    pub fn new(num: u64, den: u64) -> Ratio64 {
        assert!(den > 0);
        let g = gcd(num, den);
        Ratio64 {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

/// Fraction of hyperedges that fire on `g`. Errors on an empty hypergraph.
pub fn denseness_ratio(f: &UniformHypergraph, g: &Graph) -> Result<Ratio64> {
    if f.edge_count() == 0 {
        return Err(Error::UndefinedRatio);
    }
    Ok(Ratio64::new(detected_clique_count(f, g)?, f.edge_count()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turan::{intersection_hypergraph, turan_graph};

    #[test]
    fn single_hyperedge_on_triangle() {
        let f = UniformHypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let g = Graph::complete(3);
        let res = detects(&f, &g).unwrap();
        assert!(res.detected);
        assert_eq!(res.witness_hyperedge, Some(vec![0, 1, 2]));
    }

    #[test]
    fn empty_hypergraph_detects_nothing() {
        let f = UniformHypergraph::empty(3, 5).unwrap();
        assert!(!detects(&f, &Graph::complete(5)).unwrap().detected);
    }

    #[test]
    fn complete_hypergraph_detects_turan_plus_edge() {
        // Turán's theorem: T_3(5) has the extremal edge count, one more edge
        // forces a triangle, and the complete restriction hypergraph sees it.
        let f = UniformHypergraph::complete(3, 5).unwrap();
        let mut g = turan_graph(3, 5).unwrap();
        assert!(!detects(&f, &g).unwrap().detected);
        g.add_edge(0, 2); // intra-part edge (parts by parity)
        assert!(detects(&f, &g).unwrap().detected);
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let f = UniformHypergraph::complete(3, 5).unwrap();
        let g = Graph::complete(5);
        let res = detects(&f, &g).unwrap();
        assert_eq!(res.witness_hyperedge, Some(vec![0, 1, 2]));
    }

    #[test]
    fn count_examples() {
        let f = UniformHypergraph::complete(3, 4).unwrap();
        assert_eq!(detected_clique_count(&f, &Graph::complete(4)).unwrap(), 4);
        let f = intersection_hypergraph(3, 5, 1).unwrap();
        assert_eq!(detected_clique_count(&f, &Graph::complete(5)).unwrap(), 6);
        let f = UniformHypergraph::complete(3, 4).unwrap();
        assert_eq!(detected_clique_count(&f, &Graph::new(4)).unwrap(), 0);
    }

    #[test]
    fn detected_iff_count_positive() {
        use crate::experiments::{sample_graph, sample_hypergraph};
        for seed in 0..30u64 {
            let f = sample_hypergraph(3, 7, 0.3, seed).unwrap();
            let g = sample_graph(7, 0.5, seed ^ 0xABCD).unwrap();
            let d = detects(&f, &g).unwrap();
            let c = detected_clique_count(&f, &g).unwrap();
            assert_eq!(d.detected, c >= 1);
            assert_eq!(d.detected, d.witness_hyperedge.is_some());
        }
    }

    #[test]
    fn monotone_in_f_and_g() {
        use crate::experiments::{sample_graph, sample_hypergraph};
        for seed in 0..20u64 {
            let f = sample_hypergraph(3, 6, 0.4, seed).unwrap();
            let g = sample_graph(6, 0.6, seed ^ 0x1234).unwrap();
            if detects(&f, &g).unwrap().detected {
                // Adding hyperedges never flips detected to false.
                let mut f2 = f.clone();
                f2.insert_edge(vec![0, 1, 2]).unwrap();
                assert!(detects(&f2, &g).unwrap().detected);
                // Adding graph edges never flips detected to false.
                let mut g2 = g.clone();
                g2.add_edge(0, 1);
                assert!(detects(&f, &g2).unwrap().detected);
            }
        }
    }

    #[test]
    fn denseness_values() {
        let f = UniformHypergraph::complete(3, 5).unwrap();
        assert_eq!(
            denseness_ratio(&f, &Graph::complete(5)).unwrap(),
            Ratio64::new(1, 1)
        );
        assert_eq!(
            denseness_ratio(&f, &turan_graph(3, 5).unwrap()).unwrap(),
            Ratio64::new(0, 1)
        );
        // One of two hyperedges fires.
        let f = UniformHypergraph::new(3, 4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(denseness_ratio(&f, &g).unwrap(), Ratio64::new(1, 2));
        let empty = UniformHypergraph::empty(3, 4).unwrap();
        assert!(matches!(
            denseness_ratio(&empty, &g),
            Err(Error::UndefinedRatio)
        ));
    }

    #[test]
    fn mismatched_sizes_rejected() {
        let f = UniformHypergraph::complete(3, 5).unwrap();
        assert!(detects(&f, &Graph::complete(6)).is_err());
        let f2 = UniformHypergraph::new(2, 5, vec![vec![0, 1]]).unwrap();
        assert!(detects(&f2, &Graph::complete(5)).is_err());
    }
}
