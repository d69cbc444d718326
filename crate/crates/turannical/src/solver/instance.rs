//! Reduction from "maximum undetected graph" to minimum hitting set.
//!
//! A graph is undetected exactly when every relevant hyperedge misses at
//! least one of its internal vertex pairs. Deleting a minimum transversal of
//! those pair sets from the host therefore leaves the largest undetected
//! graph: max undetected edges = |universe| - tau.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;

/// Host whose subgraphs are being searched: the complete graph for the
/// absolute property, an arbitrary graph for the relative one.
#[derive(Clone, Copy)]
pub enum HostSpec<'a> {
    Complete(usize),
    Graph(&'a Graph),
}

/// Universe of candidate deletions (vertex pairs) plus one constraint per
/// relevant hyperedge: the indices of the pairs inside it.
#[derive(Clone, Debug)]
pub struct HittingSetInstance {
    pub n: usize,
    pub universe: Vec<(usize, usize)>,
    pub constraints: Vec<Vec<u32>>,
}

impl HittingSetInstance {
    pub fn universe_size(&self) -> u64 {
        self.universe.len() as u64
    }

    /// The graph on `[n]` whose edges are the universe minus the given
    /// transversal (as pair indices).
    pub fn witness_graph(&self, transversal: &[u32]) -> Graph {
        let mut removed = vec![false; self.universe.len()];
        for &p in transversal {
            removed[p as usize] = true;
        }
        let mut g = Graph::new(self.n);
        for (idx, &(u, v)) in self.universe.iter().enumerate() {
            if !removed[idx] {
                g.add_edge(u, v);
            }
        }
        g
    }
}

/// Builds the reduction. In the relative case only hyperedges inducing
/// `K_r` in the host generate constraints; in the absolute case every
/// hyperedge does.
pub fn build_instance(f: &UniformHypergraph, host: HostSpec) -> Result<HittingSetInstance> {
    let n = match host {
        HostSpec::Complete(n) => n,
        HostSpec::Graph(g) => g.n(),
    };
    if f.n() != n {
        return Err(Error::parameter(format!(
            "hypergraph has n={} but host has n={n}",
            f.n()
        )));
    }

    let mut universe = Vec::new();
    let mut pair_index = vec![u32::MAX; n * n];
    match host {
        HostSpec::Complete(_) => {
            for u in 0..n {
                for v in u + 1..n {
                    pair_index[u * n + v] = universe.len() as u32;
                    universe.push((u, v));
                }
            }
        }
        HostSpec::Graph(g) => {
            for (u, v) in g.edges() {
                pair_index[u * n + v] = universe.len() as u32;
                universe.push((u, v));
            }
        }
    }

    let mut constraints: Vec<Vec<u32>> = Vec::new();
    for e in f.edges() {
        if let HostSpec::Graph(g) = host {
            if !g.induces_clique(e) {
                continue;
            }
        }
        let mut pairs = Vec::with_capacity(e.len() * (e.len() - 1) / 2);
        for (i, &u) in e.iter().enumerate() {
            for &v in &e[i + 1..] {
                pairs.push(pair_index[u * n + v]);
            }
        }
        constraints.push(pairs);
    }
    constraints.sort_unstable();
    constraints.dedup();

    Ok(HittingSetInstance {
        n,
        universe,
        constraints,
    })
}
