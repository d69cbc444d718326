//! Maximum k-cut: the most edges of a graph crossing a k-partition.
//!
//! Exact by branch-and-bound up to 24 vertices (with a node budget and an
//! honest non-optimal flag on exhaustion); deterministic seeded local
//! search beyond that.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SplitMix64;

const EXACT_VERTEX_LIMIT: usize = 24;
const LOCAL_SEARCH_RESTARTS: u64 = 16;
const LOCAL_SEARCH_SEED: u64 = 0x4D41_5843_5554;

#[derive(Clone, Debug)]
pub struct MaxCutResult {
    pub value: u64,
    /// Part index per vertex, in `0..k`.
    pub parts: Vec<u8>,
    pub optimal: bool,
    pub nodes: u64,
}

pub fn cut_value(g: &Graph, parts: &[u8]) -> u64 {
    g.edges()
        .iter()
        .filter(|&&(u, v)| parts[u] != parts[v])
        .count() as u64
}

/// Maximum number of edges crossing a k-partition of `g`.
pub fn max_partition_edges(g: &Graph, k: usize, budget: Option<u64>) -> Result<MaxCutResult> {
    if k < 2 {
        return Err(Error::parameter(format!("partition count k={k} must be at least 2")));
    }
    if k > 32 {
        return Err(Error::parameter(format!("partition count k={k} too large")));
    }
    let n = g.n();
    if n == 0 {
        return Ok(MaxCutResult {
            value: 0,
            parts: Vec::new(),
            optimal: true,
            nodes: 0,
        });
    }
    if k >= n {
        // Every vertex in its own part: all edges cross.
        let parts: Vec<u8> = (0..n).map(|v| v as u8).collect();
        return Ok(MaxCutResult {
            value: g.edge_count(),
            parts,
            optimal: true,
            nodes: 0,
        });
    }

    let (ls_value, ls_parts) = local_search(g, k);
    if ls_value == g.edge_count() || n > EXACT_VERTEX_LIMIT {
        // A cut meeting e(G) is trivially optimal.
        return Ok(MaxCutResult {
            value: ls_value,
            parts: ls_parts,
            optimal: ls_value == g.edge_count(),
            nodes: 0,
        });
    }

    let max_nodes = budget.unwrap_or(20_000_000);
    let mut bb = Brancher::new(g, k, max_nodes);
    bb.best_value = ls_value;
    bb.best_parts = ls_parts;
    bb.run();
    Ok(MaxCutResult {
        value: bb.best_value,
        parts: bb.best_parts,
        optimal: !bb.exhausted,
        nodes: bb.nodes,
    })
}

struct Brancher<'a> {
    g: &'a Graph,
    k: usize,
    order: Vec<usize>,
    /// Edges among the still-unassigned suffix of `order`.
    suffix_edges: Vec<u64>,
    /// load[v][p]: assigned neighbors of v currently in part p.
    load: Vec<Vec<u32>>,
    assigned_deg: Vec<u32>,
    parts: Vec<u8>,
    best_value: u64,
    best_parts: Vec<u8>,
    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
}

impl<'a> Brancher<'a> {
    fn new(g: &'a Graph, k: usize, max_nodes: u64) -> Brancher<'a> {
        let n = g.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut suffix_edges = vec![0u64; n + 1];
        for i in (0..n).rev() {
            let v = order[i];
            let later = order[i + 1..]
                .iter()
                .filter(|&&w| g.has_edge(v, w))
                .count() as u64;
            suffix_edges[i] = suffix_edges[i + 1] + later;
        }
        Brancher {
            g,
            k,
            order,
            suffix_edges,
            load: vec![vec![0; k]; n],
            assigned_deg: vec![0; n],
            parts: vec![u8::MAX; n],
            best_value: 0,
            best_parts: vec![0; n],
            nodes: 0,
            max_nodes,
            exhausted: false,
        }
    }

    fn run(&mut self) {
        self.descend(0, 0, 0);
    }

    fn bound(&self, depth: usize, cut: u64) -> u64 {
        // Each unassigned vertex can at best avoid its least-loaded part;
        // edges among unassigned vertices can at best all cross.
        let mut ub = cut + self.suffix_edges[depth];
        for &v in &self.order[depth..] {
            let min_load = *self.load[v].iter().min().unwrap();
            ub += (self.assigned_deg[v] - min_load) as u64;
        }
        ub
    }

    fn descend(&mut self, depth: usize, cut: u64, used_parts: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
            return;
        }
        if depth == self.g.n() {
            if cut > self.best_value {
                self.best_value = cut;
                self.best_parts = self.parts.clone();
            }
            return;
        }
        if self.bound(depth, cut) <= self.best_value {
            return;
        }
        let v = self.order[depth];
        // New parts are opened in index order, which removes part-relabel
        // symmetry from the tree.
        let limit = (used_parts + 1).min(self.k);
        let mut options: Vec<(u8, u64)> = (0..limit as u8)
            .map(|p| {
                let gain = (self.assigned_deg[v] - self.load[v][p as usize]) as u64;
                (p, gain)
            })
            .collect();
        options.sort_by_key(|&(p, gain)| (std::cmp::Reverse(gain), p));
        for (p, gain) in options {
            self.parts[v] = p;
            for w in self.g.neighbors(v) {
                self.load[w][p as usize] += 1;
                self.assigned_deg[w] += 1;
            }
            let next_used = used_parts.max(p as usize + 1);
            self.descend(depth + 1, cut + gain, next_used);
            for w in self.g.neighbors(v) {
                self.load[w][p as usize] -= 1;
                self.assigned_deg[w] -= 1;
            }
            self.parts[v] = u8::MAX;
            if self.exhausted {
                return;
            }
        }
    }
}

/// Deterministic multi-start local search: greedy assignment plus
/// single-vertex moves to a fixpoint, over a fixed set of seeded restarts.
fn local_search(g: &Graph, k: usize) -> (u64, Vec<u8>) {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut best_value = 0u64;
    let mut best_parts = vec![0u8; n];
    for restart in 0..=LOCAL_SEARCH_RESTARTS {
        let mut parts = vec![0u8; n];
        let mut load = vec![vec![0u32; k]; n];
        let assign = |v: usize, p: u8, parts: &mut Vec<u8>, load: &mut Vec<Vec<u32>>| {
            parts[v] = p;
            for w in g.neighbors(v) {
                load[w][p as usize] += 1;
            }
        };
        if restart == 0 {
            // Greedy: place each vertex in its least-loaded part.
            let mut placed = vec![false; n];
            for &v in &order {
                let p = (0..k)
                    .min_by_key(|&p| {
                        let cost: u32 = g
                            .neighbors(v)
                            .filter(|&w| placed[w] && parts[w] as usize == p)
                            .count() as u32;
                        (cost, p)
                    })
                    .unwrap() as u8;
                assign(v, p, &mut parts, &mut load);
                placed[v] = true;
            }
        } else {
            let mut rng = SplitMix64::new(LOCAL_SEARCH_SEED ^ restart);
            for v in 0..n {
                assign(v, rng.next_below(k as u64) as u8, &mut parts, &mut load);
            }
        }
        // Single-vertex improvement passes.
        loop {
            let mut improved = false;
            for v in 0..n {
                let cur = parts[v] as usize;
                let (best_p, best_load) = (0..k)
                    .map(|p| (p, load[v][p]))
                    .min_by_key(|&(p, l)| (l, p))
                    .unwrap();
                if best_load < load[v][cur] {
                    for w in g.neighbors(v) {
                        load[w][cur] -= 1;
                        load[w][best_p] += 1;
                    }
                    parts[v] = best_p as u8;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        let value = cut_value(g, &parts);
        if value > best_value {
            best_value = value;
            best_parts = parts;
        }
    }
    (best_value, best_parts)
}
