//! Exact and constructive answers to "is F (eps-)Turánnical?", absolutely
//! and relative to a host graph, via reduction to minimum hitting set.

pub mod instance;
pub mod maxcut;
pub mod search;

pub use instance::{build_instance, HittingSetInstance, HostSpec};
pub use maxcut::{max_partition_edges, MaxCutResult};
pub use search::{
    find_transversal_at_most, greedy_transversal, is_transversal, min_transversal, DecideOutcome,
    OptimizeOutcome, SearchBudget,
};

use crate::combin::choose2;
use crate::detect::detects;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;
use crate::ratio::Ratio;
use crate::turan::turan_number;
use serde::{Deserialize, Serialize};

/// Tri-state decision outcome. Budget exhaustion yields `Unknown`, never a
/// guess.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

/// The comparison threshold a decision was made against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Baseline {
    /// `t_r(n)`: undetected graphs may have at most this many edges.
    Turan { t: u64 },
    /// `(1+eps) t_r(n)`: violation needs at least `target_edges` edges.
    EpsTuran { t: u64, eps: f64, target_edges: u64 },
    /// Maximum (r-1)-partition of the host graph.
    MaxPartition { value: u64, optimal: bool },
    /// `(1+eps)(r-2)/(r-1) e(G)`: violation needs at least `target_edges`.
    EpsHost { e_host: u64, eps: f64, target_edges: u64 },
}

impl Baseline {
    /// Largest undetected edge count compatible with the property.
    pub fn allowed_edges(&self) -> u64 {
        match *self {
            Baseline::Turan { t } => t,
            Baseline::EpsTuran { target_edges, .. } => target_edges - 1,
            Baseline::MaxPartition { value, .. } => value,
            Baseline::EpsHost { target_edges, .. } => target_edges - 1,
        }
    }
}

/// Optimum (or certified bound) on undetected edges, with a certified
/// witness graph. `max_undetected_edges + transversal_size` always equals
/// the universe size, and the witness is verified undetected.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub max_undetected_edges: u64,
    pub witness: Graph,
    pub optimal: bool,
    pub transversal_size: u64,
    pub baseline: Baseline,
    /// Set when the property holds because its premise can never be met.
    pub vacuous: bool,
    /// Certified lower bound on the minimum transversal (equals
    /// `transversal_size` when optimal).
    pub tau_lower_bound: u64,
    pub nodes: u64,
}

fn verify_undetected(f: &UniformHypergraph, w: &Graph) -> Result<()> {
    if detects(f, w)?.detected {
        // The reduction guarantees complements of transversals are
        // undetected; reaching this means the solver is broken.
        panic!("internal error: witness graph is detected by the hypergraph");
    }
    Ok(())
}

fn report_from_transversal(
    f: &UniformHypergraph,
    inst: &HittingSetInstance,
    transversal: &[u32],
    optimal: bool,
    tau_lower_bound: u64,
    baseline: Baseline,
    nodes: u64,
) -> Result<WitnessReport> {
    debug_assert!(is_transversal(inst, transversal));
    let witness = inst.witness_graph(transversal);
    verify_undetected(f, &witness)?;
    Ok(WitnessReport {
        max_undetected_edges: inst.universe_size() - transversal.len() as u64,
        witness,
        optimal,
        transversal_size: transversal.len() as u64,
        baseline,
        vacuous: false,
        tau_lower_bound,
        nodes,
    })
}

/// Maximum edge count over graphs on `[n]` undetected by `f`, with a
/// certified witness; exact when the search completes within budget.
pub fn max_undetected_edges(f: &UniformHypergraph, budget: SearchBudget) -> Result<WitnessReport> {
    max_undetected_edges_in(f, HostSpec::Complete(f.n()), budget)
}

/// Same as [`max_undetected_edges`] but over subgraphs of an arbitrary host.
pub fn max_undetected_edges_in(
    f: &UniformHypergraph,
    host: HostSpec,
    budget: SearchBudget,
) -> Result<WitnessReport> {
    if f.r() < 3 {
        return Err(Error::parameter(format!("r={} must be at least 3", f.r())));
    }
    let inst = build_instance(f, host)?;
    let baseline = Baseline::Turan {
        t: turan_number(f.r(), f.n())?,
    };
    let (outcome, stats) = min_transversal(&inst, budget);
    match outcome {
        OptimizeOutcome::Optimal { transversal } => {
            let tau = transversal.len() as u64;
            report_from_transversal(f, &inst, &transversal, true, tau, baseline, stats.nodes)
        }
        OptimizeOutcome::Bounded {
            transversal,
            lower_bound,
        } => report_from_transversal(f, &inst, &transversal, false, lower_bound, baseline, stats.nodes),
    }
}

/// Shared decision engine: does some undetected subgraph of the host have
/// at least `target` edges? `Fails` comes with a certified witness;
/// `Holds` comes with the largest certified undetected graph found.
fn decide_threshold(
    f: &UniformHypergraph,
    host: HostSpec,
    baseline: Baseline,
    budget: SearchBudget,
) -> Result<(Verdict, WitnessReport)> {
    if f.r() < 3 {
        return Err(Error::parameter(format!("r={} must be at least 3", f.r())));
    }
    let inst = build_instance(f, host)?;
    let universe = inst.universe_size();
    let target = baseline.allowed_edges() + 1;

    if target > universe {
        // No subgraph of the host can violate the property.
        let mut report =
            report_from_transversal(f, &inst, &greedy_transversal(&inst), false, 0, baseline, 0)?;
        report.vacuous = true;
        return Ok((Verdict::Holds, report));
    }

    // Cheap certified refutation: the greedy transversal already leaves a
    // violating undetected graph.
    let greedy = greedy_transversal(&inst);
    if universe - greedy.len() as u64 >= target {
        let report = report_from_transversal(f, &inst, &greedy, false, 0, baseline, 0)?;
        return Ok((Verdict::Fails, report));
    }

    // Exact decision: is there a transversal of size <= universe - target?
    let bound = universe - target;
    let (outcome, stats) = find_transversal_at_most(&inst, bound, budget);
    match outcome {
        DecideOutcome::Found(t) => {
            let report = report_from_transversal(f, &inst, &t, false, 0, baseline, stats.nodes)?;
            Ok((Verdict::Fails, report))
        }
        DecideOutcome::Refuted => {
            let report =
                report_from_transversal(f, &inst, &greedy, false, bound + 1, baseline, stats.nodes)?;
            Ok((Verdict::Holds, report))
        }
        DecideOutcome::Unknown { lower_bound } => {
            let report =
                report_from_transversal(f, &inst, &greedy, false, lower_bound, baseline, stats.nodes)?;
            Ok((Verdict::Unknown, report))
        }
    }
}

/// Is `f` exactly Turánnical: does it detect every graph with more than
/// `t_r(n)` edges?
pub fn is_turannical(
    f: &UniformHypergraph,
    budget: SearchBudget,
) -> Result<(Verdict, WitnessReport)> {
    let t = turan_number(f.r(), f.n())?;
    decide_threshold(f, HostSpec::Complete(f.n()), Baseline::Turan { t }, budget)
}

/// Is `f` eps-Turánnical: does it detect every graph with more than
/// `(1+eps) t_r(n)` edges? The threshold is compared with exact rational
/// arithmetic; "more than" is strict.
pub fn is_eps_turannical(
    f: &UniformHypergraph,
    eps: f64,
    budget: SearchBudget,
) -> Result<(Verdict, WitnessReport)> {
    let eps_r = snap_eps(eps)?;
    let t = turan_number(f.r(), f.n())?;
    // target = floor((1+eps) t) + 1 is the least violating edge count.
    let target = one_plus(eps_r).floor_mul(t) + 1;
    let baseline = Baseline::EpsTuran {
        t,
        eps,
        target_edges: target,
    };
    decide_threshold(f, HostSpec::Complete(f.n()), baseline, budget)
}

/// Is `f` exactly Turánnical for `g`: does it detect every subgraph of `g`
/// with more edges than a maximum (r-1)-partition of `g`?
///
/// When the max-cut itself is only a local-search bound, a would-be `Fails`
/// is demoted to `Unknown`: the witness exceeds the reported cut but might
/// not exceed the true one.
pub fn is_turannical_for(
    f: &UniformHypergraph,
    g: &Graph,
    budget: SearchBudget,
) -> Result<(Verdict, WitnessReport)> {
    if f.n() != g.n() {
        return Err(Error::parameter(format!(
            "hypergraph has n={} but graph has n={}",
            f.n(),
            g.n()
        )));
    }
    if f.r() < 3 {
        return Err(Error::parameter(format!("r={} must be at least 3", f.r())));
    }
    let cut = max_partition_edges(g, f.r() - 1, None)?;
    let baseline = Baseline::MaxPartition {
        value: cut.value,
        optimal: cut.optimal,
    };
    let (verdict, report) = decide_threshold(f, HostSpec::Graph(g), baseline, budget)?;
    if verdict == Verdict::Fails && !cut.optimal {
        return Ok((Verdict::Unknown, report));
    }
    Ok((verdict, report))
}

/// Is `f` eps-Turánnical for `g`: does it detect every subgraph of `g` with
/// more than `(1+eps)(r-2)/(r-1) e(g)` edges? Returns `Holds` immediately
/// (flagged vacuous) when that factor reaches 1, since no subgraph can then
/// meet the premise.
pub fn is_eps_turannical_for(
    f: &UniformHypergraph,
    g: &Graph,
    eps: f64,
    budget: SearchBudget,
) -> Result<(Verdict, WitnessReport)> {
    if f.n() != g.n() {
        return Err(Error::parameter(format!(
            "hypergraph has n={} but graph has n={}",
            f.n(),
            g.n()
        )));
    }
    if f.r() < 3 {
        return Err(Error::parameter(format!("r={} must be at least 3", f.r())));
    }
    let eps_r = snap_eps(eps)?;
    let r = f.r() as i128;
    let e_host = g.edge_count();
    // factor = (1+eps)(r-2)/(r-1); premise vacuous once factor >= 1.
    let factor = Ratio::new(
        one_plus(eps_r).num() * (r - 2),
        one_plus(eps_r).den() * (r - 1),
    );
    let target = factor.floor_mul(e_host) + 1;
    let baseline = Baseline::EpsHost {
        e_host,
        eps,
        target_edges: target,
    };
    if factor.ge_frac(1, 1) {
        let inst = build_instance(f, HostSpec::Graph(g))?;
        let greedy = greedy_transversal(&inst);
        let mut report =
            report_from_transversal(f, &inst, &greedy, false, 0, baseline, 0)?;
        report.vacuous = true;
        return Ok((Verdict::Holds, report));
    }
    decide_threshold(f, HostSpec::Graph(g), baseline, budget)
}

fn snap_eps(eps: f64) -> Result<Ratio> {
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::parameter(format!("eps={eps} must be non-negative")));
    }
    Ratio::from_f64_snapped(eps)
        .ok_or_else(|| Error::parameter(format!("eps={eps} is not representable")))
}

fn one_plus(r: Ratio) -> Ratio {
    Ratio::new(r.num() + r.den(), r.den())
}

/// The small-link witness of Proposition 1.3(a): when some pair has a
/// sparse enough link, a Turán graph can be arranged so that adding that
/// pair's edge stays undetected, beating `t_r(n)` by one edge.
///
/// For r = 3 the pair and the vertices covered by its link share one
/// partition class; for r > 3 the covered vertices fill a different class
/// from the pair. Returns `None` when no qualifying pair exists or the
/// covered set does not fit a class at tiny n.
pub fn construct_sparse_witness(f: &UniformHypergraph) -> Result<Option<Graph>> {
    let r = f.r();
    let n = f.n();
    if r < 3 {
        return Err(Error::parameter(format!("r={} must be at least 3", f.r())));
    }
    if n < 2 {
        return Ok(None);
    }

    // e(link(u,v)) for every pair, in one pass over the hyperedges.
    let mut link_count = vec![0u64; n * n];
    for e in f.edges() {
        for (i, &u) in e.iter().enumerate() {
            for &v in &e[i + 1..] {
                link_count[u * n + v] += 1;
            }
        }
    }
    let qualifies = |e_link: u64| -> bool {
        if r == 3 {
            // e(link) < n/2 - 1, strictly.
            2 * e_link + 3 <= n as u64
        } else {
            (r as u64 - 1) * (r as u64 - 2) * e_link <= n as u64
        }
    };
    let mut best: Option<(u64, usize, usize)> = None;
    for u in 0..n {
        for v in u + 1..n {
            let c = link_count[u * n + v];
            if qualifies(c) && best.is_none_or(|(bc, _, _)| c < bc) {
                best = Some((c, u, v));
            }
        }
    }
    let Some((_, u, v)) = best else {
        return Ok(None);
    };

    let link = f.link(&[u, v])?;
    let covered = link.covered_vertices();
    debug_assert!(!covered.contains(&u) && !covered.contains(&v));

    // Part sizes of T_r(n), largest first.
    let parts = r - 1;
    let small = n / parts;
    let sizes: Vec<usize> = (0..parts)
        .map(|i| if i < n % parts { small + 1 } else { small })
        .collect();

    let mut assignment = vec![usize::MAX; n];
    if r == 3 {
        // u, v and the covered vertices share the big class.
        if 2 + covered.len() > sizes[0] {
            return Ok(None);
        }
        assignment[u] = 0;
        assignment[v] = 0;
        for &w in &covered {
            assignment[w] = 0;
        }
    } else {
        // Covered vertices fill class 0; u and v share class 1.
        if covered.len() > sizes[0] || sizes.len() < 2 || sizes[1] < 2 {
            return Ok(None);
        }
        for &w in &covered {
            assignment[w] = 0;
        }
        if assignment[u] != usize::MAX || assignment[v] != usize::MAX {
            return Ok(None);
        }
        assignment[u] = 1;
        assignment[v] = 1;
    }
    // Fill remaining slots in vertex order.
    let mut filled: Vec<usize> = vec![0; parts];
    for w in 0..n {
        if assignment[w] != usize::MAX {
            filled[assignment[w]] += 1;
        }
    }
    if filled.iter().zip(&sizes).any(|(f, s)| f > s) {
        return Ok(None);
    }
    let mut next_part = 0;
    for slot in assignment.iter_mut() {
        if *slot == usize::MAX {
            while filled[next_part] == sizes[next_part] {
                next_part += 1;
            }
            *slot = next_part;
            filled[next_part] += 1;
        }
    }

    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if assignment[a] != assignment[b] {
                g.add_edge(a, b);
            }
        }
    }
    g.add_edge(u, v);
    assert_eq!(
        g.edge_count(),
        turan_number(r, n)? + 1,
        "sparse witness must have t_r(n)+1 edges"
    );
    assert!(
        !detects(f, &g)?.detected,
        "sparse witness construction produced a detected graph"
    );
    Ok(Some(g))
}

/// The deletion witness of Proposition 1.3(b): start from `K_n` and, for
/// each hyperedge still inducing `K_r`, delete its lexicographically
/// smallest still-present internal pair. Undetected by construction, with
/// at least `C(n,2) - |E(F)|` edges.
pub fn construct_deletion_witness(f: &UniformHypergraph) -> Result<Graph> {
    if f.r() < 3 {
        return Err(Error::parameter(format!("r={} must be at least 3", f.r())));
    }
    let n = f.n();
    let mut g = Graph::complete(n);
    for e in f.edges() {
        if !g.induces_clique(e) {
            continue;
        }
        'outer: for (i, &a) in e.iter().enumerate() {
            for &b in &e[i + 1..] {
                if g.has_edge(a, b) {
                    g.remove_edge(a, b);
                    break 'outer;
                }
            }
        }
    }
    debug_assert!(g.edge_count() >= choose2(n as u64).saturating_sub(f.edge_count()));
    debug_assert!(!detects(f, &g)?.detected);
    Ok(g)
}
