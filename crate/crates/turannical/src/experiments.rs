//! Seeded random ensembles and Monte Carlo threshold studies.
//!
//! Sampling is addressed by lexicographic index: candidate r-sets (or
//! vertex pairs) are numbered in lexicographic order, and the inclusion
//! draw for index j is a pure function of (seed, j). A probability grid
//! evaluated against shared draws is therefore monotonically coupled: the
//! hypergraph sampled at p1 <= p2 is a sub-hypergraph of the one at p2.
//! Below `SKIP_THRESHOLD` the standalone samplers switch to geometric
//! skipping over the index space, which avoids touching every candidate.

use crate::combin::{binomial, unrank_combination};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;
use crate::rng;
use crate::solver::{
    construct_sparse_witness, is_eps_turannical, is_eps_turannical_for, is_turannical,
    is_turannical_for, SearchBudget, Verdict,
};
use crate::stats::{wilson_interval, Z95};
use crate::turan::turan_number;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Below this probability the standalone samplers use geometric skipping.
pub const SKIP_THRESHOLD: f64 = 0.01;

/// Largest candidate space the per-index samplers will enumerate.
const MAX_ENUMERATED: u64 = 200_000_000;

fn check_probability(p: f64, name: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::parameter(format!("{name}={p} must lie in [0,1]")));
    }
    Ok(())
}

/// Geometric skip over `total` indices: yields exactly the indices whose
/// independent Bernoulli(p) draw succeeds, without visiting the rest.
fn skip_sample_indices(total: u64, p: f64, seed: u64) -> Vec<u64> {
    debug_assert!(p > 0.0 && p < 1.0);
    let mut rng = rng::SplitMix64::new(seed);
    let log_q = libm::log1p(-p);
    let mut out = Vec::new();
    let mut cur: u64 = 0;
    loop {
        // Geometric(p) failures before the next success.
        let u = 1.0 - rng.next_unit(); // in (0, 1]
        let skip = (libm::log(u) / log_q).floor();
        if !skip.is_finite() || skip >= (total - cur) as f64 {
            break;
        }
        cur += skip as u64;
        if cur >= total {
            break;
        }
        out.push(cur);
        cur += 1;
        if cur >= total {
            break;
        }
    }
    out
}

/// Random r-uniform hypergraph: each r-set included independently with
/// probability `p`. Identical `(r, n, p, seed)` give identical output on
/// every platform.
pub fn sample_hypergraph(r: usize, n: usize, p: f64, seed: u64) -> Result<UniformHypergraph> {
    check_probability(p, "p")?;
    if r < 2 {
        return Err(Error::parameter(format!("uniformity r={r} must be at least 2")));
    }
    let total = binomial(n as u64, r as u64)?;
    let hseed = rng::hypergraph_seed(seed);
    if p == 0.0 || total == 0 {
        return UniformHypergraph::empty(r, n);
    }
    let mut edges: Vec<Vec<usize>> = Vec::new();
    if p < SKIP_THRESHOLD {
        for idx in skip_sample_indices(total, p, hseed) {
            edges.push(unrank_combination(n as u64, r as u64, idx)?);
        }
    } else {
        if total > MAX_ENUMERATED {
            return Err(Error::parameter(format!(
                "C({n},{r}) = {total} candidate hyperedges is too large to enumerate"
            )));
        }
        let mut idx = 0u64;
        crate::combin::for_each_combination(n, r, |c| {
            if rng::indexed_unit(hseed, idx) < p {
                edges.push(c.to_vec());
            }
            idx += 1;
        });
    }
    Ok(UniformHypergraph::from_sorted_edges(r, n, edges))
}

/// Random graph G(n, q): each pair included independently with
/// probability `q`.
pub fn sample_graph(n: usize, q: f64, seed: u64) -> Result<Graph> {
    check_probability(q, "q")?;
    let gseed = rng::graph_seed(seed, 0);
    sample_graph_with_seed(n, q, gseed)
}

fn sample_graph_with_seed(n: usize, q: f64, gseed: u64) -> Result<Graph> {
    let total = crate::combin::choose2(n as u64);
    let mut g = Graph::new(n);
    if q == 0.0 || total == 0 {
        return Ok(g);
    }
    let pair_of = |idx: u64| -> (usize, usize) {
        // Lexicographic pair unranking.
        let mut u = 0usize;
        let mut rem = idx;
        loop {
            let row = (n - 1 - u) as u64;
            if rem < row {
                return (u, u + 1 + rem as usize);
            }
            rem -= row;
            u += 1;
        }
    };
    if q < SKIP_THRESHOLD {
        for idx in skip_sample_indices(total, q, gseed) {
            let (u, v) = pair_of(idx);
            g.add_edge(u, v);
        }
    } else {
        let mut idx = 0u64;
        for u in 0..n {
            for v in u + 1..n {
                if rng::indexed_unit(gseed, idx) < q {
                    g.add_edge(u, v);
                }
                idx += 1;
            }
        }
    }
    Ok(g)
}

/// Which property a scan estimates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PropertyKind {
    Exact,
    Eps { eps: f64 },
    ExactForG,
    EpsForG { eps: f64 },
}

impl PropertyKind {
    pub fn needs_host(&self) -> bool {
        matches!(self, PropertyKind::ExactForG | PropertyKind::EpsForG { .. })
    }

    /// Column encoding used in curve CSV files.
    pub fn column(&self) -> String {
        match self {
            PropertyKind::Exact => "exact".into(),
            PropertyKind::Eps { eps } => format!("eps({})", crate::io::fmt_f64(*eps)),
            PropertyKind::ExactForG => "exact-for-g".into(),
            PropertyKind::EpsForG { eps } => format!("eps-for-g({})", crate::io::fmt_f64(*eps)),
        }
    }

    pub fn parse_column(s: &str) -> Result<PropertyKind> {
        let parse_eps = |inner: &str| -> Result<f64> {
            inner
                .parse::<f64>()
                .map_err(|e| Error::parameter(format!("bad eps in property column: {e}")))
        };
        if s == "exact" {
            Ok(PropertyKind::Exact)
        } else if s == "exact-for-g" {
            Ok(PropertyKind::ExactForG)
        } else if let Some(rest) = s.strip_prefix("eps(").and_then(|r| r.strip_suffix(')')) {
            Ok(PropertyKind::Eps { eps: parse_eps(rest)? })
        } else if let Some(rest) = s.strip_prefix("eps-for-g(").and_then(|r| r.strip_suffix(')')) {
            Ok(PropertyKind::EpsForG { eps: parse_eps(rest)? })
        } else {
            Err(Error::parameter(format!("unknown property column {s:?}")))
        }
    }
}

/// Solver decides exactly (tri-state); filter applies certified
/// necessary-condition refutations only and is optimistic otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecideMode {
    Solver,
    Filter,
}

impl DecideMode {
    pub fn column(&self) -> &'static str {
        match self {
            DecideMode::Solver => "solver",
            DecideMode::Filter => "filter",
        }
    }

    pub fn parse_column(s: &str) -> Result<DecideMode> {
        match s {
            "solver" => Ok(DecideMode::Solver),
            "filter" => Ok(DecideMode::Filter),
            _ => Err(Error::parameter(format!("unknown mode column {s:?}"))),
        }
    }
}

/// One estimated point of a threshold curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub n: usize,
    pub p: f64,
    pub q: Option<f64>,
    pub property: PropertyKind,
    pub mode: DecideMode,
    pub trials: u64,
    pub successes: u64,
    pub unknowns: u64,
}

impl CurvePoint {
    pub fn decided(&self) -> u64 {
        self.trials - self.unknowns
    }

    pub fn usable(&self) -> bool {
        self.decided() > 0
    }

    /// Fraction of decided trials where the property held; unknowns are
    /// excluded from the numerator and denominator.
    pub fn estimate(&self) -> f64 {
        if self.decided() == 0 {
            f64::NAN
        } else {
            self.successes as f64 / self.decided() as f64
        }
    }

    pub fn wilson(&self) -> (f64, f64) {
        wilson_interval(self.successes, self.decided(), Z95)
    }
}

/// Threshold curve over a sorted probability grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCurve {
    pub points: Vec<CurvePoint>,
}

/// Decides the property for a fixed hypergraph (and host, when relative).
fn decide_property(
    f: &UniformHypergraph,
    host: Option<&Graph>,
    property: PropertyKind,
    mode: DecideMode,
    budget: SearchBudget,
) -> Result<Verdict> {
    match mode {
        DecideMode::Solver => {
            let (v, _) = match (property, host) {
                (PropertyKind::Exact, None) => is_turannical(f, budget)?,
                (PropertyKind::Eps { eps }, None) => is_eps_turannical(f, eps, budget)?,
                (PropertyKind::ExactForG, Some(g)) => is_turannical_for(f, g, budget)?,
                (PropertyKind::EpsForG { eps }, Some(g)) => {
                    is_eps_turannical_for(f, g, eps, budget)?
                }
                _ => {
                    return Err(Error::parameter(
                        "property / host combination is inconsistent",))
                }
            };
            Ok(v)
        }
        DecideMode::Filter => filter_decide(f, host, property),
    }
}

/// Certified-refutation filters. A `Fails` from here is always confirmed by
/// the exact solver; a `Holds` is merely "not refuted cheaply".
fn filter_decide(
    f: &UniformHypergraph,
    host: Option<&Graph>,
    property: PropertyKind,
) -> Result<Verdict> {
    let n = f.n();
    let r = f.r();
    match (property, host) {
        (PropertyKind::Exact, None) => {
            // The sparse-witness construction embeds the pair-link test for
            // r=3 and the small-link bound otherwise; a returned graph is a
            // verified certificate of failure.
            if construct_sparse_witness(f)?.is_some() {
                return Ok(Verdict::Fails);
            }
            Ok(Verdict::Holds)
        }
        (PropertyKind::Eps { eps }, None) => {
            // Deleting one pair per hyperedge leaves >= C(n,2) - |E| edges.
            let eps_r = crate::ratio::Ratio::from_f64_snapped(eps)
                .ok_or_else(|| Error::parameter(format!("eps={eps} not representable")))?;
            let t = turan_number(r, n)?;
            let target =
                crate::ratio::Ratio::new(eps_r.num() + eps_r.den(), eps_r.den()).floor_mul(t) + 1;
            let lower = crate::combin::choose2(n as u64).saturating_sub(f.edge_count());
            if lower >= target {
                return Ok(Verdict::Fails);
            }
            Ok(Verdict::Holds)
        }
        (PropertyKind::ExactForG, Some(g)) | (PropertyKind::EpsForG { .. }, Some(g)) => {
            // One deletion per firing hyperedge keeps an undetected subgraph
            // with at least e(G) - detected_count edges.
            let fired = crate::detect::detected_clique_count(f, g)?;
            let lower = g.edge_count().saturating_sub(fired);
            let allowed = match property {
                PropertyKind::ExactForG => {
                    let cut = crate::solver::max_partition_edges(g, r - 1, None)?;
                    if !cut.optimal {
                        return Ok(Verdict::Holds);
                    }
                    cut.value
                }
                PropertyKind::EpsForG { eps } => {
                    let eps_r = crate::ratio::Ratio::from_f64_snapped(eps)
                        .ok_or_else(|| Error::parameter(format!("eps={eps} not representable")))?;
                    let factor = crate::ratio::Ratio::new(
                        (eps_r.num() + eps_r.den()) * (r as i128 - 2),
                        eps_r.den() * (r as i128 - 1),
                    );
                    if factor.ge_frac(1, 1) {
                        return Ok(Verdict::Holds);
                    }
                    factor.floor_mul(g.edge_count())
                }
                _ => unreachable!(),
            };
            if lower > allowed {
                return Ok(Verdict::Fails);
            }
            Ok(Verdict::Holds)
        }
        _ => Err(Error::parameter(
            "property / host combination is inconsistent",)),
    }
}

/// Per-trial verdicts across a coupled p-grid. The hypergraph at a larger p
/// is a superset, and every property here is monotone in the hypergraph, so
/// a certified `Holds` propagates to all larger p without re-solving.
#[allow(clippy::too_many_arguments)]
fn trial_verdicts(
    r: usize,
    n: usize,
    p_grid: &[f64],
    host: Option<&Graph>,
    property: PropertyKind,
    mode: DecideMode,
    trial_seed: u64,
    budget: SearchBudget,
) -> Result<Vec<Verdict>> {
    let total = binomial(n as u64, r as u64)?;
    if total > MAX_ENUMERATED {
        return Err(Error::parameter(format!(
            "C({n},{r}) = {total} candidate hyperedges is too large to enumerate"
        )));
    }
    let hseed = rng::hypergraph_seed(trial_seed);
    let mut draws: Vec<f64> = Vec::with_capacity(total as usize);
    for idx in 0..total {
        draws.push(rng::indexed_unit(hseed, idx));
    }
    let mut all_sets: Vec<Vec<usize>> = Vec::with_capacity(total as usize);
    crate::combin::for_each_combination(n, r, |c| all_sets.push(c.to_vec()));

    let mut verdicts = Vec::with_capacity(p_grid.len());
    let mut settled_holds = false;
    for &p in p_grid {
        if settled_holds {
            verdicts.push(Verdict::Holds);
            continue;
        }
        let edges: Vec<Vec<usize>> = all_sets
            .iter()
            .zip(&draws)
            .filter(|(_, &u)| u < p)
            .map(|(c, _)| c.clone())
            .collect();
        let f = UniformHypergraph::from_sorted_edges(r, n, edges);
        let v = decide_property(&f, host, property, mode, budget)?;
        if v == Verdict::Holds {
            settled_holds = true;
        }
        verdicts.push(v);
    }
    Ok(verdicts)
}

/// Estimate of the success probability at a single (p, q) point.
#[allow(clippy::too_many_arguments)]
pub fn estimate_success(
    r: usize,
    n: usize,
    p: f64,
    q: Option<f64>,
    property: PropertyKind,
    mode: DecideMode,
    trials: u64,
    master_seed: u64,
    budget: SearchBudget,
) -> Result<CurvePoint> {
    let curve = threshold_scan(r, n, &[p], q, property, mode, trials, master_seed, budget)?;
    Ok(curve.points.into_iter().next().unwrap())
}

/// Threshold curve over a sorted p-grid. Trials are embarrassingly
/// parallel; per-trial seeds are derived from the master seed and the
/// merge is an elementwise sum, so output is independent of thread count.
#[allow(clippy::too_many_arguments)]
pub fn threshold_scan(
    r: usize,
    n: usize,
    p_grid: &[f64],
    q: Option<f64>,
    property: PropertyKind,
    mode: DecideMode,
    trials: u64,
    master_seed: u64,
    budget: SearchBudget,
) -> Result<ThresholdCurve> {
    if r < 3 {
        return Err(Error::parameter(format!("r={r} must be at least 3")));
    }
    if p_grid.is_empty() {
        return Err(Error::parameter("empty probability grid"));
    }
    if p_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::parameter("p grid must be sorted ascending"));
    }
    for &p in p_grid {
        check_probability(p, "p")?;
    }
    if property.needs_host() != q.is_some() {
        return Err(Error::parameter(
            "relative properties need q, absolute ones must not set it",));
    }
    if let PropertyKind::EpsForG { eps } = property {
        check_eps_for_g(r, eps)?;
    }
    if let Some(q) = q {
        check_probability(q, "q")?;
    }

    let per_trial: Vec<Vec<Verdict>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let tseed = rng::trial_seed(master_seed, t);
            let host = match q {
                Some(q) => Some(sample_graph_with_seed(n, q, rng::graph_seed(tseed, 0))?),
                None => None,
            };
            trial_verdicts(r, n, p_grid, host.as_ref(), property, mode, tseed, budget)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut points = Vec::with_capacity(p_grid.len());
    for (i, &p) in p_grid.iter().enumerate() {
        let mut successes = 0u64;
        let mut unknowns = 0u64;
        for tv in &per_trial {
            match tv[i] {
                Verdict::Holds => successes += 1,
                Verdict::Fails => {}
                Verdict::Unknown => unknowns += 1,
            }
        }
        points.push(CurvePoint {
            n,
            p,
            q,
            property,
            mode,
            trials,
            successes,
            unknowns,
        });
    }
    Ok(ThresholdCurve { points })
}

/// Linear interpolation of the grid position where the estimate crosses
/// `level`, defined only when bracketed by points whose Wilson intervals
/// exclude `level` on opposite sides.
pub fn crossing_point_at(curve: &ThresholdCurve, level: f64) -> Option<f64> {
    let pts: Vec<&CurvePoint> = curve.points.iter().filter(|p| p.usable()).collect();
    if pts.len() < 2 {
        return None;
    }
    let below = pts
        .iter()
        .enumerate()
        .filter(|(_, p)| p.wilson().1 < level)
        .map(|(i, _)| i)
        .next_back()?;
    let above = pts
        .iter()
        .enumerate()
        .skip(below + 1)
        .find(|(_, p)| p.wilson().0 > level)
        .map(|(i, _)| i)?;
    // Walk the estimate path inside the bracket for the first crossing.
    for i in below..above {
        let (e0, e1) = (pts[i].estimate(), pts[i + 1].estimate());
        if e0 == level {
            return Some(pts[i].p);
        }
        if e0 < level && level <= e1 {
            if e1 == e0 {
                return Some(pts[i].p);
            }
            let t = (level - e0) / (e1 - e0);
            return Some(pts[i].p + t * (pts[i + 1].p - pts[i].p));
        }
    }
    None
}

/// Crossing of the 1/2 level, the finite-n threshold estimate p*.
pub fn crossing_point(curve: &ThresholdCurve) -> Option<f64> {
    crossing_point_at(curve, 0.5)
}

/// Joint threshold scale of the hypergraph/graph ensemble.
pub fn theta_q(r: usize, n: usize, q: f64) -> f64 {
    libm::pow(n as f64 * libm::pow(q, (r as f64 + 1.0) / 2.0), 2.0 - r as f64)
}

fn check_eps_for_g(r: usize, eps: f64) -> Result<()> {
    if eps >= 1.0 / (r as f64 - 2.0) {
        return Err(Error::parameter(format!(
            "eps={eps} >= 1/(r-2): the subgraph premise is never met and every \
             hypergraph is vacuously eps-Turánnical for G"
        )));
    }
    Ok(())
}

/// Scaling summary across n (and q, for joint scans).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingEntry {
    pub n: usize,
    pub q: Option<f64>,
    pub p_star: Option<f64>,
    pub theta: Option<f64>,
    /// `p_star / theta` when both are defined.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub entries: Vec<ScalingEntry>,
    /// Least-squares slope of log p* against log n, when >= 2 crossings.
    pub fitted_exponent: Option<f64>,
    pub predicted_exponent: f64,
}

/// Fits log p*(n) = a log n + b over entries with defined crossings.
pub fn fit_exponent(entries: &[(usize, f64)]) -> Option<f64> {
    if entries.len() < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = entries
        .iter()
        .map(|&(n, p)| (libm::log(n as f64), libm::log(p)))
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// Scaling report across n for a fixed absolute property: per-n crossings
/// plus the fitted log-log exponent against the predicted `2 - r`.
pub fn scaling_across_n(r: usize, crossings: &[(usize, Option<f64>)]) -> ScalingReport {
    let entries: Vec<ScalingEntry> = crossings
        .iter()
        .map(|&(n, p_star)| ScalingEntry {
            n,
            q: None,
            p_star,
            theta: None,
            ratio: None,
        })
        .collect();
    let defined: Vec<(usize, f64)> = crossings
        .iter()
        .filter_map(|&(n, p)| p.map(|p| (n, p)))
        .collect();
    ScalingReport {
        entries,
        fitted_exponent: fit_exponent(&defined),
        predicted_exponent: 2.0 - r as f64,
    }
}

/// Joint (p, q) scan: for each q, a threshold curve over the p-grid, with
/// fresh independent hypergraph and graph per trial, plus the scaling
/// report relating p*(q) to the joint threshold scale.
#[allow(clippy::too_many_arguments)]
pub fn joint_scan(
    r: usize,
    eps: f64,
    n: usize,
    p_grid: &[f64],
    q_grid: &[f64],
    trials: u64,
    master_seed: u64,
    budget: SearchBudget,
    mode: DecideMode,
) -> Result<(Vec<ThresholdCurve>, ScalingReport)> {
    check_eps_for_g(r, eps)?;
    if q_grid.is_empty() {
        return Err(Error::parameter("empty q grid"));
    }
    let mut curves = Vec::with_capacity(q_grid.len());
    let mut entries = Vec::with_capacity(q_grid.len());
    for (qi, &q) in q_grid.iter().enumerate() {
        // Distinct master seeds per q column give fresh graphs per cell.
        let col_seed = rng::mix64(master_seed ^ rng::mix64(qi as u64 + 1));
        let curve = threshold_scan(
            r,
            n,
            p_grid,
            Some(q),
            PropertyKind::EpsForG { eps },
            mode,
            trials,
            col_seed,
            budget,
        )?;
        let p_star = crossing_point(&curve);
        let theta = if q > 0.0 { Some(theta_q(r, n, q)) } else { None };
        entries.push(ScalingEntry {
            n,
            q: Some(q),
            p_star,
            theta,
            ratio: match (p_star, theta) {
                (Some(p), Some(t)) if t > 0.0 => Some(p / t),
                _ => None,
            },
        });
        curves.push(curve);
    }
    let report = ScalingReport {
        entries,
        fitted_exponent: None,
        predicted_exponent: 2.0 - r as f64,
    };
    Ok((curves, report))
}

/// Sharpness proxy: width of the p-interval where the estimate rises from
/// `0.1` to `0.9`. `None` components when a level is not bracketed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub n: usize,
    pub lo_cross: Option<f64>,
    pub hi_cross: Option<f64>,
    pub width: Option<f64>,
    pub curve: ThresholdCurve,
}

#[allow(clippy::too_many_arguments)]
pub fn sharpness_probe(
    r: usize,
    n: usize,
    p_grid: &[f64],
    property: PropertyKind,
    mode: DecideMode,
    trials: u64,
    master_seed: u64,
    budget: SearchBudget,
) -> Result<SharpnessReport> {
    let curve = threshold_scan(r, n, p_grid, None, property, mode, trials, master_seed, budget)?;
    let lo = crossing_point_at(&curve, 0.1);
    let hi = crossing_point_at(&curve, 0.9);
    let width = match (lo, hi) {
        (Some(a), Some(b)) => Some((b - a).max(0.0)),
        _ => None,
    };
    Ok(SharpnessReport {
        n,
        lo_cross: lo,
        hi_cross: hi,
        width,
        curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_probabilities() {
        let f = sample_hypergraph(3, 7, 1.0, 9).unwrap();
        assert_eq!(f.edge_count(), 35);
        let f = sample_hypergraph(3, 7, 0.0, 9).unwrap();
        assert_eq!(f.edge_count(), 0);
        let g = sample_graph(6, 1.0, 1).unwrap();
        assert_eq!(g.edge_count(), 15);
        assert_eq!(sample_graph(6, 0.0, 1).unwrap().edge_count(), 0);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_hypergraph(3, 10, 0.37, 123).unwrap();
        let b = sample_hypergraph(3, 10, 0.37, 123).unwrap();
        assert_eq!(a, b);
        let c = sample_hypergraph(3, 10, 0.37, 124).unwrap();
        assert_ne!(a, c);
        let g1 = sample_graph(12, 0.5, 7).unwrap();
        let g2 = sample_graph(12, 0.5, 7).unwrap();
        assert_eq!(g1.edges(), g2.edges());
    }

    #[test]
    fn binomial_mean_within_three_sigma() {
        // 1000 seeds at p=0.5 over C(10,3)=120 candidates.
        let total = 120.0;
        let p = 0.5;
        let mut sum = 0.0;
        let trials = 1000;
        for seed in 0..trials {
            sum += sample_hypergraph(3, 10, p, seed).unwrap().edge_count() as f64;
        }
        let mean = sum / trials as f64;
        let sigma = (total * p * (1.0 - p) / trials as f64).sqrt();
        assert!(
            (mean - total * p).abs() < 3.0 * sigma,
            "mean {mean} vs expected {}",
            total * p
        );
    }

    #[test]
    fn coupling_gives_sub_hypergraphs() {
        for seed in 0..10u64 {
            let lo = sample_hypergraph(3, 9, 0.2, seed).unwrap();
            let hi = sample_hypergraph(3, 9, 0.6, seed).unwrap();
            for e in lo.edges() {
                assert!(hi.contains_edge(e), "seed {seed}: coupling violated");
            }
        }
    }

    #[test]
    fn skip_sampling_matches_distribution_roughly() {
        // Geometric skipping engages below SKIP_THRESHOLD.
        let total = crate::combin::binomial(40, 3).unwrap() as f64;
        let p = 0.005;
        let mut sum = 0.0;
        let trials = 400;
        for seed in 0..trials {
            sum += sample_hypergraph(3, 40, p, seed).unwrap().edge_count() as f64;
        }
        let mean = sum / trials as f64;
        let sigma = (total * p / trials as f64).sqrt();
        assert!(
            (mean - total * p).abs() < 4.0 * sigma,
            "mean {mean} vs expected {}",
            total * p
        );
    }

    #[test]
    fn skip_sampled_edges_are_valid_and_sorted() {
        let f = sample_hypergraph(3, 30, 0.003, 5).unwrap();
        let mut prev: Option<&Vec<usize>> = None;
        for e in f.edges() {
            assert_eq!(e.len(), 3);
            assert!(e[0] < e[1] && e[1] < e[2] && e[2] < 30);
            if let Some(p) = prev {
                assert!(p < e);
            }
            prev = Some(e);
        }
    }

    #[test]
    fn estimate_at_p_one_is_certain() {
        let pt = estimate_success(
            3,
            6,
            1.0,
            None,
            PropertyKind::Exact,
            DecideMode::Solver,
            20,
            99,
            SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(pt.successes, 20);
        assert_eq!(pt.unknowns, 0);
        assert_eq!(pt.estimate(), 1.0);
    }

    #[test]
    fn estimate_at_p_zero_is_zero() {
        let pt = estimate_success(
            3,
            6,
            0.0,
            None,
            PropertyKind::Exact,
            DecideMode::Solver,
            10,
            7,
            SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(pt.successes, 0);
        assert_eq!(pt.estimate(), 0.0);
    }

    #[test]
    fn curve_is_monotone_per_trial() {
        let curve = threshold_scan(
            3,
            6,
            &[0.2, 0.5, 0.8],
            None,
            PropertyKind::Exact,
            DecideMode::Solver,
            40,
            11,
            SearchBudget::default(),
        )
        .unwrap();
        let e: Vec<f64> = curve.points.iter().map(|p| p.estimate()).collect();
        assert!(e[0] <= e[1] + 1e-12 && e[1] <= e[2] + 1e-12);
    }

    #[test]
    fn crossing_point_synthetic() {
        // Synthetic curve passing through 1/2 exactly at p = 0.4.
        let mk = |p: f64, succ: u64| CurvePoint {
            n: 8,
            p,
            q: None,
            property: PropertyKind::Exact,
            mode: DecideMode::Solver,
            trials: 400,
            successes: succ,
            unknowns: 0,
        };
        let curve = ThresholdCurve {
            points: vec![mk(0.3, 0), mk(0.4, 200), mk(0.5, 400)],
        };
        assert_eq!(crossing_point(&curve), Some(0.4));
        // Step curve: interpolation lands between the bracketing points.
        let curve = ThresholdCurve {
            points: vec![mk(0.3, 0), mk(0.5, 400)],
        };
        assert_eq!(crossing_point(&curve), Some(0.4));
        // No bracket: undefined.
        let curve = ThresholdCurve {
            points: vec![mk(0.3, 190), mk(0.5, 210)],
        };
        assert_eq!(crossing_point(&curve), None);
    }

    #[test]
    fn theta_arithmetic() {
        // r=3, n=10, q=0.25: (10 * 0.25^2)^(-1) = 1.6.
        let t = theta_q(3, 10, 0.25);
        assert!((t - 1.6).abs() < 1e-12, "theta={t}");
    }

    #[test]
    fn joint_scan_rejects_vacuous_eps() {
        let err = joint_scan(
            3,
            1.5,
            6,
            &[0.5],
            &[0.5],
            4,
            1,
            SearchBudget::default(),
            DecideMode::Solver,
        );
        assert!(err.is_err());
    }

    #[test]
    fn filter_never_refutes_what_solver_affirms() {
        // Filter soundness: a filter Fails implies the solver Fails.
        for seed in 0..40u64 {
            let f = sample_hypergraph(3, 8, 0.25, seed).unwrap();
            let filt = filter_decide(&f, None, PropertyKind::Exact).unwrap();
            if filt == Verdict::Fails {
                let (solv, _) = is_turannical(&f, SearchBudget::default()).unwrap();
                assert_eq!(solv, Verdict::Fails, "seed {seed}");
            }
        }
    }

    #[test]
    fn sharpness_degenerate_cases() {
        let mk = |p: f64, succ: u64| CurvePoint {
            n: 8,
            p,
            q: None,
            property: PropertyKind::Exact,
            mode: DecideMode::Solver,
            trials: 400,
            successes: succ,
            unknowns: 0,
        };
        // Synthetic step curve: width 0.
        let curve = ThresholdCurve {
            points: vec![mk(0.1, 0), mk(0.4, 40), mk(0.4000001, 360), mk(0.8, 400)],
        };
        let lo = crossing_point_at(&curve, 0.1).unwrap();
        let hi = crossing_point_at(&curve, 0.9).unwrap();
        assert!(hi - lo < 0.001);
        // Constant curve: undefined width.
        let curve = ThresholdCurve {
            points: vec![mk(0.1, 400), mk(0.8, 400)],
        };
        assert_eq!(crossing_point_at(&curve, 0.1), None);
    }

    #[test]
    fn exponent_fit_recovers_slope() {
        let entries: Vec<(usize, f64)> = vec![(10, 0.5), (20, 0.25), (40, 0.125)];
        let a = fit_exponent(&entries).unwrap();
        assert!((a - (-1.0)).abs() < 1e-9, "slope {a}");
        let report = scaling_across_n(3, &[(10, Some(0.5)), (20, Some(0.25)), (40, Some(0.125))]);
        assert_eq!(report.predicted_exponent, -1.0);
        assert!((report.fitted_exponent.unwrap() - (-1.0)).abs() < 1e-9);
        let partial = scaling_across_n(3, &[(10, Some(0.5)), (20, None)]);
        assert!(partial.fitted_exponent.is_none());
        assert_eq!(partial.entries.len(), 2);
    }

    #[test]
    fn joint_scan_small() {
        // Filter mode keeps this cheap; q = 1.0 column samples complete
        // host graphs.
        let (curves, report) = joint_scan(
            3,
            0.2,
            6,
            &[0.2, 0.9],
            &[0.6, 1.0],
            8,
            3,
            SearchBudget::default(),
            DecideMode::Filter,
        )
        .unwrap();
        assert_eq!(curves.len(), 2);
        assert_eq!(report.entries.len(), 2);
        assert_eq!(report.predicted_exponent, -1.0);
        for (curve, q) in curves.iter().zip([0.6, 1.0]) {
            assert_eq!(curve.points.len(), 2);
            for pt in &curve.points {
                assert_eq!(pt.q, Some(q));
                assert_eq!(pt.trials, 8);
            }
        }
        // theta is reported per q column.
        assert!(report.entries.iter().all(|e| e.theta.is_some()));
    }

    #[test]
    fn sharpness_probe_on_scan() {
        let rep = sharpness_probe(
            3,
            6,
            &[0.05, 0.5, 0.95],
            PropertyKind::Eps { eps: 0.25 },
            DecideMode::Solver,
            60,
            21,
            SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(rep.n, 6);
        assert_eq!(rep.curve.points.len(), 3);
        if let (Some(lo), Some(hi), Some(w)) = (rep.lo_cross, rep.hi_cross, rep.width) {
            assert!(lo <= hi && (w - (hi - lo)).abs() < 1e-12);
        }
    }
}
