//! Structural classification of graphs above the extremal edge count:
//! close partitions, the heavy-vertex / neighborhood-pair / partition
//! trichotomy, book dichotomies, counting checks, and the pair-degree
//! second-moment statistics.

use crate::cliques::{clique_count_at_vertex, count_cliques, max_book};
use crate::error::{Error, Result};
use crate::graph::{make_mask, Graph};
use crate::hypergraph::UniformHypergraph;
use crate::ratio::Ratio;
use crate::rng;
use crate::solver::max_partition_edges;
use crate::stats::{mean_ci, MeanCi, Z95};
use crate::turan::turan_number;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A close (r-1)-partition: exceptional set `parts[0]`, then the r-1
/// classes. Certifies the `eps` it was validated against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosePartition {
    pub parts: Vec<Vec<usize>>,
    pub eps: f64,
    pub noncrossing_edges: u64,
    pub crossing_nonedges: u64,
}

impl ClosePartition {
    /// Validates the partition against the four closeness conditions and
    /// computes the non-crossing edge and crossing non-edge counts.
    pub fn new(g: &Graph, parts: Vec<Vec<usize>>, eps: f64) -> Result<ClosePartition> {
        let (ok, violations) = check_close_partition(g, &parts, eps)?;
        if !ok {
            return Err(Error::parameter(format!(
                "partition is not {eps}-close: {violations:?}"
            )));
        }
        let (noncrossing, nonedges) = partition_counts(g, &parts);
        Ok(ClosePartition {
            parts,
            eps,
            noncrossing_edges: noncrossing,
            crossing_nonedges: nonedges,
        })
    }

    pub fn v0_size(&self) -> u64 {
        self.parts[0].len() as u64
    }
}

/// Non-crossing edges (inside a class `V_i`, i >= 1) and crossing
/// non-edges (missing between two distinct classes `V_i`, `V_j`, i, j >= 1).
fn partition_counts(g: &Graph, parts: &[Vec<usize>]) -> (u64, u64) {
    let mut noncrossing = 0u64;
    let mut nonedges = 0u64;
    for i in 1..parts.len() {
        noncrossing += g.edges_within(&parts[i]);
        for j in i + 1..parts.len() {
            let possible = parts[i].len() as u64 * parts[j].len() as u64;
            nonedges += possible - g.edges_between(&parts[i], &parts[j]);
        }
    }
    (noncrossing, nonedges)
}

/// A failed closeness condition, naming the offender.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum PartitionViolation {
    V0TooLarge { size: usize },
    PartTooSmall { part: usize, size: usize },
    V0DegreeTooHigh { vertex: usize, degree: usize },
    CrossDegreeTooLow { vertex: usize, part: usize, degree: usize },
}

fn snap(eps: f64) -> Result<Ratio> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::parameter(format!("eps={eps} must be positive")));
    }
    Ratio::from_f64_snapped(eps)
        .ok_or_else(|| Error::parameter(format!("eps={eps} is not representable")))
}

/// Checks the four conditions of an eps-close (r-1)-partition exactly
/// (eps is snapped to a rational first). `parts[0]` is the exceptional
/// set. Returns all violations, not just the first.
pub fn check_close_partition(
    g: &Graph,
    parts: &[Vec<usize>],
    eps: f64,
) -> Result<(bool, Vec<PartitionViolation>)> {
    let n = g.n();
    if parts.len() < 3 {
        return Err(Error::parameter(
            "need V_0 plus at least two classes",));
    }
    let mut seen = vec![false; n];
    for part in parts {
        for &v in part {
            if v >= n || seen[v] {
                return Err(Error::parameter(format!(
                    "parts do not partition the vertex set (vertex {v})"
                )));
            }
            seen[v] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::parameter("parts do not cover the vertex set"));
    }
    let e = snap(eps)?;
    let (a, b) = (e.num(), e.den());
    let r1 = (parts.len() - 1) as i128; // r - 1
    let n_i = n as i128;
    let mut violations = Vec::new();

    // (i) |V_0| <= eps^2 n  and  |V_i| >= (1-eps) n/(r-1).
    if (parts[0].len() as i128) * b * b > a * a * n_i {
        violations.push(PartitionViolation::V0TooLarge {
            size: parts[0].len(),
        });
    }
    for (i, part) in parts.iter().enumerate().skip(1) {
        if (part.len() as i128) * r1 * b < (b - a) * n_i {
            violations.push(PartitionViolation::PartTooSmall {
                part: i,
                size: part.len(),
            });
        }
    }
    // (ii) V_0 degrees low; crossing degrees high.
    for &v in &parts[0] {
        let d = g.degree(v) as i128;
        // deg(v) <= (1 - eps^2) (r-2)/(r-1) n
        if d * r1 * b * b > (b * b - a * a) * (r1 - 1) * n_i {
            violations.push(PartitionViolation::V0DegreeTooHigh {
                vertex: v,
                degree: d as usize,
            });
        }
    }
    let masks: Vec<Vec<u64>> = parts
        .iter()
        .map(|p| make_mask(n, p.iter().copied()))
        .collect();
    for i in 1..parts.len() {
        for &v in &parts[i] {
            for j in 1..parts.len() {
                if i == j {
                    continue;
                }
                let d = g.degree_in(v, &masks[j]) as i128;
                // deg(v, V_j) >= (1 - eps) |V_j|
                if d * b < (b - a) * parts[j].len() as i128 {
                    violations.push(PartitionViolation::CrossDegreeTooLow {
                        vertex: v,
                        part: j,
                        degree: d as usize,
                    });
                }
            }
        }
    }
    Ok((violations.is_empty(), violations))
}

/// Why no close partition was derived.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum DeriveFailure {
    /// Some vertex satisfied the degree rule for two classes.
    Overlap { vertices: Vec<usize> },
    /// The derived partition failed validation.
    Invalid { violations: Vec<PartitionViolation> },
}

#[derive(Clone, Debug)]
pub struct RuleSets {
    /// Vertices satisfying the degree rule for each class (may overlap).
    pub sets: Vec<Vec<usize>>,
    /// Number of rule sets each vertex belongs to.
    pub membership: Vec<u8>,
    pub base_parts: Vec<u8>,
    pub base_cut_optimal: bool,
}

/// The degree rule applied to a max-cut base partition: vertex v joins the
/// candidate class i when `deg(v, V \ U_i) >= ((r-2)/(r-1) - eps/4r) n`.
fn rule_sets(g: &Graph, r: usize, eps: Ratio) -> Result<RuleSets> {
    let n = g.n();
    let cut = max_partition_edges(g, r - 1, None)?;
    let (a, b) = (eps.num(), eps.den());
    let (r_i, n_i) = (r as i128, n as i128);
    let mut part_masks: Vec<Vec<u64>> = vec![make_mask(n, std::iter::empty()); r - 1];
    for v in 0..n {
        let p = cut.parts[v] as usize;
        part_masks[p][v / 64] |= 1 << (v % 64);
    }
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); r - 1];
    let mut membership = vec![0u8; n];
    #[allow(clippy::needless_range_loop)]
    for v in 0..n {
        let deg = g.degree(v) as i128;
        for i in 0..r - 1 {
            let toward = deg - g.degree_in(v, &part_masks[i]) as i128;
            // toward >= ((r-2)/(r-1) - eps/(4r)) n, cleared of denominators:
            // toward * (r-1) * 4r * b >= ((r-2) * 4r * b - (r-1) * a) * n
            if toward * (r_i - 1) * 4 * r_i * b >= ((r_i - 2) * 4 * r_i * b - (r_i - 1) * a) * n_i
            {
                sets[i].push(v);
                membership[v] += 1;
            }
        }
    }
    Ok(RuleSets {
        sets,
        membership,
        base_parts: cut.parts,
        base_cut_optimal: cut.optimal,
    })
}

/// Derives an eps-close (r-1)-partition: max-cut base partition, the
/// crossing-degree membership rule, then validation. Overlapping rule
/// sets and validation failures are reported, not guessed around.
pub fn derive_partition(
    g: &Graph,
    r: usize,
    eps: f64,
) -> Result<std::result::Result<ClosePartition, DeriveFailure>> {
    if r < 3 {
        return Err(Error::parameter(format!("r={r} must be at least 3")));
    }
    let eps_r = snap(eps)?;
    let rules = rule_sets(g, r, eps_r)?;
    let overlapping: Vec<usize> = (0..g.n()).filter(|&v| rules.membership[v] > 1).collect();
    if !overlapping.is_empty() {
        return Ok(Err(DeriveFailure::Overlap {
            vertices: overlapping,
        }));
    }
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); r];
    for v in 0..g.n() {
        if rules.membership[v] == 0 {
            parts[0].push(v);
        } else {
            let i = rules.sets.iter().position(|s| s.contains(&v)).unwrap();
            parts[i + 1].push(v);
        }
    }
    let (ok, violations) = check_close_partition(g, &parts, eps)?;
    if !ok {
        return Ok(Err(DeriveFailure::Invalid { violations }));
    }
    let (noncrossing, nonedges) = partition_counts(g, &parts);
    Ok(Ok(ClosePartition {
        parts,
        eps,
        noncrossing_edges: noncrossing,
        crossing_nonedges: nonedges,
    }))
}

/// Which structural case a graph falls into.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum StructureVerdict {
    /// Some vertex lies in at least `delta n^(r-1)` copies of `K_r`.
    VertexHeavy { vertex: usize, clique_count: u64 },
    /// Some edge lies in many copies of `K_r` (book dichotomy).
    BigBook { edge: (usize, usize), book: u64 },
    /// A vertex with two dense disjoint neighborhood slices (r = 3 only).
    NeighborhoodPair {
        vertex: usize,
        x: Vec<usize>,
        y: Vec<usize>,
        pair_product: u64,
        crossing_edges: u64,
    },
    /// A validated close partition.
    ClosePartition { partition: ClosePartition },
    /// No case applies; maxima are reported for inspection.
    None {
        max_vertex_cliques: u64,
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub verdict: StructureVerdict,
    pub warnings: Vec<String>,
}

/// Applies the structural case analysis in fixed order: vertex-heavy, then
/// (for r = 3) neighborhood pair, then close partition, then none.
pub fn classify(g: &Graph, r: usize, eps: f64, delta: f64) -> Result<ClassifyReport> {
    if r < 3 {
        return Err(Error::parameter(format!("r={r} must be at least 3")));
    }
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::parameter(format!("delta={delta} must be positive")));
    }
    let n = g.n();
    let eps_r = snap(eps)?;
    let delta_r = Ratio::from_f64_snapped(delta)
        .ok_or_else(|| Error::parameter(format!("delta={delta} is not representable")))?;

    let mut warnings = Vec::new();
    if n >= 1 {
        let t = turan_number(r, n)?;
        if g.edge_count() < t {
            warnings.push(format!(
                "premise e(G) >= t_r(n) fails: {} < {t}",
                g.edge_count()
            ));
        }
    }

    // Vertex heavy: clique_count(v) >= delta * n^(r-1).
    let mut max_count = 0u64;
    let mut max_vertex = 0usize;
    if r <= n {
        for v in 0..n {
            let c = clique_count_at_vertex(g, r, v)?;
            if c > max_count {
                max_count = c;
                max_vertex = v;
            }
        }
    }
    let n_pow = (n as i128).pow((r - 1) as u32);
    if max_count > 0 && (max_count as i128) * delta_r.den() >= delta_r.num() * n_pow {
        return Ok(ClassifyReport {
            verdict: StructureVerdict::VertexHeavy {
                vertex: max_vertex,
                clique_count: max_count,
            },
            warnings,
        });
    }

    let rules = rule_sets(g, r, eps_r)?;
    if !rules.base_cut_optimal {
        warnings.push("base max-cut is a local-search bound, not exact".into());
    }

    if r == 3 {
        if let Some(v) = neighborhood_pair(g, &rules, eps_r) {
            return Ok(ClassifyReport {
                verdict: v,
                warnings,
            });
        }
    }

    match derive_partition(g, r, eps)? {
        Ok(partition) => Ok(ClassifyReport {
            verdict: StructureVerdict::ClosePartition { partition },
            warnings,
        }),
        Err(failure) => Ok(ClassifyReport {
            verdict: StructureVerdict::None {
                max_vertex_cliques: max_count,
                detail: format!("{failure:?}"),
            },
            warnings,
        }),
    }
}

/// The r = 3 neighborhood-pair search: candidate vertices are those in two
/// rule sets, or rule-set leftovers with degree above the exceptional-set
/// bound; slices are the neighborhood intersections with the first two
/// rule sets, made disjoint.
fn neighborhood_pair(g: &Graph, rules: &RuleSets, eps: Ratio) -> Option<StructureVerdict> {
    let n = g.n();
    let (a, b) = (eps.num(), eps.den());
    let in_set0 = make_mask(n, rules.sets[0].iter().copied());
    let in_set1 = make_mask(n, rules.sets[1].iter().copied());
    let candidate = |v: usize| -> bool {
        if rules.membership[v] > 1 {
            return true;
        }
        if rules.membership[v] == 0 {
            // deg(v) > (1 - eps^2) (r-2)/(r-1) n, r = 3.
            let d = g.degree(v) as i128;
            return d * 2 * b * b > (b * b - a * a) * n as i128;
        }
        false
    };
    for v in 0..n {
        if !candidate(v) {
            continue;
        }
        let x: Vec<usize> = g.neighbors(v).filter(|&w| mask_has(&in_set0, w)).collect();
        let y: Vec<usize> = g
            .neighbors(v)
            .filter(|&w| mask_has(&in_set1, w) && !x.contains(&w))
            .collect();
        if x.is_empty() || y.is_empty() {
            continue;
        }
        let product = (x.len() * y.len()) as u64;
        // |X||Y| >= eps n^2 / 288
        if (product as i128) * 288 * b < a * (n as i128) * (n as i128) {
            continue;
        }
        let crossing = g.edges_between(&x, &y);
        // e(X,Y) >= (1 - 4 eps) |X||Y|
        if (crossing as i128) * b < (b - 4 * a) * product as i128 {
            continue;
        }
        return Some(StructureVerdict::NeighborhoodPair {
            vertex: v,
            x,
            y,
            pair_product: product,
            crossing_edges: crossing,
        });
    }
    None
}

fn mask_has(mask: &[u64], v: usize) -> bool {
    mask[v / 64] >> (v % 64) & 1 == 1
}

/// Report of the book dichotomy: the heaviest vertex, the biggest book,
/// and whether the book reaches `(1 - eps~)(n/(r-1))^(r-2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BookDichotomyReport {
    pub max_vertex_cliques: (usize, u64),
    pub max_book: Option<((usize, usize), u64)>,
    pub meets_bound: bool,
    pub verdict: StructureVerdict,
}

/// Requires `e(G) > t_r(n)`; refuses otherwise.
pub fn book_dichotomy(g: &Graph, r: usize, eps_tilde: f64) -> Result<BookDichotomyReport> {
    if r < 3 {
        return Err(Error::parameter(format!("r={r} must be at least 3")));
    }
    let n = g.n();
    let t = turan_number(r, n)?;
    if g.edge_count() <= t {
        return Err(Error::parameter(format!(
            "book dichotomy needs e(G) > t_r(n): {} <= {t}",
            g.edge_count()
        )));
    }
    if !(0.0..1.0).contains(&eps_tilde) {
        return Err(Error::parameter(format!(
            "eps~={eps_tilde} must lie in [0,1)"
        )));
    }
    let et = Ratio::from_f64_snapped(eps_tilde)
        .ok_or_else(|| Error::parameter(format!("eps~={eps_tilde} is not representable")))?;

    let mut best_vertex = (0usize, 0u64);
    for v in 0..n {
        let c = clique_count_at_vertex(g, r, v)?;
        if c > best_vertex.1 {
            best_vertex = (v, c);
        }
    }
    let best_book = max_book(g, r)?;
    // book >= (1 - eps~) (n/(r-1))^(r-2), cleared of denominators:
    // book * b * (r-1)^(r-2) >= (b - a) * n^(r-2)
    let meets = match best_book {
        Some((_, book)) => {
            let lhs = (book as i128) * et.den() * ((r as i128) - 1).pow((r - 2) as u32);
            let rhs = (et.den() - et.num()) * (n as i128).pow((r - 2) as u32);
            lhs >= rhs
        }
        None => false,
    };
    let verdict = match (meets, best_book) {
        (true, Some((edge, book))) => StructureVerdict::BigBook { edge, book },
        _ => StructureVerdict::None {
            max_vertex_cliques: best_vertex.1,
            detail: "no edge reaches the book bound".into(),
        },
    };
    Ok(BookDichotomyReport {
        max_vertex_cliques: best_vertex,
        max_book: best_book,
        meets_bound: meets,
        verdict,
    })
}

/// Measured partition-counting quantities with per-inequality pass flags.
/// Precondition failures are reported as caveats; the checks still run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingReport {
    pub noncrossing_edges: u64,
    pub crossing_nonedges: u64,
    pub v0_size: u64,
    pub clique_count: u64,
    /// `l >= |V_0| + k + 1`.
    pub lk_inequality_holds: bool,
    /// clique count >= l (n/(2r-2))^(r-2).
    pub clique_bound_holds: bool,
    pub caveats: Vec<String>,
}

#[allow(clippy::int_plus_one)] // the inequality is checked in its stated form
pub fn counting_checks(g: &Graph, partition: &ClosePartition, r: usize) -> Result<CountingReport> {
    if r < 3 {
        return Err(Error::parameter(format!("r={r} must be at least 3")));
    }
    if partition.parts.len() != r {
        return Err(Error::parameter(format!(
            "partition has {} classes, expected r-1={}",
            partition.parts.len() - 1,
            r - 1
        )));
    }
    let n = g.n();
    let mut caveats = Vec::new();
    let t = turan_number(r, n)?;
    if g.edge_count() <= t {
        caveats.push(format!("premise e(G) > t_r(n) fails: {} <= {t}", g.edge_count()));
    }
    let eps = snap(partition.eps)?;
    if !eps.cmp_frac(1, 2 * r as i128).is_lt() {
        caveats.push(format!("eps={} is not below 1/(2r)", partition.eps));
    }
    // n >= 2 r^3 / eps^2  <=>  n a^2 >= 2 r^3 b^2
    if (n as i128) * eps.num() * eps.num() < 2 * (r as i128).pow(3) * eps.den() * eps.den() {
        caveats.push(format!("n={n} is below 2r^3/eps^2"));
    }

    let (ell, k) = partition_counts(g, &partition.parts);
    let v0 = partition.v0_size();
    let cliques = count_cliques(g, r);
    let lk = ell >= v0 + k + 1;
    // cliques >= ell (n/(2r-2))^(r-2), cleared of denominators.
    let lhs = (cliques as u128) * ((2 * r as u128) - 2).pow((r - 2) as u32);
    let rhs = (ell as u128) * (n as u128).pow((r - 2) as u32);
    Ok(CountingReport {
        noncrossing_edges: ell,
        crossing_nonedges: k,
        v0_size: v0,
        clique_count: cliques,
        lk_inequality_holds: lk,
        clique_bound_holds: lhs >= rhs,
        caveats,
    })
}

/// Deterministic inner sum of the boundedness statistic:
/// `sum over ordered pairs (u, v), u != v, of deg_i(u, v, G)^2`.
pub fn deg_i_square_sum(f: &UniformHypergraph, g: &Graph, i: u64) -> u64 {
    let n = f.n();
    let mut deg = vec![0u64; n * n];
    for e in f.edges() {
        let inside = g.edges_within(e);
        for (ai, &a) in e.iter().enumerate() {
            for &b in &e[ai + 1..] {
                let minus_pair = inside - u64::from(g.has_edge(a, b));
                if minus_pair >= i {
                    deg[a * n + b] += 1;
                }
            }
        }
    }
    deg.iter().map(|&d| 2 * d * d).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuEstimate {
    pub mean: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub trials: u64,
}

/// Monte Carlo estimate of `mu_i = E[sum deg_i^2(u, v, G(n,q))]` over
/// seeded G(n, q) samples. Trials use seeds derived as `seed XOR trial`,
/// so the estimate is independent of scheduling.
pub fn mu_i_estimate(
    f: &UniformHypergraph,
    q: f64,
    i: u64,
    trials: u64,
    seed: u64,
) -> Result<MuEstimate> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::parameter(format!("q={q} must lie in [0,1]")));
    }
    if trials == 0 {
        return Err(Error::parameter("trials must be at least 1"));
    }
    let max_i = f.r() as u64 * (f.r() as u64 - 1) / 2 - 1;
    if i < 1 || i > max_i {
        return Err(Error::parameter(format!(
            "i={i} must lie in 1..=C(r,2)-1={max_i}"
        )));
    }
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = crate::experiments::sample_graph(f.n(), q, rng::trial_seed(seed, t))?;
            Ok(deg_i_square_sum(f, &g, i) as f64)
        })
        .collect::<Result<Vec<_>>>()?;
    let MeanCi {
        mean,
        lo,
        hi,
        trials,
    } = mean_ci(&values, Z95);
    Ok(MuEstimate {
        mean,
        ci_lo: lo,
        ci_hi: hi,
        trials,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuBoundReport {
    pub estimate: MuEstimate,
    pub q: f64,
    pub i: u64,
    pub k_constant: f64,
    /// `K q^(2i) e(F)^2 / n^2`.
    pub bound: f64,
    /// Upper confidence limit of the estimate lies within the bound.
    pub within_bound: bool,
}

/// Compares the estimate's upper confidence limit against the boundedness
/// inequality `mu_i <= K q^(2i) e(F)^2 / n^2`.
pub fn boundedness_check(
    f: &UniformHypergraph,
    q: f64,
    i: u64,
    trials: u64,
    seed: u64,
    k_constant: f64,
) -> Result<MuBoundReport> {
    let estimate = mu_i_estimate(f, q, i, trials, seed)?;
    let e = f.edge_count() as f64;
    let n = f.n() as f64;
    let bound = k_constant * libm::pow(q, 2.0 * i as f64) * e * e / (n * n);
    Ok(MuBoundReport {
        within_bound: estimate.ci_hi <= bound,
        estimate,
        q,
        i,
        k_constant,
        bound,
    })
}
