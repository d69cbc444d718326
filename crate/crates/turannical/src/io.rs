//! JSON and CSV codecs and the run manifest.
//!
//! Outputs are built fully in memory and written in one shot, so a failure
//! never leaves partial output behind. Floats serialize with 17 significant
//! digits and round-trip exactly.

use crate::error::{Error, Result};
use crate::experiments::{CurvePoint, DecideMode, PropertyKind, ThresholdCurve};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// 17 significant digits; parses back to the identical bit pattern.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphDto {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct HypergraphDto {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

fn byte_offset(input: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let mut offset = 0;
    for (i, l) in input.lines().enumerate() {
        if i + 1 == line {
            return offset + column.saturating_sub(1).min(l.len());
        }
        offset += l.len() + 1;
    }
    input.len()
}

fn parse_dto<'a, T: Deserialize<'a>>(input: &'a str, what: &'static str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(input);
    serde_path_to_error::deserialize(de).map_err(|err| {
        let inner = err.inner();
        Error::Json {
            what,
            offset: byte_offset(input, inner.line(), inner.column()),
            path: err.path().to_string(),
            message: inner.to_string(),
        }
    })
}

/// Parses `{"n": int, "edges": [[u,v],...]}`, rejecting out-of-range,
/// self-loop and duplicate entries.
pub fn parse_graph_json(input: &str) -> Result<Graph> {
    let dto: GraphDto = parse_dto(input, "graph")?;
    Graph::from_edges(dto.n, &dto.edges)
}

/// Canonical graph JSON: edges sorted lexicographically.
pub fn emit_graph_json(g: &Graph) -> String {
    let dto = GraphDto {
        n: g.n(),
        edges: g.edges(),
    };
    serde_json::to_string(&dto).expect("graph serialization cannot fail")
}

pub fn graph_to_value(g: &Graph) -> serde_json::Value {
    serde_json::json!({ "n": g.n(), "edges": g.edges() })
}

/// Parses `{"r": int, "n": int, "edges": [[v1,..,vr],...]}`, rejecting
/// malformed, out-of-range or duplicate entries.
pub fn parse_hypergraph_json(input: &str) -> Result<UniformHypergraph> {
    let dto: HypergraphDto = parse_dto(input, "hypergraph")?;
    UniformHypergraph::new(dto.r, dto.n, dto.edges)
}

pub fn emit_hypergraph_json(f: &UniformHypergraph) -> String {
    let dto = HypergraphDto {
        r: f.r(),
        n: f.n(),
        edges: f.edges().to_vec(),
    };
    serde_json::to_string(&dto).expect("hypergraph serialization cannot fail")
}

pub const CURVE_CSV_HEADER: &str =
    "n,p,q,property,mode,trials,successes,unknowns,estimate,ci_lo,ci_hi";

/// Serializes curve points with the fixed column order
/// `n,p,q,property,mode,trials,successes,unknowns,estimate,ci_lo,ci_hi`.
pub fn curve_to_csv(points: &[CurvePoint]) -> String {
    let mut out = String::with_capacity(64 * (points.len() + 1));
    out.push_str(CURVE_CSV_HEADER);
    out.push('\n');
    for pt in points {
        let (lo, hi) = pt.wilson();
        let q = pt.q.map(fmt_f64).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            pt.n,
            fmt_f64(pt.p),
            q,
            pt.property.column(),
            pt.mode.column(),
            pt.trials,
            pt.successes,
            pt.unknowns,
            fmt_f64(pt.estimate()),
            fmt_f64(lo),
            fmt_f64(hi),
        ));
    }
    out
}

/// Parses a curve CSV back into points; estimate and interval columns are
/// checked for consistency against the counts.
pub fn parse_curve_csv(input: &str) -> Result<Vec<CurvePoint>> {
    let mut lines = input.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CURVE_CSV_HEADER => {}
        other => {
            return Err(Error::Csv {
                line: 1,
                message: format!("bad header: {:?}", other.map(|(_, h)| h)),
            })
        }
    }
    let mut points = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 11 {
            return Err(Error::Csv {
                line: lineno,
                message: format!("expected 11 columns, got {}", cols.len()),
            });
        }
        let bad = |what: &str, e: String| Error::Csv {
            line: lineno,
            message: format!("{what}: {e}"),
        };
        let pt = CurvePoint {
            n: cols[0].parse().map_err(|e: std::num::ParseIntError| bad("n", e.to_string()))?,
            p: cols[1].parse().map_err(|e: std::num::ParseFloatError| bad("p", e.to_string()))?,
            q: if cols[2].is_empty() {
                None
            } else {
                Some(cols[2].parse().map_err(|e: std::num::ParseFloatError| {
                    bad("q", e.to_string())
                })?)
            },
            property: PropertyKind::parse_column(cols[3])?,
            mode: DecideMode::parse_column(cols[4])?,
            trials: cols[5].parse().map_err(|e: std::num::ParseIntError| bad("trials", e.to_string()))?,
            successes: cols[6].parse().map_err(|e: std::num::ParseIntError| bad("successes", e.to_string()))?,
            unknowns: cols[7].parse().map_err(|e: std::num::ParseIntError| bad("unknowns", e.to_string()))?,
        };
        let est: f64 = cols[8].parse().map_err(|e: std::num::ParseFloatError| bad("estimate", e.to_string()))?;
        if !(est.is_nan() && pt.estimate().is_nan()) && est != pt.estimate() {
            return Err(Error::Csv {
                line: lineno,
                message: "estimate column inconsistent with counts".into(),
            });
        }
        points.push(pt);
    }
    Ok(points)
}

pub fn curve_csv(curve: &ThresholdCurve) -> String {
    curve_to_csv(&curve.points)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Run manifest emitted alongside every CSV: tool version, the fully
/// resolved configuration, seed, wall time, and output digests.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config: serde_json::Value,
    pub master_seed: u64,
    pub wall_time_ms: u64,
    pub outputs: Vec<OutputDigest>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
}

impl RunManifest {
    pub fn new(config: serde_json::Value, master_seed: u64) -> RunManifest {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            master_seed,
            wall_time_ms: 0,
            outputs: Vec::new(),
        }
    }

    pub fn add_output(&mut self, path: &str, bytes: &[u8]) {
        self.outputs.push(OutputDigest {
            path: path.to_string(),
            sha256: sha256_hex(bytes),
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serialization cannot fail")
    }
}

/// Writes the whole buffer through a temporary file and an atomic rename.
pub fn write_output(path: &std::path::Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
