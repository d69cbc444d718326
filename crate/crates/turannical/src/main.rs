use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use turannical::error::{Error, Result};
use turannical::experiments::{self, DecideMode, PropertyKind};
use turannical::io;
use turannical::solver::{self, SearchBudget, Verdict, WitnessReport};
use turannical::structure;
use turannical::turan;

#[derive(Parser)]
#[command(
    name = "turannical",
    version,
    about = "Turánnical restriction hypergraphs: extremal formulas, exact decisions, \
             structure analysis, and seeded threshold experiments"
)]
struct Cli {
    /// Cap worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Turán number t_r(n).
    Turan {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    /// Print the restricted extremal number; optionally emit its extremal
    /// graph (the restricted set is the first m vertices).
    Turm {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        emit_graph: Option<PathBuf>,
    },
    /// Does the hypergraph detect the graph?
    Detect {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Decide the (eps-)Turánnical property, absolutely or for a host graph.
    /// Exit code 3 on an unknown (budget-exhausted) verdict.
    Decide {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        eps: Option<f64>,
        /// Search node budget (default 10^7).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Structural classification of a graph.
    Classify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: f64,
    },
    /// Monte Carlo estimate of the pair-degree second moment and its
    /// boundedness check.
    Mubound {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long = "K")]
        k_constant: f64,
    },
    /// Seeded threshold scan driven by a JSON config; writes curve CSV plus
    /// a run manifest.
    Scan {
        #[arg(long)]
        config: PathBuf,
    },
    /// Deterministic witness constructions.
    Witness {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long, value_parser = ["sparse", "deletion"])]
        kind: String,
    },
}

#[derive(Debug, Serialize, Deserialize)]
struct ScanConfig {
    r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_list: Option<Vec<usize>>,
    property: PropertySpec,
    grid: GridSpec,
    trials: u64,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget: Option<u64>,
    mode: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct PropertySpec {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GridSpec {
    p: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<Vec<f64>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: failed to build thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::parameter(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, contents: &str) -> Result<()> {
    match out {
        Some(path) => io::write_output(path, contents),
        None => {
            print!("{contents}");
            if !contents.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn witness_report_json(verdict: Verdict, rep: &WitnessReport) -> serde_json::Value {
    json!({
        "verdict": verdict,
        "max_undetected_edges": rep.max_undetected_edges,
        "transversal_size": rep.transversal_size,
        "optimal": rep.optimal,
        "vacuous": rep.vacuous,
        "tau_lower_bound": rep.tau_lower_bound,
        "baseline": rep.baseline,
        "search_nodes": rep.nodes,
        "witness": io::graph_to_value(&rep.witness),
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Turan { r, n } => {
            let t = turan::turan_number(r, n)?;
            emit(&cli.out, &format!("{t}\n"))?;
            Ok(0)
        }
        Cmd::Turm { r, n, m, emit_graph } => {
            let value = turan::turm(r, n, m)?;
            if let Some(path) = emit_graph {
                let (g, _mset) = turan::turm_graph(r, n, m)?;
                io::write_output(&path, &io::emit_graph_json(&g))?;
            }
            emit(&cli.out, &format!("{value}\n"))?;
            Ok(0)
        }
        Cmd::Detect { hypergraph, graph } => {
            let f = io::parse_hypergraph_json(&read_to_string(&hypergraph)?)?;
            let g = io::parse_graph_json(&read_to_string(&graph)?)?;
            let mut res = turannical::detect::detects(&f, &g)?;
            res.detected_count = Some(turannical::detect::detected_clique_count(&f, &g)?);
            emit(&cli.out, &serde_json::to_string_pretty(&res).unwrap())?;
            Ok(0)
        }
        Cmd::Decide {
            hypergraph,
            graph,
            eps,
            budget,
        } => {
            let f = io::parse_hypergraph_json(&read_to_string(&hypergraph)?)?;
            let budget = SearchBudget::nodes(budget.unwrap_or(SearchBudget::default().max_nodes));
            let (verdict, report) = match (graph, eps) {
                (None, None) => solver::is_turannical(&f, budget)?,
                (None, Some(e)) => solver::is_eps_turannical(&f, e, budget)?,
                (Some(gp), None) => {
                    let g = io::parse_graph_json(&read_to_string(&gp)?)?;
                    solver::is_turannical_for(&f, &g, budget)?
                }
                (Some(gp), Some(e)) => {
                    let g = io::parse_graph_json(&read_to_string(&gp)?)?;
                    solver::is_eps_turannical_for(&f, &g, e, budget)?
                }
            };
            let out = witness_report_json(verdict, &report);
            emit(&cli.out, &serde_json::to_string_pretty(&out).unwrap())?;
            Ok(if verdict == Verdict::Unknown { 3 } else { 0 })
        }
        Cmd::Classify { graph, r, eps, delta } => {
            let g = io::parse_graph_json(&read_to_string(&graph)?)?;
            let report = structure::classify(&g, r, eps, delta)?;
            emit(&cli.out, &serde_json::to_string_pretty(&report).unwrap())?;
            Ok(0)
        }
        Cmd::Mubound {
            hypergraph,
            q,
            i,
            trials,
            seed,
            k_constant,
        } => {
            let f = io::parse_hypergraph_json(&read_to_string(&hypergraph)?)?;
            let report = structure::boundedness_check(&f, q, i, trials, seed, k_constant)?;
            emit(&cli.out, &serde_json::to_string_pretty(&report).unwrap())?;
            Ok(0)
        }
        Cmd::Scan { config } => {
            let out = cli.out.clone().ok_or_else(|| {
                Error::parameter("scan writes CSV plus a manifest; --out is required")
            })?;
            run_scan(&config, &out)?;
            Ok(0)
        }
        Cmd::Witness { hypergraph, kind } => {
            let f = io::parse_hypergraph_json(&read_to_string(&hypergraph)?)?;
            let t = turan::turan_number(f.r(), f.n())?;
            let value = match kind.as_str() {
                "sparse" => match solver::construct_sparse_witness(&f)? {
                    Some(w) => {
                        let verified = !turannical::detect::detects(&f, &w)?.detected;
                        json!({
                            "kind": "sparse",
                            "turan_number": t,
                            "edges": w.edge_count(),
                            "verified_undetected": verified,
                            "witness": io::graph_to_value(&w),
                        })
                    }
                    None => json!({
                        "kind": "sparse",
                        "turan_number": t,
                        "witness": null,
                        "note": "no qualifying small-link pair",
                    }),
                },
                "deletion" => {
                    let w = solver::construct_deletion_witness(&f)?;
                    let verified = !turannical::detect::detects(&f, &w)?.detected;
                    json!({
                        "kind": "deletion",
                        "turan_number": t,
                        "edges": w.edge_count(),
                        "verified_undetected": verified,
                        "witness": io::graph_to_value(&w),
                    })
                }
                other => return Err(Error::parameter(format!("unknown witness kind {other}"))),
            };
            emit(&cli.out, &serde_json::to_string_pretty(&value).unwrap())?;
            Ok(0)
        }
    }
}

fn parse_property(spec: &PropertySpec) -> Result<PropertyKind> {
    let need_eps = || {
        spec.eps
            .ok_or_else(|| Error::parameter(format!("property {} needs eps", spec.kind)))
    };
    match spec.kind.as_str() {
        "exact" => Ok(PropertyKind::Exact),
        "eps" => Ok(PropertyKind::Eps { eps: need_eps()? }),
        "exact-for-g" => Ok(PropertyKind::ExactForG),
        "eps-for-g" => Ok(PropertyKind::EpsForG { eps: need_eps()? }),
        other => Err(Error::parameter(format!("unknown property kind {other:?}"))),
    }
}

fn run_scan(config_path: &Path, out: &Path) -> Result<()> {
    let started = Instant::now();
    let raw = read_to_string(config_path)?;
    let config: ScanConfig = serde_json::from_str(&raw)
        .map_err(|e| Error::parameter(format!("bad scan config: {e}")))?;

    let ns: Vec<usize> = match (&config.n, &config.n_list) {
        (Some(n), None) => vec![*n],
        (None, Some(list)) if !list.is_empty() => list.clone(),
        _ => {
            return Err(Error::parameter(
                "config needs exactly one of \"n\" or a non-empty \"n_list\"",
            ))
        }
    };
    let property = parse_property(&config.property)?;
    let mode = DecideMode::parse_column(&config.mode)?;
    let budget = SearchBudget::nodes(config.budget.unwrap_or(SearchBudget::default().max_nodes));
    let q_grid: Vec<Option<f64>> = if property.needs_host() {
        match &config.grid.q {
            Some(qs) if !qs.is_empty() => qs.iter().map(|&q| Some(q)).collect(),
            _ => {
                return Err(Error::parameter(
                    "relative properties need a non-empty q grid",))
            }
        }
    } else {
        if config.grid.q.is_some() {
            return Err(Error::parameter(
                "absolute properties must not set a q grid",));
        }
        vec![None]
    };

    let mut points = Vec::new();
    for &n in &ns {
        for &q in &q_grid {
            let curve = experiments::threshold_scan(
                config.r,
                n,
                &config.grid.p,
                q,
                property,
                mode,
                config.trials,
                config.seed,
                budget,
            )?;
            points.extend(curve.points);
        }
    }

    let csv = io::curve_to_csv(&points);
    io::write_output(out, &csv)?;

    let mut manifest = io::RunManifest::new(serde_json::to_value(&config).unwrap(), config.seed);
    manifest.wall_time_ms = started.elapsed().as_millis() as u64;
    manifest.add_output(&out.display().to_string(), csv.as_bytes());
    let manifest_path = out.with_extension("manifest.json");
    io::write_output(&manifest_path, &manifest.to_json())?;
    Ok(())
}
