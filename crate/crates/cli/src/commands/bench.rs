use std::time::Instant;

use packing_forge::bounds::{complexity_estimate, measured_work, FormulaParams};
use packing_forge::independence::{extract, Algorithm};
use packing_forge::{Budget, Error, PackingParams};
use serde::Serialize;

use crate::args::BenchArgs;
use crate::commands::{construction_params, graph};
use crate::exit::Outcome;
use crate::output::{sig, Output, Table};

#[derive(Debug, Serialize)]
struct AlgorithmRun {
    algorithm: Algorithm,
    /// `None` when the exact solver hit its node limit.
    size: Option<usize>,
    seconds: Option<f64>,
    note: Option<String>,
}

#[derive(Debug, Serialize)]
struct BenchOutput {
    command: &'static str,
    params: PackingParams,
    vertices: usize,
    edges: u64,
    max_degree: usize,
    graph_seconds: Option<f64>,
    /// `log2(d_av |E| + |V|)` on the built graph.
    measured_work_log2: f64,
    /// The formula estimate of the same quantity with volume bounds for degrees.
    estimated_work_log2: f64,
    runs: Vec<AlgorithmRun>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

pub fn run(args: &BenchArgs, out: &Output) -> Outcome {
    let budget = Budget::default().with_max_vertices(args.budget_vertices);
    let p = construction_params(&args.params, &budget)?;

    let start = Instant::now();
    let g = graph(&p, &budget)?;
    let graph_seconds = start.elapsed().as_secs_f64();

    let mut algorithms = vec![Algorithm::LexGreedy, Algorithm::MinDegree];
    if !args.no_exact {
        algorithms.push(Algorithm::Exact);
    }
    let mut runs = Vec::new();
    for algorithm in algorithms {
        let start = Instant::now();
        let result = extract(&g, algorithm, args.node_limit);
        let seconds = start.elapsed().as_secs_f64();
        runs.push(match result {
            Ok(set) => AlgorithmRun {
                algorithm,
                size: Some(set.len()),
                seconds: out.timing(seconds),
                note: None,
            },
            Err(e @ Error::SearchBudget(_)) => AlgorithmRun {
                algorithm,
                size: None,
                seconds: out.timing(seconds),
                note: Some(e.to_string()),
            },
            Err(e) => return Err(e.into()),
        });
    }

    let report = BenchOutput {
        command: "bench",
        params: p,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        max_degree: g.max_degree(),
        graph_seconds: out.timing(graph_seconds),
        measured_work_log2: measured_work(&g).log2(),
        estimated_work_log2: complexity_estimate(&FormulaParams::from(&p)).work_log2,
        runs,
        timestamp: out.timestamp(),
    };

    let mut t = Table::new();
    t.heading(format!("bench n = {}, r = {}, s = {}", p.n, p.r, p.s));
    t.row("vertices", report.vertices)
        .row("edges", report.edges)
        .row("max_degree", report.max_degree)
        .opt("graph_seconds", report.graph_seconds, "-")
        .num("measured_work_log2", report.measured_work_log2)
        .num("estimated_work_log2", report.estimated_work_log2);
    for run in &report.runs {
        let size = run.size.map_or_else(|| "-".to_string(), |s| s.to_string());
        let time = run.seconds.map_or_else(String::new, |s| format!(" in {}s", sig(s)));
        let note = run.note.as_ref().map_or_else(String::new, |n| format!(" ({n})"));
        t.row(run.algorithm.name(), format!("{size}{time}{note}"));
    }
    if let Some(ts) = report.timestamp {
        t.row("timestamp", ts);
    }
    out.emit(&report, &t)
}
