use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use packing_forge::bounds::FormulaParams;
use packing_forge::independence::{extract, trivial_lower_bound, Algorithm};
use packing_forge::oracle::{mc_packing_density, McEstimate};
use packing_forge::packing::{assemble, Packing, VerificationReport};
use packing_forge::{Budget, PackingParams};
use serde::Serialize;

use crate::args::BuildArgs;
use crate::commands::bounds::BoundsOutput;
use crate::commands::{construction_params, graph};
use crate::exit::{Failure, Outcome};
use crate::output::{to_json, Output, Table};

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: u64,
    pub max_degree: usize,
    pub average_degree: f64,
}

#[derive(Debug, Serialize)]
pub struct PackingSummary {
    pub centers: usize,
    pub density: f64,
    /// Density divided by the unit-ball volume, as an exact fraction.
    pub density_over_ball_volume: String,
    pub checksum: String,
}

#[derive(Debug, Serialize)]
struct BuildOutput {
    command: &'static str,
    params: PackingParams,
    algorithm: Algorithm,
    graph: GraphSummary,
    independent_set_size: usize,
    maximal: bool,
    /// `|V| / (d_max + 1)`, guaranteed for any maximal independent set.
    trivial_lower_bound: f64,
    packing: PackingSummary,
    verification: VerificationReport,
    mc_density: Option<McEstimate>,
    packing_file: String,
    bounds_file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

pub fn packing_summary(pk: &Packing) -> PackingSummary {
    PackingSummary {
        centers: pk.len(),
        density: pk.density_value(),
        density_over_ball_volume: pk.density().ratio().to_string(),
        checksum: pk.checksum(),
    }
}

pub fn bounds_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".bounds.json");
    PathBuf::from(name)
}

/// Monte Carlo density if requested; `None` when disabled.
pub fn mc_density(pk: &Packing, samples: u64, seed: u64) -> Outcome<Option<McEstimate>> {
    if samples == 0 {
        return Ok(None);
    }
    Ok(Some(mc_packing_density(pk, samples, seed)?))
}

pub fn run(args: &BuildArgs, out: &Output, seed: u64) -> Outcome {
    let budget = Budget::default().with_max_vertices(args.budget_vertices);
    let p = construction_params(&args.params, &budget)?;
    let g = graph(&p, &budget)?;
    let algorithm = Algorithm::from(args.algo);
    let set = extract(&g, algorithm, args.node_limit)?;
    let pk = assemble(&p, &set, &g)?;

    let verification = pk.verify();
    if !verification.passed {
        let detail = match verification.overlaps.first() {
            Some(o) => format!("centers {} and {} overlap", o.first, o.second),
            None => format!("center {} lies outside the inner cube", verification.outside[0]),
        };
        return Err(Failure::Verification(format!("assembled packing failed: {detail}")));
    }
    let mc = mc_density(&pk, args.mc_samples, seed)?;

    let bounds_file = bounds_path(&args.out);
    pk.export(BufWriter::new(File::create(&args.out).map_err(|e| {
        Failure::Usage(format!("cannot create {}: {e}", args.out.display()))
    })?))?;
    let bounds = BoundsOutput::new(&FormulaParams::from(&p), out);
    std::fs::write(&bounds_file, to_json(&bounds)?)?;

    let report = BuildOutput {
        command: "build",
        params: p,
        algorithm,
        graph: GraphSummary {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            max_degree: g.max_degree(),
            average_degree: g.average_degree(),
        },
        independent_set_size: set.len(),
        maximal: set.is_maximal(),
        trivial_lower_bound: trivial_lower_bound(g.vertex_count() as u64, g.max_degree() as u64),
        packing: packing_summary(&pk),
        verification,
        mc_density: mc,
        packing_file: args.out.display().to_string(),
        bounds_file: bounds_file.display().to_string(),
        timestamp: out.timestamp(),
    };

    let mut t = Table::new();
    t.heading(format!("build n = {}, r = {}, s = {} ({})", p.n, p.r, p.s, algorithm));
    t.row("vertices", report.graph.vertices)
        .row("edges", report.graph.edges)
        .row("max_degree", report.graph.max_degree)
        .num("average_degree", report.graph.average_degree)
        .row("centers", report.packing.centers)
        .row("maximal", report.maximal)
        .num("trivial_lower_bound", report.trivial_lower_bound)
        .num("density", report.packing.density)
        .row("density/V_n", &report.packing.density_over_ball_volume);
    if let Some(m) = &report.mc_density {
        t.row(
            "mc_density",
            format!("{} ± {} ({} samples)", crate::output::sig(m.mean), crate::output::sig(m.std_error), m.samples),
        );
    }
    t.row("verification", if report.verification.passed { "pass" } else { "FAIL" })
        .row(
            "min_squared_distance",
            report.verification.min_squared_distance.map_or("n/a".to_string(), |d| d.to_string()),
        )
        .row("packing_file", &report.packing_file)
        .row("bounds_file", &report.bounds_file)
        .row("sha256", &report.packing.checksum);
    if let Some(ts) = report.timestamp {
        t.row("timestamp", ts);
    }
    out.emit(&report, &t)
}
