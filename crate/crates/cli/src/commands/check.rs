//! Property sweep over a fixed grid of small instances.

use packing_forge::bounds::{minkowski_density_guarantee, t_upper_generic, theorem1_constant, FormulaParams};
use packing_forge::geometry::{
    d_n_upper, intersection_volume_cylinder_bound, intersection_volume_exact, intersection_volume_relaxed_bound,
    CapGeometry,
};
use packing_forge::independence::{
    aks_lower_bound, exact_max_is, greedy_maximal_is, is_maximal, jv_lower_bound, min_degree_greedy_is,
    trivial_lower_bound, DEFAULT_NODE_LIMIT,
};
use packing_forge::lattice_graph::{build_graph, build_neighborhood_graph, count_ball_lattice_points, LatticeGraph};
use packing_forge::oracle::{brute_edges, brute_stats, mc_ball_intersection, mc_packing_density};
use packing_forge::packing::{assemble, Packing};
use packing_forge::{Budget, PackingParams, Result};
use serde::Serialize;

use crate::args::{CheckArgs, Grid};
use crate::exit::{Failure, Outcome};
use crate::output::{Output, Table};

/// `(n, r, s)` instances small enough for the exact solver and brute-force oracles.
const SMALL_INSTANCES: [(usize, u64, u64); 9] = [
    (1, 1, 8),
    (1, 2, 16),
    (2, 1, 2),
    (2, 1, 8),
    (2, 2, 10),
    (2, 2, 12),
    (2, 3, 12),
    (3, 1, 4),
    (3, 2, 4),
];

const VOLUME_DIMENSIONS: std::ops::RangeInclusive<usize> = 2..=6;
const VOLUME_DELTAS: [f64; 3] = [0.1, 0.25, 0.49];
const VOLUME_RHOS: [f64; 2] = [1.0, 3.5];
const VOLUME_SAMPLES: u64 = 200_000;
const DENSITY_SAMPLES: u64 = 200_000;
const SIGMAS: f64 = 3.0;

#[derive(Debug, Serialize)]
struct PropertyResult {
    name: &'static str,
    passed: bool,
    cases: usize,
    failures: usize,
    /// First failing case.
    culprit: Option<String>,
}

struct Property {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Property {
    fn new(name: &'static str) -> Self {
        Property {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Record a library error as a failed case.
    fn attempt<T>(&mut self, label: impl FnOnce() -> String, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.failures.push(format!("{}: {e}", label()));
                None
            }
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name,
            passed: self.failures.is_empty(),
            cases: self.cases,
            failures: self.failures.len(),
            culprit: self.failures.into_iter().next(),
        }
    }
}

#[derive(Debug, Serialize)]
struct CheckOutput {
    command: &'static str,
    grid: &'static str,
    seed: u64,
    properties: Vec<PropertyResult>,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn label(n: usize, r: u64, s: u64) -> String {
    format!("(n={n}, r={r}, s={s})")
}

fn small_graphs(prop: &mut Property) -> Vec<(PackingParams, LatticeGraph)> {
    SMALL_INSTANCES
        .iter()
        .filter_map(|&(n, r, s)| {
            let p = prop.attempt(|| label(n, r, s), PackingParams::new(n, r, s))?;
            let g = prop.attempt(|| label(n, r, s), build_graph(&p, &Budget::default()))?;
            Some((p, g))
        })
        .collect()
}

fn constant() -> Property {
    let mut prop = Property::new("theorem1-constant");
    let c = theorem1_constant();
    prop.case((c * 1e4).trunc() == 103.0 && (c - 0.0103759).abs() < 1e-7, || {
        format!("constant = {c}")
    });
    prop
}

fn minkowski_limit() -> Property {
    let mut prop = Property::new("minkowski-limit");
    let gap = |n: u64| {
        let p = FormulaParams::paper_curve(n).expect("positive n");
        (minkowski_density_guarantee(&p) + n as f64).abs()
    };
    let gaps = [gap(50), gap(100), gap(200)];
    prop.case(gaps[2] <= 0.1, || format!("gap at n=200 is {}", gaps[2]));
    prop.case(gaps[0] > gaps[1] && gaps[1] > gaps[2], || format!("gaps {gaps:?} not decreasing"));
    prop
}

fn degree_bound() -> Property {
    let mut prop = Property::new("degree-bound");
    for n in 1..=3 {
        for r in 1..=4 {
            let Some(count) = prop.attempt(|| format!("(n={n}, r={r})"), count_ball_lattice_points(n, r, &Budget::default()))
            else {
                continue;
            };
            let p = PackingParams::new(n, r, 0).expect("valid");
            let bound = d_n_upper(&p);
            prop.case(count as f64 <= bound, || format!("(n={n}, r={r}): count {count} > bound {bound}"));
            if (n, r) == (2, 2) {
                prop.case(count == 45, || format!("(n=2, r=2): count {count}, expected 45"));
            }
        }
    }
    prop
}

fn volume_grid(mut f: impl FnMut(&CapGeometry, String)) {
    for n in VOLUME_DIMENSIONS {
        for delta in VOLUME_DELTAS {
            for rho in VOLUME_RHOS {
                let g = CapGeometry::new(n, rho, delta).expect("valid geometry");
                f(&g, format!("(n={n}, rho={rho}, delta={delta})"));
            }
        }
    }
}

fn volume_chain() -> Property {
    let mut prop = Property::new("volume-bound-chain");
    volume_grid(|g, at| {
        let exact = intersection_volume_exact(g);
        let cyl = intersection_volume_cylinder_bound(g);
        let relaxed = intersection_volume_relaxed_bound(g);
        let slack = 1e-12 * relaxed;
        prop.case(exact <= cyl + slack && cyl <= relaxed + slack, || {
            format!("{at}: exact {exact}, cylinder {cyl}, relaxed {relaxed}")
        });
    });
    prop
}

fn volume_monte_carlo(seed: u64) -> Property {
    let mut prop = Property::new("volume-monte-carlo");
    volume_grid(|g, at| {
        let exact = intersection_volume_exact(g);
        if let Some(est) = prop.attempt(
            || at.clone(),
            mc_ball_intersection(g.n(), g.rho(), g.delta(), VOLUME_SAMPLES, seed),
        ) {
            prop.case(est.agrees_with(exact, SIGMAS), || {
                format!("{at}: exact {exact}, estimate {} ± {}", est.mean, est.std_error)
            });
        }
    });
    prop
}

fn graph_oracle(graphs: &[(PackingParams, LatticeGraph)]) -> Property {
    let mut prop = Property::new("graph-vs-brute-force");
    for (p, g) in graphs {
        let at = label(p.n, p.r, p.s);
        let Some(b) = prop.attempt(|| at.clone(), brute_stats(g)) else {
            continue;
        };
        let fast = (g.max_degree(), g.edge_count(), g.triangle_count(), g.neighborhood_edge_max());
        prop.case(b.as_tuple() == fast, || format!("{at}: brute {:?} vs fast {fast:?}", b.as_tuple()));
        if let Some(edges) = prop.attempt(|| at.clone(), brute_edges(g)) {
            prop.case(edges.iter().copied().eq(g.edges()), || format!("{at}: edge lists differ"));
        }
    }
    prop
}

fn triangle_identities(graphs: &[(PackingParams, LatticeGraph)]) -> Property {
    let mut prop = Property::new("triangle-identities");
    for (p, g) in graphs {
        let at = label(p.n, p.r, p.s);
        let t = g.triangle_count();
        let sum: u64 = g.neighborhood_edge_counts().iter().sum();
        prop.case(3 * t == sum, || format!("{at}: 3T = {} but sum e(N(v)) = {sum}", 3 * t));
        let cap = g.vertex_count() as u64 * g.neighborhood_edge_max();
        prop.case(3 * t <= cap, || format!("{at}: 3T = {} > |V| t = {cap}", 3 * t));
    }
    prop
}

fn independence_chain(graphs: &[(PackingParams, LatticeGraph)]) -> Property {
    let mut prop = Property::new("independence-chain");
    for (p, g) in graphs {
        let at = label(p.n, p.r, p.s);
        let v = g.vertex_count() as u64;
        let d = g.max_degree() as u64;
        let floor = trivial_lower_bound(v, d);
        let lex = greedy_maximal_is(g);
        let mind = min_degree_greedy_is(g);
        for set in [&lex, &mind] {
            prop.case(is_maximal(g, set.vertices()), || format!("{at}: {} set not maximal", set.algorithm()));
            prop.case(set.len() as f64 >= floor, || {
                format!("{at}: {} size {} < |V|/(d+1) = {floor}", set.algorithm(), set.len())
            });
        }
        let Some(exact) = prop.attempt(|| at.clone(), exact_max_is(g, DEFAULT_NODE_LIMIT)) else {
            continue;
        };
        let alpha = exact.len() as f64;
        prop.case(exact.len() >= mind.len() && exact.len() >= lex.len(), || {
            format!("{at}: exact {} below greedy ({}, {})", exact.len(), lex.len(), mind.len())
        });
        let aks = aks_lower_bound(v, d, g.triangle_count());
        let jv = jv_lower_bound(v, d, g.neighborhood_edge_max());
        prop.case(aks <= alpha && jv <= alpha, || format!("{at}: alpha {alpha} < bound (aks {aks}, jv {jv})"));
    }
    prop
}

fn t_bound() -> Property {
    let mut prop = Property::new("t-bound");
    for n in 1..=3usize {
        for r in 1..=4u64 {
            let at = format!("(n={n}, r={r})");
            let Some(h) = prop.attempt(|| at.clone(), build_neighborhood_graph(n, r, &Budget::default())) else {
                continue;
            };
            let measured = h.edge_count();
            let fp = FormulaParams::new(n as u64, r as f64, 0.0).expect("valid");
            let Some(bound) = prop.attempt(|| at.clone(), t_upper_generic(&fp)) else {
                continue;
            };
            prop.case((measured as f64).log2() <= bound, || {
                format!("{at}: measured t = {measured} exceeds 2^{bound}")
            });
        }
    }
    prop
}

fn packings(graphs: &[(PackingParams, LatticeGraph)], prop: &mut Property) -> Vec<Packing> {
    let mut out = Vec::new();
    for (p, g) in graphs {
        let at = label(p.n, p.r, p.s);
        for set in [greedy_maximal_is(g), min_degree_greedy_is(g)] {
            if let Some(pk) = prop.attempt(|| at.clone(), assemble(p, &set, g)) {
                out.push(pk);
            }
        }
    }
    out
}

fn packing_verification(graphs: &[(PackingParams, LatticeGraph)]) -> Property {
    let mut prop = Property::new("packing-verification");
    for pk in packings(graphs, &mut prop) {
        let p = pk.params();
        let at = label(p.n, p.r, p.s);
        let report = pk.verify();
        prop.case(report.passed, || format!("{at}: {report:?}"));
        let mut buf = Vec::new();
        if prop.attempt(|| at.clone(), pk.export(&mut buf)).is_some() {
            if let Some(back) = prop.attempt(|| at.clone(), Packing::import(buf.as_slice())) {
                prop.case(back == pk, || format!("{at}: round trip changed the packing"));
            }
        }
    }
    prop
}

fn packing_monte_carlo(graphs: &[(PackingParams, LatticeGraph)], seed: u64) -> Property {
    let mut prop = Property::new("packing-monte-carlo");
    for pk in packings(graphs, &mut Property::new("")) {
        let p = pk.params();
        let at = label(p.n, p.r, p.s);
        if let Some(est) = prop.attempt(|| at.clone(), mc_packing_density(&pk, DENSITY_SAMPLES, seed)) {
            let exact = pk.density_value();
            prop.case(est.agrees_with(exact, SIGMAS), || {
                format!("{at}: exact {exact}, estimate {} ± {}", est.mean, est.std_error)
            });
        }
    }
    prop
}

pub fn run(args: &CheckArgs, out: &Output, seed: u64) -> Outcome {
    let Grid::Small = args.grid;
    let mut setup = Property::new("instance-setup");
    let graphs = small_graphs(&mut setup);

    let mut props = vec![
        constant(),
        minkowski_limit(),
        degree_bound(),
        volume_chain(),
        volume_monte_carlo(seed),
        graph_oracle(&graphs),
        triangle_identities(&graphs),
        independence_chain(&graphs),
        t_bound(),
        packing_verification(&graphs),
        packing_monte_carlo(&graphs, seed),
    ];
    if !setup.failures.is_empty() {
        props.insert(0, setup);
    }
    let properties: Vec<PropertyResult> = props.into_iter().map(Property::finish).collect();
    let passed = properties.iter().all(|p| p.passed);
    let report = CheckOutput {
        command: "check",
        grid: "small",
        seed,
        passed,
        properties,
        timestamp: out.timestamp(),
    };

    let mut t = Table::new();
    t.heading(format!("check --grid small --seed {seed}"));
    for p in &report.properties {
        let status = if p.passed { "PASS" } else { "FAIL" };
        let mut line = format!("{status} ({} cases)", p.cases);
        if let Some(c) = &p.culprit {
            line.push_str(&format!(": {c}"));
        }
        t.row(p.name, line);
    }
    t.row("result", if passed { "pass" } else { "FAIL" });
    if let Some(ts) = report.timestamp {
        t.row("timestamp", ts);
    }
    out.emit(&report, &t)?;

    if passed {
        Ok(())
    } else {
        let failed: Vec<String> = report
            .properties
            .iter()
            .filter(|p| !p.passed)
            .map(|p| format!("{} ({})", p.name, p.culprit.as_deref().unwrap_or("")))
            .collect();
        Err(Failure::Verification(format!("failed properties: {}", failed.join("; "))))
    }
}
