//! Acceptance suite: one `[PASS]` / `[FAIL]` line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the terminal;
//! the process exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use packing_forge::bounds::{
    crossing_dimension, headline_target, improved_density_guarantee, log2_d_upper, minkowski_density_guarantee,
    t_upper_generic, t_upper_paper, theorem1_constant, FormulaParams,
};
use packing_forge::geometry::{
    d_n_upper, intersection_volume_cylinder_bound, intersection_volume_exact, intersection_volume_relaxed_bound, rho,
    CapGeometry,
};
use packing_forge::independence::{
    aks_lower_bound, exact_max_is, greedy_maximal_is, is_maximal, jv_lower_bound, min_degree_greedy_is,
    trivial_lower_bound, DEFAULT_NODE_LIMIT,
};
use packing_forge::lattice_graph::{build_graph, build_neighborhood_graph, count_ball_lattice_points, LatticeGraph};
use packing_forge::oracle::{brute_stats, mc_ball_intersection};
use packing_forge::{Budget, PackingParams};
use serde_json::Value;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn graph(n: usize, r: u64, s: u64) -> LatticeGraph {
    build_graph(&PackingParams::new(n, r, s).unwrap(), &Budget::default()).unwrap()
}

fn constant_check() -> Check {
    let c = theorem1_constant();
    let expected = (2.0 / 3f64.sqrt()).log2() / 20.0;
    ensure!((c - expected).abs() < 1e-15, "constant {c} differs from log2(2/sqrt3)/20 = {expected}");
    ensure!((c * 1e4).trunc() == 103.0, "constant {c} does not read 0.0103..");
    Ok(format!("constant = {c:.10}"))
}

fn minkowski_reproduction() -> Check {
    let gap = |n: u64| (minkowski_density_guarantee(&FormulaParams::paper_curve(n).unwrap()) + n as f64).abs();
    let gaps = [gap(50), gap(100), gap(200)];
    ensure!(gaps[2] <= 0.1, "gap at n = 200 is {}", gaps[2]);
    ensure!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "gaps {gaps:?} do not decrease");
    Ok(format!("|log2 density + n| at n = 50, 100, 200: {:.4}, {:.4}, {:.4}", gaps[0], gaps[1], gaps[2]))
}

fn asymptotic_ratio() -> Check {
    let n = 100_000u64;
    let nf = n as f64;
    let improved = improved_density_guarantee(&FormulaParams::paper_curve(n).unwrap())
        .log2
        .ok_or("improved bound invalid at n = 1e5")?;
    let ratio = improved - (nf.log2() - nf);
    let target = theorem1_constant().log2();
    ensure!((ratio - target).abs() <= 0.05, "ratio {ratio} vs log2 constant {target}");

    const LIMIT: u64 = 20_000;
    let star = crossing_dimension(LIMIT).ok_or("no crossing dimension below 20000")?;
    let beats = |n: u64| {
        improved_density_guarantee(&FormulaParams::paper_curve(n).unwrap())
            .log2
            .is_some_and(|v| v >= headline_target(n))
    };
    ensure!(star == 1 || !beats(star - 1), "dimension {} below N* already beats the target", star - 1);
    let failures = (star..=LIMIT).filter(|&m| !beats(m)).count();
    ensure!(failures == 0, "{failures} dimensions in [N*, {LIMIT}] miss the target");
    for m in [30_000u64, 100_000, 1_000_000, 10_000_000] {
        ensure!(beats(m), "n = {m} misses the target");
    }
    Ok(format!(
        "log2 ratio at n = 1e5 is {ratio:.4} (constant {target:.4}); N* = {star}, checked through {LIMIT} and at 1e7"
    ))
}

fn degree_bound_grid() -> Check {
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        for r in 1..=4 {
            let count = count_ball_lattice_points(n, r, &Budget::default()).map_err(|e| e.to_string())?;
            let bound = d_n_upper(&PackingParams::new(n, r, 0).unwrap());
            ensure!(count as f64 <= bound, "(n={n}, r={r}): {count} lattice points > bound {bound}");
            worst = worst.max(count as f64 / bound);
        }
    }
    let c = count_ball_lattice_points(2, 2, &Budget::default()).map_err(|e| e.to_string())?;
    ensure!(c == 45, "(n=2, r=2) has {c} lattice points, expected 45");
    Ok(format!("12 cases, largest count/bound ratio {worst:.4}; (2,2) count = 45"))
}

fn volume_oracle_grid() -> Check {
    let mut worst_z: f64 = 0.0;
    let mut cases = 0;
    for n in 2..=6usize {
        for delta in [0.1, 0.25, 0.49] {
            for rho in [1.0, 3.5] {
                let g = CapGeometry::new(n, rho, delta).unwrap();
                let exact = intersection_volume_exact(&g);
                let cyl = intersection_volume_cylinder_bound(&g);
                let relaxed = intersection_volume_relaxed_bound(&g);
                ensure!(exact <= cyl && cyl <= relaxed, "(n={n}, rho={rho}, delta={delta}): {exact} {cyl} {relaxed}");
                let seed = 1_000 * n as u64 + (delta * 100.0) as u64 + (rho * 10.0) as u64;
                let est = mc_ball_intersection(n, rho, delta, 1_000_000, seed).map_err(|e| e.to_string())?;
                ensure!(
                    est.agrees_with(exact, 3.0),
                    "(n={n}, rho={rho}, delta={delta}): exact {exact}, Monte Carlo {} ± {}",
                    est.mean,
                    est.std_error
                );
                worst_z = worst_z.max(est.z_score(exact));
                if n == 2 {
                    let theta = delta.acos();
                    let lens = 2.0 * rho * rho * (theta - delta * theta.sin());
                    ensure!((exact - lens).abs() <= 1e-10 * lens, "lens {lens} vs exact {exact}");
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases at 1e6 samples, largest deviation {worst_z:.2} sigma"))
}

const SUITE: [(usize, u64, u64); 13] = [
    (1, 1, 8),
    (1, 2, 16),
    (1, 3, 30),
    (2, 1, 2),
    (2, 1, 8),
    (2, 1, 12),
    (2, 2, 10),
    (2, 2, 12),
    (2, 3, 12),
    (3, 1, 4),
    (3, 2, 4),
    (3, 1, 2),
    (4, 1, 2),
];

fn independence_chain() -> Check {
    let mut solved = 0;
    for (n, r, s) in SUITE {
        let g = graph(n, r, s);
        ensure!(g.vertex_count() <= 200, "suite instance ({n},{r},{s}) too large");
        let v = g.vertex_count() as u64;
        let d = g.max_degree() as u64;
        let floor = trivial_lower_bound(v, d);
        let lex = greedy_maximal_is(&g);
        let mind = min_degree_greedy_is(&g);
        for set in [&lex, &mind] {
            ensure!(is_maximal(&g, set.vertices()), "({n},{r},{s}): {} set not maximal", set.algorithm());
            ensure!(set.len() as f64 >= floor, "({n},{r},{s}): {} size {} < {floor}", set.algorithm(), set.len());
        }
        let Ok(exact) = exact_max_is(&g, DEFAULT_NODE_LIMIT) else {
            continue;
        };
        solved += 1;
        let alpha = exact.len();
        ensure!(alpha >= mind.len() && alpha >= lex.len(), "({n},{r},{s}): exact {alpha} below a greedy set");
        let aks = aks_lower_bound(v, d, g.triangle_count());
        let jv = jv_lower_bound(v, d, g.neighborhood_edge_max());
        ensure!(aks <= alpha as f64 && jv <= alpha as f64, "({n},{r},{s}): alpha {alpha}, aks {aks}, jv {jv}");
    }
    ensure!(solved == SUITE.len(), "only {solved} of {} instances solved exactly", SUITE.len());
    Ok(format!("{solved} instances solved exactly; chain holds on all"))
}

fn triangle_identities() -> Check {
    let mut graphs: Vec<(String, LatticeGraph)> = [
        (1, 1, 100),
        (1, 4, 200),
        (2, 1, 60),
        (2, 2, 40),
        (2, 3, 68),
        (3, 1, 16),
        (3, 2, 16),
        (3, 3, 12),
        (4, 1, 6),
        (4, 2, 6),
    ]
    .into_iter()
    .map(|(n, r, s)| (format!("G(n={n}, r={r}, s={s})"), graph(n, r, s)))
    .collect();
    for n in 1..=3 {
        for r in 1..=3 {
            graphs.push((format!("H(n={n}, r={r})"), build_neighborhood_graph(n, r, &Budget::default()).unwrap()));
        }
    }
    for (label, g) in &graphs {
        ensure!(g.vertex_count() <= 5000, "{label} exceeds 5000 vertices");
        let t = g.triangle_count();
        let tmax = g.neighborhood_edge_max();
        let sum: u64 = g.neighborhood_edge_counts().iter().sum();
        ensure!(3 * t == sum, "{label}: 3T = {} but sum e(N(v)) = {sum}", 3 * t);
        ensure!(3 * t <= g.vertex_count() as u64 * tmax, "{label}: T > |V| t / 3");
        let brute = brute_stats(g).map_err(|e| e.to_string())?;
        let fast = (g.max_degree(), g.edge_count(), t, tmax);
        ensure!(brute.as_tuple() == fast, "{label}: brute {:?} vs fast {fast:?}", brute.as_tuple());
    }
    Ok(format!("{} graphs; identities hold and fast path equals brute force", graphs.len()))
}

/// `t_upper_paper(n) - 2 log2 d_upper(n)` on the reference curve.
fn t_over_d2(n: u64) -> f64 {
    t_upper_paper(n) - 2.0 * log2_d_upper(&FormulaParams::paper_curve(n).unwrap())
}

fn t_bound_validity() -> Check {
    for n in 1..=3usize {
        for r in 1..=4u64 {
            let h = build_neighborhood_graph(n, r, &Budget::default()).map_err(|e| e.to_string())?;
            let measured = h.edge_count();
            let bound = t_upper_generic(&FormulaParams::new(n as u64, r as f64, 0.0).unwrap()).map_err(|e| e.to_string())?;
            ensure!((measured as f64).log2() <= bound, "(n={n}, r={r}): t = {measured} > 2^{bound}");
        }
    }

    // t/d^2 = (sqrt3/2)^n n rho^2: linear in n with the stated slope once the
    // slowly varying log2(n rho^2) is accounted for
    let slope = (3f64.sqrt() / 2.0).log2();
    let secant = |a: u64, b: u64| (t_over_d2(b) - t_over_d2(a)) / (b - a) as f64;
    let deviations: Vec<f64> = (1..10u64).map(|k| (secant(100 * k, 100 * (k + 1)) / slope - 1.0).abs()).collect();
    let last = *deviations.last().unwrap();
    ensure!(last <= 0.05, "secant slope on [900, 1000] is {:.2}% off", 100.0 * last);
    ensure!(deviations.windows(2).all(|w| w[1] < w[0]), "deviation does not shrink: {deviations:?}");
    let detrended = |n: u64| {
        let nf = n as f64;
        t_over_d2(n) - (nf.log2() + 2.0 * rho(n as usize, 2.0 * nf * nf).log2())
    };
    let core = (detrended(1000) - detrended(100)) / 900.0;
    ensure!((core / slope - 1.0).abs() <= 1e-9, "detrended slope {core} vs {slope}");
    Ok(format!(
        "12 measured t below bound; secant slope deviation {:.2}% on [100,200] -> {:.2}% on [900,1000]",
        100.0 * deviations[0],
        100.0 * last
    ))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_packing-forge"))
}

fn run_json(dir: &Path, args: &[&str]) -> Result<Value, String> {
    let o = bin().current_dir(dir).args(args).args(["--format", "json"]).output().map_err(|e| e.to_string())?;
    ensure!(o.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())
}

fn end_to_end() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let v = run_json(
        dir.path(),
        &["build", "--dim", "2", "--r", "1", "--s", "8", "--algo", "lex-greedy", "--out", "king.txt", "--mc-samples", "1000000"],
    )?;
    ensure!(v["packing"]["centers"] == 25, "centers = {}", v["packing"]["centers"]);
    ensure!(v["packing"]["density_over_ball_volume"] == "1/4", "ratio = {}", v["packing"]["density_over_ball_volume"]);
    let density = v["packing"]["density"].as_f64().unwrap_or(f64::NAN);
    ensure!((density - PI / 4.0).abs() < 1e-12, "density = {density}");
    ensure!(v["verification"]["passed"] == true, "verification failed");
    let mean = v["mc_density"]["mean"].as_f64().unwrap_or(f64::NAN);
    let se = v["mc_density"]["std_error"].as_f64().unwrap_or(f64::NAN);
    ensure!((mean - PI / 4.0).abs() <= 3.0 * se, "Monte Carlo {mean} ± {se}");
    let verified = run_json(dir.path(), &["verify", "king.txt"])?;
    ensure!(verified["passed"] == true, "re-verification failed");

    let line = run_json(dir.path(), &["build", "--dim", "1", "--r", "1", "--s", "8", "--out", "line.txt"])?;
    let d1 = line["packing"]["density"].as_f64().unwrap_or(f64::NAN);
    ensure!(d1 == 1.0, "n = 1 density = {d1}");
    Ok(format!("25 centers, density pi/4, Monte Carlo {mean:.5} ± {se:.5}; n = 1 density 1"))
}

const DETERMINISM_COMMANDS: &[&[&str]] = &[
    &["build", "--dim", "2", "--r", "1", "--s", "8", "--algo", "lex-greedy", "--out", "king.txt", "--mc-samples", "100000"],
    &["build", "--dim", "3", "--r", "1", "--s", "4", "--algo", "exact", "--out", "cube.txt"],
    &["build", "--dim", "2", "--r", "2", "--s", "40", "--algo", "min-degree", "--out", "disk.txt"],
    &["verify", "king.txt", "--mc-samples", "100000"],
    &["bounds", "--dim", "2", "--r", "1", "--s", "8"],
    &["bounds", "--dim", "1000", "--paper-curve"],
    &["check", "--grid", "small"],
    &["bench", "--dim", "2", "--r", "2", "--s", "12"],
];

const WRITTEN_FILES: &[&str] = &["king.txt", "king.txt.bounds.json", "cube.txt", "disk.txt", "disk.txt.bounds.json"];

/// Every command in both formats, then every file written, for one run.
fn transcript(threads: usize) -> Result<Vec<Vec<u8>>, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for cmd in DETERMINISM_COMMANDS {
        for format in ["text", "json"] {
            let o = bin()
                .current_dir(dir.path())
                .env("PACKING_FORGE_THREADS", threads.to_string())
                .args(*cmd)
                .args(["--format", format, "--deterministic", "--seed", "7"])
                .output()
                .map_err(|e| e.to_string())?;
            ensure!(o.status.success(), "{cmd:?} failed: {}", String::from_utf8_lossy(&o.stderr));
            out.push(o.stdout);
        }
    }
    for f in WRITTEN_FILES {
        out.push(std::fs::read(dir.path().join(f)).map_err(|e| format!("{f}: {e}"))?);
    }
    Ok(out)
}

fn determinism() -> Check {
    let runs = [transcript(1)?, transcript(1)?, transcript(8)?, transcript(8)?];
    for (k, run) in runs.iter().enumerate().skip(1) {
        for (i, (a, b)) in runs[0].iter().zip(run).enumerate() {
            ensure!(a == b, "output {i} of run {k} differs from the first single-threaded run");
        }
    }
    Ok(format!(
        "{} commands x 2 formats + {} files identical over 2 runs at 1 and 8 threads",
        DETERMINISM_COMMANDS.len(),
        WRITTEN_FILES.len()
    ))
}

struct Criterion {
    number: u32,
    title: &'static str,
    limit: Duration,
    check: fn() -> Check,
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, title: "constant check", limit: Duration::from_millis(1), check: constant_check },
    Criterion { number: 2, title: "Minkowski reproduction", limit: Duration::from_secs(1), check: minkowski_reproduction },
    Criterion { number: 3, title: "asymptotic ratio", limit: Duration::from_secs(10), check: asymptotic_ratio },
    Criterion { number: 4, title: "degree bound grid", limit: Duration::from_secs(5), check: degree_bound_grid },
    Criterion { number: 5, title: "volume oracle grid", limit: Duration::from_secs(120), check: volume_oracle_grid },
    Criterion { number: 6, title: "independence chain", limit: Duration::from_secs(60), check: independence_chain },
    Criterion { number: 7, title: "triangle identities", limit: Duration::from_secs(60), check: triangle_identities },
    Criterion { number: 8, title: "t-bound validity", limit: Duration::from_secs(10), check: t_bound_validity },
    Criterion { number: 9, title: "end-to-end packing", limit: Duration::from_secs(30), check: end_to_end },
    Criterion { number: 10, title: "determinism", limit: Duration::from_secs(120), check: determinism },
];

fn main() -> ExitCode {
    // `cargo test -- <filter>` passes arguments; run everything regardless,
    // but honour `--list` so test discovery tools see a single entry
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; took {elapsed:.2?}, limit {:?}", c.limit)),
            r => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if result.is_err() {
            failed += 1;
        }
        println!("[{tag}] criterion {}: {} ({elapsed:.2?}) - {detail}", c.number, c.title);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
