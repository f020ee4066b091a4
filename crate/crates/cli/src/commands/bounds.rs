use packing_forge::bounds::{
    headline_target, improved_density_guarantee_counted, minkowski_density_guarantee_counted, BoundReport,
    FormulaParams, ImprovedDensity,
};
use serde::Serialize;

use crate::args::BoundsArgs;
use crate::commands::formula_params;
use crate::exit::Outcome;
use crate::output::{Output, Table};

/// Everything `bounds` prints. All densities, degrees and counts are log2.
#[derive(Debug, Serialize)]
pub struct BoundsOutput {
    pub command: &'static str,
    #[serde(flatten)]
    pub report: BoundReport,
    /// Minkowski guarantee keeping `(s+1)^n` rather than `s^n`.
    pub minkowski_density_counted: f64,
    pub improved_density_counted: ImprovedDensity,
    /// `log2(0.01 n 2^{-n})`.
    pub headline_target: f64,
    /// Improved guarantee minus the headline target, when the guarantee is valid.
    pub improved_minus_headline: Option<f64>,
    /// Improved guarantee minus `log2(n 2^{-n})`; tends to `log2` of the constant.
    pub improved_over_n_2_pow_minus_n: Option<f64>,
    /// `t_upper_paper - 2 d_upper`, only on the reference curve.
    pub t_over_d_squared: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl BoundsOutput {
    pub fn new(p: &FormulaParams, out: &Output) -> Self {
        let report = BoundReport::new(p);
        let nf = p.n as f64;
        let target = headline_target(p.n);
        let improved = report.improved_density.log2;
        BoundsOutput {
            command: "bounds",
            minkowski_density_counted: minkowski_density_guarantee_counted(p),
            improved_density_counted: improved_density_guarantee_counted(p),
            headline_target: target,
            improved_minus_headline: improved.map(|v| v - target),
            improved_over_n_2_pow_minus_n: improved.map(|v| v - (nf.log2() - nf)),
            t_over_d_squared: report.t_upper_paper.map(|t| t - 2.0 * report.d_upper),
            report,
            timestamp: out.timestamp(),
        }
    }

    pub fn table(&self) -> Table {
        let r = &self.report;
        let p = &r.params;
        let mut t = Table::new();
        t.heading(format!("bounds (log2 values) for n = {}, r = {}, s = {}", p.n, fmt_real(p.r), fmt_real(p.s)));
        t.num("rho", p.rho())
            .num("d_upper", r.d_upper)
            .opt("t_upper_generic", r.t_upper_generic, "n/a (r < sqrt(n)/2)")
            .opt("t_upper_paper", r.t_upper_paper, "n/a (off reference curve)")
            .opt("t_over_d_squared", self.t_over_d_squared, "n/a")
            .num("alpha_lower_trivial", r.alpha_lower_trivial)
            .num("alpha_lower_jv", r.alpha_lower_jv);
        t.heading("density");
        t.num("minkowski", r.minkowski_density)
            .num("minkowski_counted", self.minkowski_density_counted)
            .num("improved_bracket", r.improved_density.bracket)
            .opt("improved", r.improved_density.log2, "invalid (bracket <= 0)")
            .num("headline_target", self.headline_target)
            .opt("improved_minus_headline", self.improved_minus_headline, "n/a")
            .opt("improved_over_n_2^-n", self.improved_over_n_2_pow_minus_n, "n/a")
            .num("theorem1_constant", r.theorem1_constant);
        let c = &r.complexity;
        t.heading("complexity");
        t.num("vertex_count_log2", c.vertex_count_log2)
            .row("vertex_count", c.vertex_count.map_or_else(|| "> 2^64".to_string(), |v| v.to_string()))
            .num("work_log2", c.work_log2)
            .opt("gamma_ratio", c.gamma_ratio, "n/a")
            .opt("reference_work_log2", c.paper_comparison_log2, "n/a");
        if let Some(ts) = self.timestamp {
            t.row("timestamp", ts);
        }
        t
    }
}

fn fmt_real(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{x:.0}")
    } else {
        crate::output::sig(x)
    }
}

pub fn run(args: &BoundsArgs, out: &Output) -> Outcome {
    let p = formula_params(&args.params)?;
    let report = BoundsOutput::new(&p, out);
    out.emit(&report, &report.table())
}
