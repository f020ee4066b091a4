//! Closed-form density, degree and neighbourhood-edge bounds, all in log2.
//!
//! The factors involved (`rho^{2n}`, `2^{-n}`, `(s+1)^n`) leave the range of
//! `f64` long before the dimensions where the asymptotic statements become
//! interesting, so every quantity here is returned as a base-2 logarithm.
//! Parameters are real-valued ([`FormulaParams`]) because the reference curve
//! `r = 2n^2, s = 2n^4` outgrows 64-bit integers around `n = 55_000`.

use std::f64::consts::{E, LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{log2_unit_ball_volume, rho};
use crate::lattice_graph::LatticeGraph;
use crate::params::PackingParams;

/// Shell sums with more terms than this are bounded blockwise.
const DIRECT_SHELL_TERMS: u64 = 1 << 20;
const SHELL_BLOCKS: u64 = 1 << 16;

/// Dimension, sphere radius and inner cube side as reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormulaParams {
    pub n: u64,
    pub r: f64,
    pub s: f64,
}

impl FormulaParams {
    pub fn new(n: u64, r: f64, s: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("dimension must be at least 1".into()));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParams(format!("radius must be positive, got {r}")));
        }
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::InvalidParams(format!("cube side must be non-negative, got {s}")));
        }
        Ok(FormulaParams { n, r, s })
    }

    /// The reference choice `r = 2n^2`, `s = 2n^4`.
    pub fn paper_curve(n: u64) -> Result<Self> {
        let nf = n as f64;
        Self::new(n, 2.0 * nf * nf, 2.0 * nf.powi(4))
    }

    /// `r = n^r_exp`, `s = n^s_exp`, used to study how the work exponent
    /// depends on the growth of `r` and `s`.
    pub fn power_curve(n: u64, r_exp: f64, s_exp: f64) -> Result<Self> {
        let nf = n as f64;
        Self::new(n, nf.powf(r_exp), nf.powf(s_exp))
    }

    pub fn is_paper_curve(&self) -> bool {
        let nf = self.n as f64;
        self.r == 2.0 * nf * nf && self.s == 2.0 * nf.powi(4)
    }

    pub fn rho(&self) -> f64 {
        rho(self.n as usize, self.r)
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }

    /// `n log2(s / (s + 2r))`.
    fn log2_inner_ratio_pow(&self) -> f64 {
        if self.s == 0.0 {
            return f64::NEG_INFINITY;
        }
        -self.nf() * (2.0 * self.r / self.s).ln_1p() / LN_2
    }

    /// `n log2((s + 1) / (s + 2r))`.
    fn log2_counted_ratio_pow(&self) -> f64 {
        -self.nf() * ((2.0 * self.r - 1.0) / (self.s + 1.0)).ln_1p() / LN_2
    }

    /// `n log2(r / rho)` with `r / rho = 1 / (2 (1 + sqrt(n) / 4r))`.
    fn log2_radius_ratio_pow(&self) -> f64 {
        -self.nf() * (1.0 + (self.nf().sqrt() / (4.0 * self.r)).ln_1p() / LN_2)
    }

    /// `n log2(s + 1)`, the log of the vertex count.
    fn log2_vertex_count(&self) -> f64 {
        self.nf() * (self.s + 1.0).log2()
    }
}

impl From<&PackingParams> for FormulaParams {
    fn from(p: &PackingParams) -> Self {
        FormulaParams {
            n: p.n as u64,
            r: p.r as f64,
            s: p.s as f64,
        }
    }
}

/// `log2(2^a + 2^b)`.
pub(crate) fn log2_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp2().ln_1p() / LN_2
}

/// `log2(V_n rho^n)`: bound on `d_n + 1`.
pub fn log2_d_upper(p: &FormulaParams) -> f64 {
    log2_unit_ball_volume(p.n as usize) + p.nf() * p.rho().log2()
}

/// Density guaranteed by a maximal independent set when `d_n + 1` is
/// replaced by its volume bound and `(s+1)^n` by `s^n`:
/// `1 / (2^n (1 + 2r/s)^n (1 + sqrt(n)/4r)^n)`.
pub fn minkowski_density_guarantee(p: &FormulaParams) -> f64 {
    p.log2_inner_ratio_pow() + p.log2_radius_ratio_pow()
}

/// Same guarantee keeping the exact vertex count `(s+1)^n`.
pub fn minkowski_density_guarantee_counted(p: &FormulaParams) -> f64 {
    p.log2_counted_ratio_pow() + p.log2_radius_ratio_pow()
}

fn log2_two_over_sqrt3() -> f64 {
    1.0 - 0.5 * 3f64.log2()
}

/// `log2(2/sqrt 3) / 20 = 0.010375...`, the constant in front of `n 2^{-n}`.
pub fn theorem1_constant() -> f64 {
    log2_two_over_sqrt3() / 20.0
}

/// `log2(0.01 n 2^{-n})`, the headline density target.
pub fn headline_target(n: u64) -> f64 {
    (0.01 * n as f64).log2() - n as f64
}

/// Evaluated locally-sparse density bound. `log2` is `None` when the
/// bracketed factor is not positive, in which case the expression gives no
/// density guarantee at all.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImprovedDensity {
    pub bracket: f64,
    pub log2: Option<f64>,
}

impl ImprovedDensity {
    pub fn is_valid(&self) -> bool {
        self.log2.is_some()
    }
}

fn improved_bracket(p: &FormulaParams) -> f64 {
    let nf = p.nf();
    log2_two_over_sqrt3() - (nf.log2() + 2.0 * p.rho().log2()) / nf
}

fn improved_with(p: &FormulaParams, ratio_pow: f64) -> ImprovedDensity {
    let bracket = improved_bracket(p);
    let log2 = (bracket > 0.0).then(|| {
        (p.nf() / 20.0).log2() + ratio_pow + p.log2_radius_ratio_pow() + bracket.log2()
    });
    ImprovedDensity { bracket, log2 }
}

/// `(n/20) (s/(s+2r))^n (r/rho)^n (log2(2/sqrt3) - log2(n rho^2)/n)`.
pub fn improved_density_guarantee(p: &FormulaParams) -> ImprovedDensity {
    improved_with(p, p.log2_inner_ratio_pow())
}

/// As [`improved_density_guarantee`] with `(s+1)^n` in place of `s^n`.
pub fn improved_density_guarantee_counted(p: &FormulaParams) -> ImprovedDensity {
    improved_with(p, p.log2_counted_ratio_pow())
}

/// Smallest `N <= limit` such that on the reference curve the improved
/// guarantee is valid and at least `0.01 n 2^{-n}` for every `n` in `N..=limit`.
pub fn crossing_dimension(limit: u64) -> Option<u64> {
    let mut last_failure = 0;
    for n in 1..=limit {
        let p = FormulaParams::paper_curve(n).expect("positive n");
        let ok = improved_density_guarantee(&p)
            .log2
            .is_some_and(|v| v >= headline_target(n));
        if !ok {
            last_failure = n;
        }
    }
    (last_failure < limit).then_some(last_failure + 1)
}

/// `log2` of the closed-form neighbourhood-edge bound on the reference curve,
/// `(sqrt3/2)^n n V_n^2 rho^{2n+2}` with `r = 2n^2`.
pub fn t_upper_paper(n: u64) -> f64 {
    let nf = n as f64;
    let rho = rho(n as usize, 2.0 * nf * nf);
    -nf * log2_two_over_sqrt3() + nf.log2() + 2.0 * log2_unit_ball_volume(n as usize)
        + (2.0 * nf + 2.0) * rho.log2()
}

/// Upper bound (log2) on the number of edges inside the neighbourhood of a
/// vertex, valid for any `r >= sqrt(n)/2`.
///
/// The degree sum over the punctured ball is split at squared distance
/// `ceil(r^2/4)`. Close shells use `deg <= V_n rho^n` with their total size
/// bounded by the volume of a ball of radius `sqrt(k0 - 1) + sqrt(n)/2`. Far
/// shells use the per-shell count `|U_k| <= V_n (sqrt(k) + sqrt(n)/2)^n` and
/// the cylinder bound on the two-ball intersection, summed exactly when there
/// are few shells and blockwise (monotone envelope) otherwise.
pub fn t_upper_generic(p: &FormulaParams) -> Result<f64> {
    t_upper_generic_with(p, DIRECT_SHELL_TERMS)
}

fn t_upper_generic_with(p: &FormulaParams, direct_terms: u64) -> Result<f64> {
    let n = p.n as usize;
    let nf = p.nf();
    let half_sqrt_n = nf.sqrt() / 2.0;
    if p.r < half_sqrt_n {
        return Err(Error::Domain(format!(
            "neighbourhood edge bound needs r >= sqrt(n)/2 = {half_sqrt_n}, got r = {}",
            p.r
        )));
    }
    let rho = p.rho();
    let log2_vn = log2_unit_ball_volume(n);
    let log2_deg_max = log2_vn + nf * rho.log2();

    // integer squared distances k with k < 4r^2
    let k_max = ((4.0 * p.r * p.r).ceil() as u64).saturating_sub(1);
    let k0 = ((p.r * p.r / 4.0).ceil() as u64).max(1);

    let mut twice_t = f64::NEG_INFINITY;
    if k0 > 1 {
        let radius = ((k0 - 1) as f64).sqrt() + half_sqrt_n;
        twice_t = log2_deg_max + log2_vn + nf * radius.log2();
    }

    let log2_shell = |k: u64| log2_vn + nf * ((k as f64).sqrt() + half_sqrt_n).log2();
    let log2_deg = |k: u64| {
        let delta = (k as f64).sqrt() / (2.0 * rho);
        let cyl = (2.0 * rho * (1.0 - delta)).log2()
            + log2_unit_ball_volume(n - 1)
            + (nf - 1.0) * rho.log2()
            + (nf - 1.0) / 2.0 * (1.0 - delta * delta).log2();
        cyl.min(log2_deg_max)
    };

    if k_max >= k0 {
        let terms = k_max - k0 + 1;
        if terms <= direct_terms {
            for k in k0..=k_max {
                twice_t = log2_add(twice_t, log2_shell(k) + log2_deg(k));
            }
        } else {
            let width = terms.div_ceil(SHELL_BLOCKS);
            let mut lo = k0;
            while lo <= k_max {
                let hi = (lo + width - 1).min(k_max);
                // shell bound grows with k, degree bound shrinks
                let block = ((hi - lo + 1) as f64).log2() + log2_shell(hi) + log2_deg(lo);
                twice_t = log2_add(twice_t, block);
                lo = hi + 1;
            }
        }
    }
    Ok(twice_t - 1.0)
}

/// `t / d^2` decay on the reference curve: `log2 t_upper - 2 log2 d_upper`,
/// which equals `n log2(sqrt3/2) + log2(n rho^2)`.
pub fn t_over_d_squared_paper(n: u64) -> f64 {
    let p = FormulaParams::paper_curve(n).expect("positive n");
    t_upper_paper(n) - 2.0 * log2_d_upper(&p)
}

/// Size and cost of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityEstimate {
    /// `log2 (s+1)^n`.
    pub vertex_count_log2: f64,
    /// `(s+1)^n` when it fits in 64 bits.
    pub vertex_count: Option<u64>,
    /// `log2(V_n^2 (s+1)^n rho^{2n} + (s+1)^n)`: average degree times edges plus vertices.
    pub work_log2: f64,
    /// `work_log2 / (n log2 n)`, the exponent in `2^{gamma n log2 n}`; `None` for `n = 1`.
    pub gamma_ratio: Option<f64>,
    /// `log2 (64 pi e n^7)^n`, the large-`n` form of the work on the reference curve.
    pub paper_comparison_log2: Option<f64>,
}

pub fn complexity_estimate(p: &FormulaParams) -> ComplexityEstimate {
    let nf = p.nf();
    let vertices = p.log2_vertex_count();
    let work = log2_add(
        2.0 * log2_unit_ball_volume(p.n as usize) + vertices + 2.0 * nf * p.rho().log2(),
        vertices,
    );
    let count = (p.s + 1.0).powf(nf);
    ComplexityEstimate {
        vertex_count_log2: vertices,
        vertex_count: (count < u64::MAX as f64).then(|| count.round() as u64),
        work_log2: work,
        gamma_ratio: (p.n > 1).then(|| work / (nf * nf.log2())),
        paper_comparison_log2: p
            .is_paper_curve()
            .then(|| nf * (64.0 * PI * E).log2() + 7.0 * nf * nf.log2()),
    }
}

/// Measured counterpart of the work estimate: `d_av |E| + |V|`.
pub fn measured_work(g: &LatticeGraph) -> f64 {
    g.average_degree() * g.edge_count() as f64 + g.vertex_count() as f64
}

/// Every bound for one parameter choice. Fields ending in a density, degree
/// or count are base-2 logarithms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub params: FormulaParams,
    pub d_upper: f64,
    pub t_upper_generic: Option<f64>,
    pub t_upper_paper: Option<f64>,
    pub minkowski_density: f64,
    pub improved_density: ImprovedDensity,
    pub alpha_lower_trivial: f64,
    pub alpha_lower_jv: f64,
    pub theorem1_constant: f64,
    pub complexity: ComplexityEstimate,
}

impl BoundReport {
    pub fn new(p: &FormulaParams) -> Self {
        let d_upper = log2_d_upper(p);
        let t_generic = t_upper_generic(p).ok();
        let t_paper = p.is_paper_curve().then(|| t_upper_paper(p.n));
        let t_best = match (t_generic, t_paper) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };

        let vertices = p.log2_vertex_count();
        let alpha_trivial = vertices - d_upper;
        let alpha_jv = t_best
            .map(|t| {
                let inner = d_upper - 0.5 * (t - 3f64.log2()).max(0.0);
                if inner > 0.0 {
                    let formula = vertices - 10f64.log2() - d_upper + inner.log2();
                    formula.max(alpha_trivial)
                } else {
                    alpha_trivial
                }
            })
            .unwrap_or(alpha_trivial);

        BoundReport {
            params: *p,
            d_upper,
            t_upper_generic: t_generic,
            t_upper_paper: t_paper,
            minkowski_density: minkowski_density_guarantee(p),
            improved_density: improved_density_guarantee(p),
            alpha_lower_trivial: alpha_trivial,
            alpha_lower_jv: alpha_jv,
            theorem1_constant: theorem1_constant(),
            complexity: complexity_estimate(p),
        }
    }

    pub fn all_finite(&self) -> bool {
        let mut vals = vec![
            self.d_upper,
            self.alpha_lower_trivial,
            self.alpha_lower_jv,
            self.theorem1_constant,
            self.complexity.work_log2,
            self.complexity.vertex_count_log2,
        ];
        vals.extend(self.t_upper_generic);
        vals.extend(self.t_upper_paper);
        vals.extend(self.improved_density.log2);
        vals.iter().all(|v| v.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::unit_ball_volume;
    use crate::lattice_graph::{build_graph, build_neighborhood_graph, count_ball_lattice_points};
    use crate::params::Budget;

    fn fp(n: u64, r: f64, s: f64) -> FormulaParams {
        FormulaParams::new(n, r, s).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn constant() {
        let c = theorem1_constant();
        assert!((c - 0.0103759).abs() < 1e-7);
        assert!(c > 0.0103 && c < 0.0104);
        assert!(c > 0.01);
        assert!((20.0 * c - (2.0 / 3f64.sqrt()).log2()).abs() < 1e-15);
    }

    #[test]
    fn minkowski_small_case() {
        let p = fp(2, 8.0, 128.0);
        let direct = (1.0 / (4.0 * (1.0f64 + 1.0 / 8.0).powi(2) * (1.0 + 2f64.sqrt() / 32.0).powi(2))).log2();
        let unfactored = (128f64.powi(2) * PI * 64.0 / (144f64.powi(2) * PI * (16.0 + 2f64.sqrt() / 2.0).powi(2))).log2();
        let got = minkowski_density_guarantee(&p);
        assert!((got - direct).abs() < 1e-12);
        assert!((got - unfactored).abs() < 1e-12);
        assert!((got - (-2.46463)).abs() < 1e-5);
    }

    #[test]
    fn minkowski_tends_to_two_to_minus_n() {
        let p = fp(20, 1e12, 1e24);
        assert!((minkowski_density_guarantee(&p) + 20.0).abs() < 1e-9);
        let mut prev = f64::INFINITY;
        for n in [10, 50, 100, 200, 500, 1000] {
            let gap = minkowski_density_guarantee(&FormulaParams::paper_curve(n).unwrap()) + n as f64;
            assert!(gap < 0.0 && gap.abs() < prev);
            prev = gap.abs();
        }
    }

    #[test]
    fn counted_variant_is_larger() {
        for (n, r, s) in [(2, 1.0, 8.0), (5, 4.0, 40.0), (30, 1800.0, 1.62e6)] {
            let p = fp(n, r, s);
            assert!(minkowski_density_guarantee_counted(&p) > minkowski_density_guarantee(&p));
        }
    }

    #[test]
    fn log_forms_match_direct_evaluation() {
        for n in 1..=20u64 {
            for (r, s) in [(1.0, 8.0), (3.0, 40.0), (8.0, 512.0)] {
                let p = fp(n, r, s);
                let nf = n as f64;
                let rho = p.rho();
                let d = unit_ball_volume(n as usize) * rho.powf(nf);
                assert!(rel(log2_d_upper(&p).exp2(), d) < 1e-9);
                let mink = (s / (s + 2.0 * r)).powf(nf) * (r / rho).powf(nf);
                assert!(rel(minkowski_density_guarantee(&p).exp2(), mink) < 1e-9);
                let counted = ((s + 1.0) / (s + 2.0 * r)).powf(nf) * (r / rho).powf(nf);
                assert!(rel(minkowski_density_guarantee_counted(&p).exp2(), counted) < 1e-9);
                let bracket = (2.0 / 3f64.sqrt()).log2() - (nf * rho * rho).log2() / nf;
                let imp = improved_density_guarantee(&p);
                assert!((imp.bracket - bracket).abs() < 1e-12);
                if let Some(l) = imp.log2 {
                    let direct = nf / 20.0 * mink * bracket;
                    assert!(rel(l.exp2(), direct) < 1e-9);
                }
            }
            let rho = rho(n as usize, 2.0 * (n * n) as f64);
            let vn = unit_ball_volume(n as usize);
            let direct = (3f64.sqrt() / 2.0).powf(n as f64) * n as f64 * vn * vn * rho.powf(2.0 * n as f64 + 2.0);
            assert!(rel(t_upper_paper(n).exp2(), direct) < 1e-9);
        }
    }

    #[test]
    fn improved_bound_invalid_at_desk_scale() {
        let imp = improved_density_guarantee(&fp(10, 200.0, 20000.0));
        assert!(imp.bracket < 0.0);
        assert!(!imp.is_valid());
        for n in 1..=200 {
            assert!(!improved_density_guarantee(&FormulaParams::paper_curve(n).unwrap()).is_valid());
        }
    }

    #[test]
    fn improved_bound_approaches_constant() {
        let target = theorem1_constant().log2();
        let mut prev = f64::INFINITY;
        for n in [1_000u64, 10_000, 100_000, 1_000_000] {
            let p = FormulaParams::paper_curve(n).unwrap();
            let gap = (improved_density_guarantee(&p).log2.unwrap() - ((n as f64).log2() - n as f64) - target).abs();
            assert!(gap < prev);
            prev = gap;
        }
        assert!(prev < 0.002);
    }

    #[test]
    fn crossing_dimension_regression() {
        // frozen from an independent 50-digit evaluation of the same expression
        assert_eq!(crossing_dimension(20_000), Some(9723));
    }

    #[test]
    fn reference_t_decays_relative_to_d_squared() {
        for n in [2u64, 10, 100, 1000] {
            let p = FormulaParams::paper_curve(n).unwrap();
            let expected = n as f64 * (3f64.sqrt() / 2.0).log2() + (n as f64 * p.rho() * p.rho()).log2();
            assert!((t_over_d_squared_paper(n) - expected).abs() < 1e-9 * expected.abs().max(1.0));
        }
        assert!(t_over_d_squared_paper(1000) < -150.0);
        for n in [1u64, 10, 100, 1000, 10_000] {
            assert!(t_upper_paper(n).is_finite() && t_upper_paper(n) > 0.0);
        }
    }

    #[test]
    fn generic_t_bound_dominates_measured_edges() {
        let b = Budget::default();
        for n in 1..=3u64 {
            for r in 1..=3u64 {
                let h = build_neighborhood_graph(n as usize, r, &b).unwrap();
                let bound = t_upper_generic(&fp(n, r as f64, 2.0)).unwrap();
                assert!(bound.exp2() >= h.edge_count() as f64, "n={n} r={r}");
            }
        }
        // path neighbourhood {-1, 1} has no edges
        assert!(t_upper_generic(&fp(1, 1.0, 2.0)).unwrap().exp2() >= 0.0);
    }

    #[test]
    fn generic_t_bound_below_reference_chain_on_curve() {
        // at n = 2 the reference-curve radius r = 8 satisfies every shortcut hypothesis
        let generic = t_upper_generic(&FormulaParams::paper_curve(2).unwrap()).unwrap();
        assert!(generic <= t_upper_paper(2));
        assert!(generic.is_finite());
    }

    #[test]
    fn generic_t_bound_blockwise_is_finite_and_above_direct() {
        for (n, r) in [(3u64, 300.0), (8, 400.0)] {
            let p = fp(n, r, 2.0);
            let direct = t_upper_generic_with(&p, u64::MAX).unwrap();
            let block = t_upper_generic_with(&p, 0).unwrap();
            assert!(block >= direct && block - direct < 1.0, "n={n}: {block} vs {direct}");
        }
        // r = 600 has 1.35M far shells, past the direct-summation cutoff
        assert!(t_upper_generic(&fp(3, 600.0, 2.0)).unwrap().is_finite());
    }

    #[test]
    fn generic_t_bound_precondition() {
        assert!(t_upper_generic(&fp(100, 4.0, 8.0)).is_err());
        assert!(t_upper_generic(&fp(100, 5.0, 8.0)).is_ok());
    }

    #[test]
    fn shell_product_maximum() {
        // delta^2 (1 - delta^2) <= 3/16 on shells with delta <= 1/2
        for (n, r) in [(2u64, 8u64), (3, 18), (10, 200)] {
            let p = fp(n, r as f64, 2.0);
            for k in (1..4 * r * r).step_by(7) {
                let delta = (k as f64).sqrt() / (2.0 * p.rho());
                assert!(delta < 0.5);
                assert!(delta * delta * (1.0 - delta * delta) <= 3.0 / 16.0);
            }
        }
    }

    #[test]
    fn degree_bound_dominates_ball_counts() {
        let b = Budget::default();
        for n in 1..=3u64 {
            for r in 1..=4u64 {
                let count = count_ball_lattice_points(n as usize, r, &b).unwrap();
                assert!(count as f64 <= log2_d_upper(&fp(n, r as f64, 2.0)).exp2());
            }
        }
    }

    #[test]
    fn work_exponent_on_reference_curve() {
        let c = (64.0 * PI * E).log2();
        let mut prev = f64::INFINITY;
        for n in [100u64, 1_000, 10_000, 100_000] {
            let est = complexity_estimate(&FormulaParams::paper_curve(n).unwrap());
            let gamma = est.gamma_ratio.unwrap();
            assert!(gamma > 7.0 && gamma < prev);
            prev = gamma;
            // (gamma - 7) log2 n tends to log2(64 pi e)
            let lead = (gamma - 7.0) * (n as f64).log2();
            assert!((lead - c).abs() < 2.0, "n={n}: {lead}");
            let cmp = est.paper_comparison_log2.unwrap();
            // Stirling: V_n^2 = (2 pi e / n)^n / (n pi) up to 1 + o(1)
            assert!((est.work_log2 - cmp).abs() <= (n as f64 * PI).log2() + 1.0);
        }
    }

    #[test]
    fn work_exponent_on_slower_curve() {
        let eps = 0.01;
        let mut prev = f64::INFINITY;
        for n in [100u64, 10_000, 1_000_000, 100_000_000] {
            let est = complexity_estimate(&FormulaParams::power_curve(n, 1.5 + eps, 2.5 + eps).unwrap());
            let gamma = est.gamma_ratio.unwrap();
            assert!(gamma < prev);
            prev = gamma;
        }
        assert!(prev - (4.5 + 3.0 * eps) < 0.4);
    }

    #[test]
    fn measured_work_below_estimate() {
        let p = PackingParams::new(2, 1, 8).unwrap();
        let g = build_graph(&p, &Budget::default()).unwrap();
        let est = complexity_estimate(&FormulaParams::from(&p));
        assert_eq!(est.vertex_count, Some(81));
        assert!(measured_work(&g) <= est.work_log2.exp2());
        assert_eq!(measured_work(&g), 2.0 * 272.0 * 272.0 / 81.0 + 81.0);
    }

    #[test]
    fn report_fields() {
        let r = BoundReport::new(&fp(2, 1.0, 8.0));
        assert!(r.all_finite());
        assert!(r.t_upper_paper.is_none());
        assert!(!r.improved_density.is_valid());
        assert!(r.alpha_lower_jv >= r.alpha_lower_trivial);
        let r = BoundReport::new(&FormulaParams::paper_curve(1000).unwrap());
        assert!(r.all_finite());
        assert!(r.t_upper_paper.is_some());
        assert!(r.improved_density.is_valid());
    }

    #[test]
    fn parameter_validation() {
        assert!(FormulaParams::new(0, 1.0, 2.0).is_err());
        assert!(FormulaParams::new(2, 0.0, 2.0).is_err());
        assert!(FormulaParams::new(2, 1.0, -2.0).is_err());
        assert!(FormulaParams::paper_curve(3).unwrap().is_paper_curve());
    }
}
