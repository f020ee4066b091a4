//! Ball volumes and the volume of the intersection of two equal balls.
//!
//! Two balls of radius `rho` whose centers are `2 * rho * delta` apart meet in
//! a lens. With `theta = acos(delta)` the lens is twice a spherical sector of
//! half-angle `theta` minus twice the cone over the same cap base, giving
//!
//! ```text
//! vol = (2 rho^n V_{n-1} / n) * ((n-1) * int_0^theta sin^{n-2}(phi) dphi - delta * sin^{n-1}(theta))
//! ```
//!
//! The lens also sits inside a cylinder of height `2 rho (1 - delta)` over an
//! `(n-1)`-ball of radius `rho sin(theta)`, which yields the cheaper upper
//! bounds used by the degree estimates in [`crate::bounds`].

use std::f64::consts::{LN_2, PI};

use statrs::function::beta::{beta_reg, ln_beta};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::params::PackingParams;

/// Above this dimension the sector integral uses the incomplete-beta identity.
const QUADRATURE_MAX_DIM: usize = 64;
const QUADRATURE_TOL: f64 = 1e-12;

/// `ln V_n` where `V_n = pi^{n/2} / Gamma(n/2 + 1)` is the volume of the unit `n`-ball.
pub fn ln_unit_ball_volume(n: usize) -> f64 {
    let half = n as f64 / 2.0;
    half * PI.ln() - ln_gamma(half + 1.0)
}

pub fn log2_unit_ball_volume(n: usize) -> f64 {
    ln_unit_ball_volume(n) / LN_2
}

pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        2 => PI,
        _ => ln_unit_ball_volume(n).exp(),
    }
}

/// `int_0^theta sin(phi)^(n-2) dphi` for `n >= 2` and `0 <= theta <= pi/2`.
pub fn sector_integral(n: usize, theta: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "sector integral needs n >= 2, got {n}"
        )));
    }
    if !(0.0..=PI / 2.0).contains(&theta) {
        return Err(Error::Domain(format!(
            "sector angle {theta} outside [0, pi/2]"
        )));
    }
    if theta == 0.0 {
        return Ok(0.0);
    }
    let m = (n - 2) as i32;
    match n {
        2 => Ok(theta),
        3 => Ok(1.0 - theta.cos()),
        _ if n <= QUADRATURE_MAX_DIM => Ok(adaptive_simpson(
            &|phi: f64| phi.sin().powi(m),
            0.0,
            theta,
            QUADRATURE_TOL,
        )),
        _ => Ok(sector_integral_beta(n, theta)),
    }
}

/// Incomplete-beta form: with `x = sin^2(theta)`,
/// `int_0^theta sin^m = B(x; (m+1)/2, 1/2) / 2`.
fn sector_integral_beta(n: usize, theta: f64) -> f64 {
    let a = (n as f64 - 1.0) / 2.0;
    let x = theta.sin().powi(2);
    0.5 * ln_beta(a, 0.5).exp() * beta_reg(a, 0.5, x)
}

/// Adaptive Simpson quadrature with a tolerance relative to a coarse estimate
/// of the whole integral.
pub(crate) fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    let coarse = composite_simpson(f, a, b, 16);
    let eps = (rel_tol * coarse.abs()).max(f64::MIN_POSITIVE);
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, eps, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * eps {
        return left + right + diff / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

fn composite_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Two radius-`rho` balls in dimension `n` with centers `2 rho delta` apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapGeometry {
    n: usize,
    rho: f64,
    delta: f64,
    theta: f64,
}

impl CapGeometry {
    pub fn new(n: usize, rho: f64, delta: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("cap geometry needs n >= 2, got {n}")));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::Domain(format!("ball radius must be positive, got {rho}")));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::Domain(format!(
                "normalized center distance must lie in (0, 1), got {delta}"
            )));
        }
        Ok(CapGeometry {
            n,
            rho,
            delta,
            theta: delta.acos(),
        })
    }

    /// Geometry for centers at Euclidean distance `distance`.
    pub fn from_distance(n: usize, rho: f64, distance: f64) -> Result<Self> {
        Self::new(n, rho, distance / (2.0 * rho))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Centers of neighbouring lattice points always satisfy `delta < 1/2`.
    pub fn in_neighbor_regime(&self) -> bool {
        self.delta < 0.5
    }

    fn sin_theta(&self) -> f64 {
        (1.0 - self.delta * self.delta).sqrt()
    }
}

/// Exact lens volume from the sector-minus-cone decomposition.
pub fn intersection_volume_exact(g: &CapGeometry) -> f64 {
    let n = g.n;
    let nf = n as f64;
    let integral = sector_integral(n, g.theta).expect("validated geometry");
    let prefactor = 2.0 * g.rho.powi(n as i32) * unit_ball_volume(n - 1) / nf;
    let cone = g.delta * g.sin_theta().powi(n as i32 - 1);
    prefactor * ((nf - 1.0) * integral - cone)
}

/// Volume of the enclosing cylinder, `2 rho (1 - delta) V_{n-1} (rho sin theta)^{n-1}`.
pub fn intersection_volume_cylinder_bound(g: &CapGeometry) -> f64 {
    let n = g.n as i32;
    2.0 * g.rho * (1.0 - g.delta) * unit_ball_volume(g.n - 1) * (g.rho * g.sin_theta()).powi(n - 1)
}

/// Relaxed cylinder bound `(1 - delta^2)^{n/2} n V_n rho^n`, using `2 V_{n-1} <= n V_n`.
pub fn intersection_volume_relaxed_bound(g: &CapGeometry) -> f64 {
    let nf = g.n as f64;
    (1.0 - g.delta * g.delta).powf(nf / 2.0) * nf * unit_ball_volume(g.n) * g.rho.powi(g.n as i32)
}

/// Inflated radius `2r + sqrt(n)/2`: every unit cube around a lattice point of
/// the open ball of radius `2r` lies in the ball of this radius.
pub fn rho(n: usize, r: f64) -> f64 {
    2.0 * r + (n as f64).sqrt() / 2.0
}

pub fn rho_of(p: &PackingParams) -> f64 {
    rho(p.n, p.r as f64)
}

/// Upper bound `V_n rho^n` on `d_n + 1`, the number of lattice points in the
/// open ball of radius `2r`.
pub fn d_n_upper(p: &PackingParams) -> f64 {
    log2_d_n_upper(p).exp2()
}

pub fn log2_d_n_upper(p: &PackingParams) -> f64 {
    log2_unit_ball_volume(p.n) + p.n as f64 * rho_of(p).log2()
}
