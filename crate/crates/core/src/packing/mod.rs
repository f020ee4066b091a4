//! Sphere packings assembled from independent sets.
//!
//! Spheres of radius `r` about the points of an independent set of the
//! lattice graph have pairwise disjoint interiors (touching is allowed) and
//! lie inside `K1`. Because translates of `K1` tile space, the periodic
//! packing has density `count * V_n * r^n / (s + 2r)^n`.

mod file;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use file::{PackingDocument, CHECKSUM_PREFIX};

use crate::error::{Error, Result};
use crate::geometry::{log2_unit_ball_volume, unit_ball_volume};
use crate::independence::{first_conflict, IndependentSet};
use crate::lattice_graph::{squared_distance, CellList, LatticeGraph, Points};
use crate::params::PackingParams;

/// Above this many centers verification buckets the centers instead of
/// checking every pair.
const ALL_PAIRS_MAX: usize = 10_000;

/// Density as an exact multiple of `V_n`: `count * radius_pow / cube_pow`
/// with `radius_pow = r^n` and `cube_pow = (s + 2r)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDensity {
    pub count: u64,
    pub radius_pow: BigUint,
    pub cube_pow: BigUint,
}

impl ExactDensity {
    fn new(p: &PackingParams, count: u64) -> Self {
        ExactDensity {
            count,
            radius_pow: BigUint::from(p.r).pow(p.n as u32),
            cube_pow: BigUint::from(p.outer_side()).pow(p.n as u32),
        }
    }

    /// `count * r^n / (s + 2r)^n`, the density divided by `V_n`.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(
            (BigUint::from(self.count) * &self.radius_pow).into(),
            self.cube_pow.clone().into(),
        )
    }

    /// Float value of [`ExactDensity::ratio`].
    pub fn ratio_f64(&self) -> f64 {
        if self.count == 0 {
            return 0.0;
        }
        self.ratio().to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.count.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Packing {
    params: PackingParams,
    centers: Points,
    density: ExactDensity,
    density_value: f64,
}

impl Packing {
    /// Packing with the given centers. Nothing is verified here; see [`Packing::verify`].
    pub fn new(params: PackingParams, centers: Points) -> Result<Self> {
        params.validate()?;
        if centers.dim() != params.n && !centers.is_empty() {
            return Err(Error::InvalidParams(format!(
                "centers have dimension {}, parameters say {}",
                centers.dim(),
                params.n
            )));
        }
        let centers = if centers.dim() == params.n {
            centers
        } else {
            Points::new(params.n)
        };
        let count = centers.len() as u64;
        let density = ExactDensity::new(&params, count);
        let density_value = if count == 0 {
            0.0
        } else {
            // the exact ratio is accurate to an ulp when it is a normal f64
            let direct = density.ratio().to_f64().unwrap_or(0.0) * unit_ball_volume(params.n);
            if direct.is_normal() {
                direct
            } else {
                let n = params.n as f64;
                ((count as f64).log2()
                    + log2_unit_ball_volume(params.n)
                    + n * (params.r as f64 / params.outer_side() as f64).log2())
                .exp2()
            }
        };
        Ok(Packing {
            params,
            centers,
            density,
            density_value,
        })
    }

    pub fn params(&self) -> &PackingParams {
        &self.params
    }

    pub fn centers(&self) -> &Points {
        &self.centers
    }

    pub fn radius(&self) -> u64 {
        self.params.r
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn density(&self) -> &ExactDensity {
        &self.density
    }

    /// Density as a float.
    pub fn density_value(&self) -> f64 {
        self.density_value
    }

    /// Pairwise separation and containment check.
    pub fn verify(&self) -> VerificationReport {
        verify_centers(&self.params, &self.centers)
    }
}

/// Spheres about the vertices of `iset`. The set must be independent in `g`,
/// which must have been built from `p`.
pub fn assemble(p: &PackingParams, iset: &IndependentSet, g: &LatticeGraph) -> Result<Packing> {
    if g.params() != Some(p) {
        return Err(Error::InvalidParams(
            "graph was not built from these parameters".into(),
        ));
    }
    if let Some((u, v)) = first_conflict(g, iset.vertices()) {
        return Err(Error::NotIndependent(u, v));
    }
    let centers = Points::from_rows(p.n, iset.vertices().iter().map(|&v| g.coords(v)));
    Packing::new(*p, centers)
}

/// A pair of centers closer than `2r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Overlap {
    pub first: usize,
    pub second: usize,
    pub squared_distance: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub separation_ok: bool,
    pub containment_ok: bool,
    /// Smallest squared distance among the pairs examined. Exact whenever it
    /// is below `4r^2` or the center count is at most 10^4.
    pub min_squared_distance: Option<u64>,
    /// Overlapping pairs, sorted.
    pub overlaps: Vec<Overlap>,
    /// Indices of centers outside `K0`.
    pub outside: Vec<usize>,
    pub passed: bool,
}

/// Calls its argument once per candidate partner index.
type CandidateScan<'a> = dyn FnMut(&mut dyn FnMut(usize)) + 'a;

fn verify_centers(p: &PackingParams, centers: &Points) -> VerificationReport {
    let limit = 4 * p.r * p.r;
    let len = centers.len();

    let scan = |i: usize, candidates: &mut CandidateScan| {
        let a = centers.get(i);
        let mut min = None::<u64>;
        let mut bad = Vec::new();
        candidates(&mut |j| {
            if j > i {
                let d = squared_distance(a, centers.get(j));
                min = Some(min.map_or(d, |m| m.min(d)));
                if d < limit {
                    bad.push(Overlap {
                        first: i,
                        second: j,
                        squared_distance: d,
                    });
                }
            }
        });
        (min, bad)
    };

    let per_center: Vec<(Option<u64>, Vec<Overlap>)> = if len <= ALL_PAIRS_MAX {
        (0..len)
            .into_par_iter()
            .map(|i| scan(i, &mut |visit| (i + 1..len).for_each(&mut *visit)))
            .collect()
    } else {
        let cells = CellList::new(centers, 2 * p.r);
        (0..len)
            .into_par_iter()
            .map(|i| {
                scan(i, &mut |visit| {
                    cells.for_each_candidate(centers.get(i), |j| visit(j as usize))
                })
            })
            .collect()
    };

    let mut min_squared_distance = None;
    let mut overlaps = Vec::new();
    for (m, bad) in per_center {
        if let Some(m) = m {
            min_squared_distance = Some(min_squared_distance.map_or(m, |x: u64| x.min(m)));
        }
        overlaps.extend(bad);
    }
    overlaps.sort_unstable();

    let half = p.half_side();
    let outside: Vec<usize> = centers
        .iter()
        .enumerate()
        .filter(|(_, c)| c.iter().any(|x| x.abs() > half))
        .map(|(i, _)| i)
        .collect();

    let separation_ok = overlaps.is_empty();
    let containment_ok = outside.is_empty();
    VerificationReport {
        separation_ok,
        containment_ok,
        min_squared_distance,
        overlaps,
        outside,
        passed: separation_ok && containment_ok,
    }
}
