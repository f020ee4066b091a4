//! Slow, independent reference computations used as ground truth in tests.
//!
//! Monte Carlo estimators split their samples over a fixed number of shards.
//! Shard `k` draws from a ChaCha8 stream seeded with `seed ^ k`, and shards
//! report integer hit counts that are summed in shard order, so results are
//! bit-identical for any thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::unit_ball_volume;
use crate::lattice_graph::{squared_distance, CellList, LatticeGraph};
use crate::packing::Packing;
use crate::params::edge_threshold;

pub const SHARDS: u64 = 16;
pub const MIN_SAMPLES: u64 = 1_000;
pub const MAX_BALL_DIMENSION: usize = 8;
pub const MAX_DENSITY_DIMENSION: usize = 4;
pub const MAX_BRUTE_VERTICES: usize = 5_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(samples)`.
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// Estimate of `scale * P(hit)` from `hits` successes in `samples` draws.
    fn from_hits(hits: u64, samples: u64, scale: f64, seed: u64) -> Self {
        let n = samples as f64;
        let p = hits as f64 / n;
        let variance = p * (1.0 - p) * n / (n - 1.0);
        McEstimate {
            mean: scale * p,
            std_error: scale * (variance / n).sqrt(),
            samples,
            seed,
        }
    }

    /// Whether `value` lies within `k` standard errors of the mean, allowing
    /// for rounding when the estimate has no spread.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_error + 1e-12 * value.abs().max(1.0)
    }

    /// Distance from `value` in standard errors; 0 when both coincide exactly.
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = (self.mean - value).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidParams(format!(
            "at least {MIN_SAMPLES} samples required, got {samples}"
        )));
    }
    Ok(())
}

/// Total hits over all shards; `draw(rng, count)` returns the hits among `count` draws.
fn sharded_hits<F>(samples: u64, seed: u64, draw: F) -> u64
where
    F: Fn(&mut ChaCha8Rng, u64) -> u64 + Sync,
{
    let per = samples / SHARDS;
    let extra = samples % SHARDS;
    let hits: Vec<u64> = (0..SHARDS)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ k);
            draw(&mut rng, per + u64::from(k < extra))
        })
        .collect();
    hits.iter().sum()
}

/// Volume of the intersection of two radius-`rho` balls in dimension `n`
/// whose centers are `2 rho delta` apart. Points are drawn uniformly from the
/// first ball by rejection from its bounding cube.
pub fn mc_ball_intersection(n: usize, rho: f64, delta: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    if n == 0 || n > MAX_BALL_DIMENSION {
        return Err(Error::InvalidParams(format!(
            "ball sampling supports 1 <= n <= {MAX_BALL_DIMENSION}, got {n}"
        )));
    }
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::InvalidParams(format!("ball radius must be positive, got {rho}")));
    }
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(Error::InvalidParams(format!("center offset must be non-negative, got {delta}")));
    }
    check_samples(samples)?;

    // work in units of rho: first ball is the unit ball, second is centered at (2 delta, 0, ...)
    let offset = 2.0 * delta;
    let hits = sharded_hits(samples, seed, |rng, count| {
        let mut x = vec![0.0f64; n];
        let mut hits = 0;
        let mut accepted = 0;
        while accepted < count {
            for xi in x.iter_mut() {
                *xi = rng.random_range(-1.0..1.0);
            }
            let norm: f64 = x.iter().map(|v| v * v).sum();
            if norm > 1.0 {
                continue;
            }
            accepted += 1;
            let shifted = norm - x[0] * x[0] + (x[0] - offset) * (x[0] - offset);
            if shifted <= 1.0 {
                hits += 1;
            }
        }
        hits
    });
    let scale = unit_ball_volume(n) * rho.powi(n as i32);
    Ok(McEstimate::from_hits(hits, samples, scale, seed))
}

/// Fraction of the outer cube `K1` covered by the open spheres of `pk`.
pub fn mc_packing_density(pk: &Packing, samples: u64, seed: u64) -> Result<McEstimate> {
    let p = pk.params();
    if p.n > MAX_DENSITY_DIMENSION {
        return Err(Error::InvalidParams(format!(
            "density sampling supports n <= {MAX_DENSITY_DIMENSION}, got {}",
            p.n
        )));
    }
    check_samples(samples)?;
    if pk.is_empty() {
        return Ok(McEstimate {
            mean: 0.0,
            std_error: 0.0,
            samples,
            seed,
        });
    }

    let centers = pk.centers();
    let r = p.r as f64;
    let r2 = r * r;
    let half = p.s as f64 / 2.0 + r;
    // a point within r of a center lies in a bucket adjacent to the center's
    let cells = CellList::new(centers, 2 * p.r);
    let hits = sharded_hits(samples, seed, |rng, count| {
        let mut x = vec![0.0f64; p.n];
        let mut hits = 0;
        for _ in 0..count {
            for xi in x.iter_mut() {
                *xi = rng.random_range(-half..half);
            }
            let mut inside = false;
            cells.for_each_near_cell(&cells.cell_coords_real(&x), |j| {
                if !inside {
                    let c = centers.get(j as usize);
                    let d2: f64 = x.iter().zip(c).map(|(a, &b)| (a - b as f64).powi(2)).sum();
                    inside = d2 < r2;
                }
            });
            hits += u64::from(inside);
        }
        hits
    });
    Ok(McEstimate::from_hits(hits, samples, 1.0, seed))
}

/// Reference statistics recomputed from coordinates alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BruteStats {
    pub max_degree: usize,
    pub edge_count: u64,
    pub triangles: u64,
    /// Largest number of edges inside any neighbourhood.
    pub max_neighborhood_edges: u64,
}

impl BruteStats {
    pub fn as_tuple(&self) -> (usize, u64, u64, u64) {
        (self.max_degree, self.edge_count, self.triangles, self.max_neighborhood_edges)
    }
}

/// Dense adjacency rows built by comparing every pair of points.
struct DenseAdjacency {
    words: usize,
    bits: Vec<u64>,
}

impl DenseAdjacency {
    fn new(g: &LatticeGraph) -> Result<Self> {
        let len = g.vertex_count();
        if len > MAX_BRUTE_VERTICES {
            return Err(Error::BudgetExceeded {
                what: "vertices for brute-force statistics",
                predicted: Some(len as u128),
                limit: MAX_BRUTE_VERTICES as u64,
            });
        }
        let threshold = edge_threshold(g.radius());
        let words = len.div_ceil(64).max(1);
        let pts = g.points();
        let rows: Vec<Vec<u64>> = (0..len)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words];
                for j in 0..len {
                    if j != i && squared_distance(pts.get(i), pts.get(j)) <= threshold {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        Ok(DenseAdjacency {
            words,
            bits: rows.concat(),
        })
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn has(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    fn common(&self, i: usize, j: usize) -> u64 {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| u64::from((a & b).count_ones()))
            .sum()
    }

    fn len(&self) -> usize {
        self.bits.len() / self.words
    }
}

/// Edge list of the graph recomputed by comparing all pairs of points,
/// with `u < v`, sorted.
pub fn brute_edges(g: &LatticeGraph) -> Result<Vec<(u32, u32)>> {
    let adj = DenseAdjacency::new(g)?;
    let len = g.vertex_count();
    let mut edges = Vec::new();
    for u in 0..len {
        for v in u + 1..len {
            if adj.has(u, v) {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Ok(edges)
}

/// `(d_max, |E|, T, t)` from a dense adjacency matrix, independent of the
/// graph's own adjacency lists.
pub fn brute_stats(g: &LatticeGraph) -> Result<BruteStats> {
    let adj = DenseAdjacency::new(g)?;
    let len = adj.len().min(g.vertex_count());
    let degrees: Vec<u64> = (0..len)
        .map(|i| adj.row(i).iter().map(|w| u64::from(w.count_ones())).sum())
        .collect();
    let edge_count = degrees.iter().sum::<u64>() / 2;

    // every triangle is counted once per edge, i.e. three times
    let mut triangle_sides = 0u64;
    let mut max_neighborhood_edges = 0u64;
    for v in 0..len {
        // e(N(v)): sum over neighbours a of |N(a) ∩ N(v)|, each edge seen twice
        let mut twice = 0u64;
        for a in 0..len {
            if adj.has(v, a) {
                let c = adj.common(v, a);
                twice += c;
                if a > v {
                    triangle_sides += c;
                }
            }
        }
        max_neighborhood_edges = max_neighborhood_edges.max(twice / 2);
    }

    Ok(BruteStats {
        max_degree: degrees.iter().copied().max().unwrap_or(0) as usize,
        edge_count,
        triangles: triangle_sides / 3,
        max_neighborhood_edges,
    })
}
