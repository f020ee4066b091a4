//! The lattice graph on `Z^n ∩ K0`: two points are adjacent when their
//! Euclidean distance is below `2r`, so independent sets are exactly the
//! center sets of non-overlapping radius-`r` spheres.
//!
//! All distance tests are on integer squared distances; `d < 2r` is
//! `d^2 <= 4r^2 - 1`.

mod cells;
mod points;
mod stats;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cells::CellList;
pub use points::{
    ball_points, count_ball_lattice_points, enumerate_cube_points, squared_distance, squared_norm,
    Points,
};

use crate::error::Result;
use crate::params::{edge_threshold, Budget, PackingParams};

/// What vertex set a [`LatticeGraph`] was built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// `Z^n ∩ K0` for the given parameters.
    Cube(PackingParams),
    /// The punctured ball `(Z^n \ {0}) ∩ S(2r)`: the ideal neighbourhood of a vertex.
    Neighborhood,
    /// Any other integer point set.
    Custom,
}

/// Immutable adjacency structure in compressed sparse row form.
#[derive(Debug)]
pub struct LatticeGraph {
    kind: GraphKind,
    radius: u64,
    points: Points,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    d_max: usize,
    edge_count: u64,
    neighborhood_edges: OnceLock<Vec<u64>>,
    triangles: OnceLock<u64>,
}

impl Clone for LatticeGraph {
    fn clone(&self) -> Self {
        LatticeGraph {
            kind: self.kind,
            radius: self.radius,
            points: self.points.clone(),
            offsets: self.offsets.clone(),
            targets: self.targets.clone(),
            d_max: self.d_max,
            edge_count: self.edge_count,
            neighborhood_edges: self.neighborhood_edges.clone(),
            triangles: self.triangles.clone(),
        }
    }
}

impl PartialEq for LatticeGraph {
    fn eq(&self, other: &Self) -> bool {
        self.radius == other.radius
            && self.points == other.points
            && self.offsets == other.offsets
            && self.targets == other.targets
    }
}

/// Build `G_n` on `Z^n ∩ K0`.
pub fn build_graph(p: &PackingParams, budget: &Budget) -> Result<LatticeGraph> {
    p.validate()?;
    let points = enumerate_cube_points(p.n, p.s, budget)?;
    LatticeGraph::build(points, p.r, GraphKind::Cube(*p), budget)
}

/// Build `H_n`, the graph induced on the punctured open ball of radius `2r`.
/// Its edge count is the neighbourhood edge count of any vertex far enough
/// from the boundary of `K0`.
pub fn build_neighborhood_graph(n: usize, r: u64, budget: &Budget) -> Result<LatticeGraph> {
    let ball = ball_points(n, r, budget)?;
    let punctured = Points::from_rows(n, ball.iter().filter(|v| v.iter().any(|&x| x != 0)));
    LatticeGraph::build(punctured, r, GraphKind::Neighborhood, budget)
}

impl LatticeGraph {
    /// Graph on an arbitrary set of distinct integer points with the same
    /// edge rule. Points are re-sorted lexicographically.
    pub fn from_points(points: &Points, r: u64, budget: &Budget) -> Result<Self> {
        let mut rows: Vec<&[i64]> = points.iter().collect();
        rows.sort_unstable();
        rows.dedup();
        let sorted = Points::from_rows(points.dim(), rows);
        Self::build(sorted, r, GraphKind::Custom, budget)
    }

    fn build(points: Points, r: u64, kind: GraphKind, budget: &Budget) -> Result<Self> {
        debug_assert!(points.is_sorted_lex());
        budget.check_vertices(Some(points.len() as u128))?;
        let threshold = edge_threshold(r);
        let len = points.len();

        let lists: Vec<Vec<u32>> = if CellList::worthwhile(&points, 2 * r) {
            let cells = CellList::new(&points, 2 * r);
            budget.check_comparisons(cells.comparison_count())?;
            (0..len)
                .into_par_iter()
                .map(|i| {
                    let p = points.get(i);
                    let mut nb = Vec::new();
                    cells.for_each_candidate(p, |j| {
                        if j as usize != i && squared_distance(p, points.get(j as usize)) <= threshold {
                            nb.push(j);
                        }
                    });
                    nb.sort_unstable();
                    nb
                })
                .collect()
        } else {
            budget.check_comparisons((len as u128) * (len as u128))?;
            (0..len)
                .into_par_iter()
                .map(|i| {
                    let p = points.get(i);
                    (0..len as u32)
                        .filter(|&j| j as usize != i && squared_distance(p, points.get(j as usize)) <= threshold)
                        .collect()
                })
                .collect()
        };

        let mut offsets = Vec::with_capacity(len + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        let mut d_max = 0;
        for nb in &lists {
            d_max = d_max.max(nb.len());
            targets.extend_from_slice(nb);
            offsets.push(targets.len());
        }
        let edge_count = targets.len() as u64 / 2;

        Ok(LatticeGraph {
            kind,
            radius: r,
            points,
            offsets,
            targets,
            d_max,
            edge_count,
            neighborhood_edges: OnceLock::new(),
            triangles: OnceLock::new(),
        })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Parameters of a cube graph; `None` for neighbourhood or custom graphs.
    pub fn params(&self) -> Option<&PackingParams> {
        match &self.kind {
            GraphKind::Cube(p) => Some(p),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }

    pub fn points(&self) -> &Points {
        &self.points
    }

    pub fn coords(&self, v: u32) -> &[i64] {
        self.points.get(v as usize)
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn is_adjacent(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Maximum degree `d_n`.
    pub fn max_degree(&self) -> usize {
        self.d_max
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn average_degree(&self) -> f64 {
        if self.vertex_count() == 0 {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.vertex_count() as f64
        }
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<u32> {
        self.points.position_sorted(coords).map(|i| i as u32)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32)
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Number of edges induced inside `N(v)`, for every vertex `v`.
    pub fn neighborhood_edge_counts(&self) -> &[u64] {
        self.neighborhood_edges
            .get_or_init(|| stats::neighborhood_edge_counts(self))
    }

    /// `t_n`: the largest number of edges induced by a single neighbourhood.
    pub fn neighborhood_edge_max(&self) -> u64 {
        self.neighborhood_edge_counts().iter().copied().max().unwrap_or(0)
    }

    /// `T_n`: the number of triangles.
    pub fn triangle_count(&self) -> u64 {
        *self.triangles.get_or_init(|| stats::triangle_count(self))
    }

    /// Text dump: `v <index> <coords...>` lines, then `e <i> <j>` lines with `i < j`.
    pub fn write_dump<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (i, p) in self.points.iter().enumerate() {
            write!(w, "v {i}")?;
            for x in p {
                write!(w, " {x}")?;
            }
            writeln!(w)?;
        }
        for (u, v) in self.edges() {
            writeln!(w, "e {u} {v}")?;
        }
        Ok(())
    }
}

/// Squared-distance shell sizes `|U_k|` of the punctured ball, `k = 1 .. 4r^2 - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellProfile {
    pub n: usize,
    pub r: u64,
    pub counts: BTreeMap<u64, u64>,
}

impl ShellProfile {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, k: u64) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }
}

pub fn shell_profile(n: usize, r: u64, budget: &Budget) -> Result<ShellProfile> {
    let ball = ball_points(n, r, budget)?;
    let mut counts: BTreeMap<u64, u64> = (1..=edge_threshold(r)).map(|k| (k, 0)).collect();
    for v in ball.iter() {
        let k = squared_norm(v);
        if k > 0 {
            *counts.get_mut(&k).expect("shell within range") += 1;
        }
    }
    Ok(ShellProfile { n, r, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{d_n_upper, unit_ball_volume};

    fn graph(n: usize, r: u64, s: u64) -> LatticeGraph {
        build_graph(&PackingParams::new(n, r, s).unwrap(), &Budget::default()).unwrap()
    }

    #[test]
    fn path_graph() {
        let g = graph(1, 1, 8);
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.triangle_count(), 0);
        assert_eq!(g.neighborhood_edge_max(), 0);
        for (u, v) in g.edges() {
            assert_eq!(v, u + 1);
        }
    }

    #[test]
    fn king_graph() {
        let g = graph(2, 1, 8);
        assert_eq!(g.vertex_count(), 81);
        assert_eq!(g.max_degree(), 8);
        for (u, v) in g.edges() {
            assert!(matches!(squared_distance(g.coords(u), g.coords(v)), 1 | 2));
        }
        let center = g.index_of(&[0, 0]).unwrap();
        assert_eq!(g.degree(center), 8);
        // 9x9 king graph: 2*8*9 orthogonal + 2*8*8 diagonal
        assert_eq!(g.edge_count(), 144 + 128);
    }

    #[test]
    fn small_king_graph_statistics() {
        let g = graph(2, 1, 2);
        assert_eq!(g.edge_count(), 20);
        assert_eq!(g.triangle_count(), 16);
        assert_eq!(g.neighborhood_edge_max(), 12);
        let center = g.index_of(&[0, 0]).unwrap();
        assert_eq!(g.neighborhood_edge_counts()[center as usize], 12);
    }

    #[test]
    fn single_vertex() {
        let g = graph(2, 1, 0);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.max_degree(), 0);
        assert_eq!(g.triangle_count(), 0);
        assert_eq!(g.neighborhood_edge_max(), 0);
    }

    #[test]
    fn degree_never_exceeds_volume_bound() {
        for n in 1..=3 {
            for r in 1..=3 {
                for s in [0, 2, 4, 8] {
                    let g = graph(n, r, s);
                    let p = g.params().unwrap();
                    assert!((g.max_degree() + 1) as f64 <= d_n_upper(p));
                }
            }
        }
    }

    #[test]
    fn interior_vertex_sees_full_ball() {
        for (n, r) in [(1, 1), (1, 3), (2, 1), (2, 2), (3, 1)] {
            let s = 4 * r + 2;
            let g = graph(n, r, s);
            let h = build_neighborhood_graph(n, r, &Budget::default()).unwrap();
            let origin = g.index_of(&vec![0; n]).unwrap();
            assert_eq!(g.degree(origin), h.vertex_count());
            assert_eq!(g.neighborhood_edge_counts()[origin as usize], h.edge_count());
        }
    }

    #[test]
    fn neighborhood_graphs() {
        let b = Budget::default();
        let h = build_neighborhood_graph(1, 1, &b).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 0);
        let h = build_neighborhood_graph(2, 1, &b).unwrap();
        assert_eq!(h.vertex_count(), 8);
        assert_eq!(h.edge_count(), 12);
        let h = build_neighborhood_graph(2, 2, &b).unwrap();
        assert_eq!(h.vertex_count(), 44);
        assert_eq!(h.edge_count(), 528);
        assert_eq!(h.kind(), GraphKind::Neighborhood);
        assert!(h.params().is_none());
    }

    #[test]
    fn shells() {
        let b = Budget::default();
        let sp = shell_profile(2, 1, &b).unwrap();
        assert_eq!(sp.counts, BTreeMap::from([(1, 4), (2, 4), (3, 0)]));
        assert_eq!(shell_profile(1, 1, &b).unwrap().counts.get(&1), Some(&2));
        assert_eq!(shell_profile(2, 2, &b).unwrap().total(), 44);
        for n in 1..=3usize {
            for r in 1..=4u64 {
                let sp = shell_profile(n, r, &b).unwrap();
                let ball = count_ball_lattice_points(n, r, &b).unwrap();
                assert_eq!(sp.total(), ball - 1);
                for (&k, &c) in &sp.counts {
                    let bound = unit_ball_volume(n) * ((k as f64).sqrt() + (n as f64).sqrt() / 2.0).powi(n as i32);
                    assert!(c as f64 <= bound, "n={n} r={r} k={k}");
                }
            }
        }
    }

    #[test]
    fn custom_point_sets() {
        let pts = Points::from_rows(1, [[10], [0], [20]]);
        let g = LatticeGraph::from_points(&pts, 1, &Budget::default()).unwrap();
        assert_eq!(g.coords(0), &[0]);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn comparison_budget_is_enforced() {
        let p = PackingParams::new(2, 3, 40).unwrap();
        let b = Budget {
            max_vertices: 10_000,
            max_comparisons: 1000,
        };
        assert!(matches!(
            build_graph(&p, &b),
            Err(crate::Error::BudgetExceeded { what: "edge comparisons", .. })
        ));
    }

    #[test]
    fn dump_format() {
        let g = graph(1, 1, 2);
        let mut out = Vec::new();
        g.write_dump(&mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "v 0 -1\nv 1 0\nv 2 1\ne 0 1\ne 1 2\n"
        );
    }
}
