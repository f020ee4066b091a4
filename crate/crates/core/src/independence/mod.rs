//! Independent sets of a [`LatticeGraph`] and lower bounds on their size.
//!
//! Three extractors are provided:
//!
//! * [`greedy_maximal_is`] scans vertices in lexicographic order and keeps every
//!   vertex with no kept neighbour. Any maximal set has at least
//!   `|V| / (d + 1)` vertices.
//! * [`min_degree_greedy_is`] repeatedly takes a vertex of minimum remaining
//!   degree and deletes its closed neighbourhood. This stands in for the
//!   deterministic locally-sparse algorithm; its size is compared with the
//!   triangle-based bounds empirically.
//! * [`exact_max_is`] is a branch and bound that proves optimality on small
//!   instances.

mod exact;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use exact::{exact_max_is, DEFAULT_NODE_LIMIT};

use crate::error::{Error, Result};
use crate::lattice_graph::LatticeGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    LexGreedy,
    MinDegree,
    Exact,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::LexGreedy => "lex-greedy",
            Algorithm::MinDegree => "min-degree",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex-greedy" => Ok(Algorithm::LexGreedy),
            "min-degree" | "min-degree-greedy" => Ok(Algorithm::MinDegree),
            "exact" => Ok(Algorithm::Exact),
            other => Err(Error::InvalidParams(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// A set of pairwise non-adjacent vertices, sorted by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSet {
    vertices: Vec<u32>,
    is_maximal: bool,
    algorithm: Algorithm,
}

impl IndependentSet {
    /// Checks independence (and maximality if claimed) against `g`.
    pub fn new(g: &LatticeGraph, mut vertices: Vec<u32>, algorithm: Algorithm) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if let Some((u, v)) = first_conflict(g, &vertices) {
            return Err(Error::NotIndependent(u, v));
        }
        let is_maximal = is_maximal(g, &vertices);
        Ok(IndependentSet {
            vertices,
            is_maximal,
            algorithm,
        })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_maximal(&self) -> bool {
        self.is_maximal
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }
}

/// First adjacent pair inside `set`, if any.
pub fn first_conflict(g: &LatticeGraph, set: &[u32]) -> Option<(u32, u32)> {
    let mut member = vec![false; g.vertex_count()];
    for &v in set {
        member[v as usize] = true;
    }
    set.iter().find_map(|&u| {
        g.neighbors(u)
            .iter()
            .find(|&&v| member[v as usize])
            .map(|&v| (u.min(v), u.max(v)))
    })
}

pub fn is_independent(g: &LatticeGraph, set: &[u32]) -> bool {
    first_conflict(g, set).is_none()
}

/// Every vertex outside `set` has a neighbour inside it.
pub fn is_maximal(g: &LatticeGraph, set: &[u32]) -> bool {
    let mut member = vec![false; g.vertex_count()];
    for &v in set {
        member[v as usize] = true;
    }
    (0..g.vertex_count() as u32)
        .filter(|&v| !member[v as usize])
        .all(|v| g.neighbors(v).iter().any(|&u| member[u as usize]))
}

pub fn greedy_maximal_is(g: &LatticeGraph) -> IndependentSet {
    let mut blocked = vec![false; g.vertex_count()];
    let mut chosen = Vec::new();
    for v in 0..g.vertex_count() as u32 {
        if blocked[v as usize] {
            continue;
        }
        chosen.push(v);
        for &u in g.neighbors(v) {
            blocked[u as usize] = true;
        }
    }
    IndependentSet {
        vertices: chosen,
        is_maximal: true,
        algorithm: Algorithm::LexGreedy,
    }
}

pub fn min_degree_greedy_is(g: &LatticeGraph) -> IndependentSet {
    let len = g.vertex_count();
    let mut degree: Vec<usize> = (0..len as u32).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; len];
    // (current degree, index): the first element is the next pick
    let mut queue: BTreeSet<(usize, u32)> = (0..len as u32).map(|v| (degree[v as usize], v)).collect();
    let mut chosen = Vec::new();

    while let Some((_, v)) = queue.pop_first() {
        chosen.push(v);
        alive[v as usize] = false;
        let removed: Vec<u32> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| alive[u as usize])
            .collect();
        for &u in &removed {
            alive[u as usize] = false;
            queue.remove(&(degree[u as usize], u));
        }
        for &u in &removed {
            for &w in g.neighbors(u) {
                if alive[w as usize] {
                    let d = &mut degree[w as usize];
                    queue.remove(&(*d, w));
                    *d -= 1;
                    queue.insert((*d, w));
                }
            }
        }
    }
    chosen.sort_unstable();
    IndependentSet {
        vertices: chosen,
        is_maximal: true,
        algorithm: Algorithm::MinDegree,
    }
}

/// Run the named algorithm.
pub fn extract(g: &LatticeGraph, algorithm: Algorithm, node_limit: u64) -> Result<IndependentSet> {
    match algorithm {
        Algorithm::LexGreedy => Ok(greedy_maximal_is(g)),
        Algorithm::MinDegree => Ok(min_degree_greedy_is(g)),
        Algorithm::Exact => exact_max_is(g, node_limit),
    }
}

/// `|V| / (d + 1)`, the size guaranteed for any maximal independent set.
pub fn trivial_lower_bound(vertex_count: u64, d: u64) -> f64 {
    vertex_count as f64 / (d as f64 + 1.0)
}

/// `(|V| / 10d) (log2 d - log2(ratio) / 2)` with `ratio` clamped below at 1,
/// floored by the trivial bound.
fn local_sparsity_bound(vertex_count: u64, d: u64, ratio: f64) -> f64 {
    let trivial = trivial_lower_bound(vertex_count, d);
    if d == 0 {
        return trivial;
    }
    let d = d as f64;
    let term = vertex_count as f64 / (10.0 * d) * (d.log2() - 0.5 * ratio.max(1.0).log2());
    term.max(trivial)
}

/// Triangle-based lower bound on the independence number, using the
/// average triangle load `T / |V|`.
pub fn aks_lower_bound(vertex_count: u64, d: u64, triangles: u64) -> f64 {
    let ratio = if vertex_count == 0 {
        1.0
    } else {
        triangles as f64 / vertex_count as f64
    };
    local_sparsity_bound(vertex_count, d, ratio)
}

/// Same bound with `T / |V|` replaced by `t / 3`, where `t` is the largest
/// number of edges inside any one neighbourhood (`3T <= |V| t`).
pub fn jv_lower_bound(vertex_count: u64, d: u64, neighborhood_edges: u64) -> f64 {
    local_sparsity_bound(vertex_count, d, neighborhood_edges as f64 / 3.0)
}
