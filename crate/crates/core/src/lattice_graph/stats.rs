use rayon::prelude::*;

use super::LatticeGraph;

fn intersection_size(a: &[u32], b: &[u32]) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Forward-oriented triangle count: each triangle `u < v < w` is found once,
/// from its smallest vertex, by intersecting higher-indexed neighbour lists.
pub(super) fn triangle_count(g: &LatticeGraph) -> u64 {
    let higher = |u: u32| {
        let nb = g.neighbors(u);
        &nb[nb.partition_point(|&x| x <= u)..]
    };
    (0..g.vertex_count() as u32)
        .into_par_iter()
        .map(|u| {
            let hu = higher(u);
            hu.iter().map(|&v| intersection_size(hu, higher(v))).sum::<u64>()
        })
        .sum()
}

/// `e(N(v))` for every `v`: each edge `{a, b}` inside `N(v)` is seen from both
/// endpoints as a common neighbour of `a` and `v`, hence the halving.
pub(super) fn neighborhood_edge_counts(g: &LatticeGraph) -> Vec<u64> {
    (0..g.vertex_count() as u32)
        .into_par_iter()
        .map(|v| {
            let nv = g.neighbors(v);
            let twice: u64 = nv.iter().map(|&a| intersection_size(nv, g.neighbors(a))).sum();
            twice / 2
        })
        .collect()
}
