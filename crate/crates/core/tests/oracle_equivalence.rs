//! The cell-list graph and its cached statistics agree with the all-pairs
//! reference on every instance with at most 5000 vertices in the grid.

use packing_forge::lattice_graph::{build_graph, build_neighborhood_graph, LatticeGraph};
use packing_forge::oracle::{brute_edges, brute_stats, MAX_BRUTE_VERTICES};
use packing_forge::{Budget, PackingParams};

/// Largest even `s` with `(s+1)^n <= MAX_BRUTE_VERTICES`, and a few smaller sides.
fn sides(n: u32) -> Vec<u64> {
    let mut top = 0u64;
    while ((top + 3) as u128).pow(n) <= MAX_BRUTE_VERTICES as u128 {
        top += 2;
    }
    vec![0, 2, 6, top]
}

fn assert_matches(g: &LatticeGraph, label: &str) {
    let brute = brute_stats(g).unwrap();
    let fast = (g.max_degree(), g.edge_count(), g.triangle_count(), g.neighborhood_edge_max());
    assert_eq!(brute.as_tuple(), fast, "{label}");
    assert_eq!(brute_edges(g).unwrap(), g.edges().collect::<Vec<_>>(), "{label}");
    assert_eq!(3 * g.triangle_count(), g.neighborhood_edge_counts().iter().sum::<u64>(), "{label}");
}

#[test]
fn cube_graphs_match_brute_force() {
    let radii: [&[u64]; 4] = [&[1, 2, 3, 4], &[1, 2, 3], &[1, 2], &[1]];
    for n in 1..=4u32 {
        for &r in radii[n as usize - 1] {
            for s in sides(n) {
                let p = PackingParams::new(n as usize, r, s).unwrap();
                let g = build_graph(&p, &Budget::default()).unwrap();
                assert!(g.vertex_count() <= MAX_BRUTE_VERTICES);
                assert_matches(&g, &format!("n={n} r={r} s={s}"));
            }
        }
    }
}

#[test]
fn neighborhood_graphs_match_brute_force() {
    for n in 1..=3 {
        for r in 1..=3 {
            let h = build_neighborhood_graph(n, r, &Budget::default()).unwrap();
            assert_matches(&h, &format!("H n={n} r={r}"));
        }
    }
}

#[test]
fn known_neighborhood_edge_counts() {
    // edge counts of the punctured-ball graph, from an independent enumeration
    let expected = [
        (1, [0u64, 9, 30, 63]),
        (2, [12, 528, 3312, 10626]),
    ];
    for (n, counts) in expected {
        for (r, want) in (1..=4).zip(counts) {
            let h = build_neighborhood_graph(n, r, &Budget::default()).unwrap();
            assert_eq!(h.edge_count(), want, "n={n} r={r}");
        }
    }
    for (r, want) in [(1, 132u64), (2, 14469), (3, 186306)] {
        assert_eq!(build_neighborhood_graph(3, r, &Budget::default()).unwrap().edge_count(), want);
    }
}
