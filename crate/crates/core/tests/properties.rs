//! Randomised invariants of graph construction, independent sets, packings and volumes.

use packing_forge::geometry::{
    d_n_upper, intersection_volume_cylinder_bound, intersection_volume_exact, intersection_volume_relaxed_bound,
    CapGeometry,
};
use packing_forge::independence::{
    greedy_maximal_is, is_independent, is_maximal, min_degree_greedy_is, trivial_lower_bound,
};
use packing_forge::lattice_graph::{build_graph, squared_distance, LatticeGraph, Points};
use packing_forge::oracle::brute_edges;
use packing_forge::packing::{assemble, Packing};
use packing_forge::{Budget, PackingParams};
use proptest::prelude::*;

fn small_params() -> impl Strategy<Value = PackingParams> {
    (1usize..=3, 1u64..=3, 0u64..=5).prop_filter_map("instance too large", |(n, r, half)| {
        let p = PackingParams::new(n, r, 2 * half).ok()?;
        (p.vertex_count()? <= 1500).then_some(p)
    })
}

fn graph(p: &PackingParams) -> LatticeGraph {
    build_graph(p, &Budget::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn edges_follow_the_distance_rule(p in small_params(), picks in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 32)) {
        let g = graph(&p);
        let len = g.vertex_count();
        prop_assert_eq!(len as u128, p.vertex_count().unwrap());
        let limit = 4 * p.r * p.r;
        for (a, b) in picks {
            let (u, v) = (a.index(len) as u32, b.index(len) as u32);
            let d = squared_distance(g.coords(u), g.coords(v));
            prop_assert_eq!(g.is_adjacent(u, v), u != v && d < limit);
        }
    }

    #[test]
    fn adjacency_is_symmetric_sorted_and_loop_free(p in small_params()) {
        let g = graph(&p);
        let bound = d_n_upper(&p);
        for v in 0..g.vertex_count() as u32 {
            let nb = g.neighbors(v);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!nb.contains(&v));
            for &u in nb {
                prop_assert!(g.neighbors(u).binary_search(&v).is_ok());
            }
            prop_assert!((nb.len() + 1) as f64 <= bound);
        }
        let degree_sum: usize = (0..g.vertex_count() as u32).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum as u64, 2 * g.edge_count());
    }

    #[test]
    fn greedy_sets_are_maximal_and_meet_the_floor(p in small_params()) {
        let g = graph(&p);
        let floor = trivial_lower_bound(g.vertex_count() as u64, g.max_degree() as u64);
        for set in [greedy_maximal_is(&g), min_degree_greedy_is(&g)] {
            prop_assert!(is_independent(&g, set.vertices()));
            prop_assert!(is_maximal(&g, set.vertices()));
            prop_assert!(set.len() as f64 >= floor);
        }
    }

    #[test]
    fn assembled_packings_verify_and_round_trip(p in small_params()) {
        let g = graph(&p);
        let pk = assemble(&p, &min_degree_greedy_is(&g), &g).unwrap();
        let report = pk.verify();
        prop_assert!(report.passed);
        let mut buf = Vec::new();
        pk.export(&mut buf).unwrap();
        let back = Packing::import(buf.as_slice()).unwrap();
        prop_assert_eq!(back.centers(), pk.centers());
        prop_assert_eq!(back.density(), pk.density());
        prop_assert!(pk.density_value() > 0.0 && pk.density_value() <= 1.0);
    }

    #[test]
    fn arbitrary_point_sets_match_brute_force(
        n in 1usize..=3,
        r in 1u64..=3,
        rows in prop::collection::vec(prop::collection::vec(-12i64..=12, 3), 0..60),
    ) {
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|mut v| { v.truncate(n); v }).collect();
        let pts = Points::from_rows(n, &rows);
        let g = LatticeGraph::from_points(&pts, r, &Budget::default()).unwrap();
        prop_assert!(g.points().is_sorted_lex());
        prop_assert_eq!(brute_edges(&g).unwrap(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn intersection_volume_bound_chain(n in 2usize..=24, rho in 0.5f64..20.0, delta in 0.001f64..0.999) {
        let geo = CapGeometry::new(n, rho, delta).unwrap();
        let exact = intersection_volume_exact(&geo);
        let cyl = intersection_volume_cylinder_bound(&geo);
        let relaxed = intersection_volume_relaxed_bound(&geo);
        let slack = 1e-10 * relaxed;
        prop_assert!(exact > 0.0);
        prop_assert!(exact <= cyl + slack, "exact {} > cylinder {}", exact, cyl);
        prop_assert!(cyl <= relaxed + slack, "cylinder {} > relaxed {}", cyl, relaxed);
    }
}
