mod common;

use oddsub_core::generators::{generate, Family, FamilySpec};
use oddsub_core::graph::{parse_edge_list, write_edge_list};
use oddsub_core::VertexSet;
use proptest::prelude::*;

use common::{odd_by_count, s_set_by_definition};

proptest! {
    #[test]
    fn s_set_matches_its_definition(n in 2usize..40, p2 in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = generate(&FamilySpec::new(Family::RandomSp, n, seed).with_p2(p2)).unwrap();
        for u in g.vertices() {
            let s = g.s_set(u).unwrap();
            prop_assert_eq!(&s, &s_set_by_definition(&g, u));
            prop_assert_eq!(g.d_big(u).unwrap(), s.len());
            let n1 = g.pendant_neighbors(u).unwrap();
            let n2 = g.deg2_neighbors(u).unwrap();
            prop_assert!(n1.is_disjoint(&n2));
        }
    }

    #[test]
    fn odd_sets_match_a_recount(n in 2usize..30, p in 0.0f64..=1.0, seed in any::<u64>(), mask in any::<u32>()) {
        let g = generate(&FamilySpec::new(Family::RandomGraph, n, seed).with_p2(p)).unwrap();
        let s: VertexSet = g.vertices().filter(|&v| mask >> (v % 32) & 1 == 1).collect();
        prop_assert_eq!(g.is_odd_set(&s).unwrap(), odd_by_count(&g, &s));
    }

    #[test]
    fn edge_lists_round_trip(n in 2usize..50, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = generate(&FamilySpec::new(Family::RandomGraph, n, seed).with_p2(p)).unwrap();
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }
}
