mod common;

use oddsub_core::decomposition::{
    lwz_find, recognize_tw2, to_nice, validate_decomposition, validate_nice, Recognition,
};
use oddsub_core::generators::{generate, hk, Family, FamilySpec};
use oddsub_core::Graph;
use proptest::prelude::*;

use common::{all_graphs, has_k4_minor, treewidth_by_elimination};

fn check_recognition(g: &Graph) {
    match recognize_tw2(g) {
        Recognition::Decomposition(td) => {
            assert!(!has_k4_minor(g), "{:?}", g.edges().collect::<Vec<_>>());
            assert!(td.width() <= 2);
            validate_decomposition(g, &td).unwrap();
            validate_nice(g, &to_nice(&td).unwrap()).unwrap();
        }
        Recognition::StuckCore(core) => {
            assert!(has_k4_minor(g), "{:?}", g.edges().collect::<Vec<_>>());
            assert!(core.vertices().all(|v| core.neighbor_set(v).unwrap().len() >= 3));
        }
    }
}

#[test]
fn recognition_matches_the_minor_oracle_up_to_six_vertices() {
    for n in 1..=6 {
        all_graphs(n).for_each(|g| check_recognition(&g));
    }
}

#[test]
fn oracle_sanity() {
    let k4 = Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert!(has_k4_minor(&k4));
    let wheel: Vec<_> = (1..=5).flat_map(|i| [(0, i), (i, i % 5 + 1)]).collect();
    assert!(has_k4_minor(&Graph::from_edges(wheel).unwrap()));
    let c6 = generate(&FamilySpec::new(Family::Cycle, 6, 0)).unwrap();
    assert!(!has_k4_minor(&c6));
}

#[test]
fn extremal_assets_have_treewidth_k() {
    for k in 1..=4 {
        let g = hk(k).unwrap();
        assert_eq!(treewidth_by_elimination(&g), k, "H{k}");
    }
    assert_eq!(recognize_tw2(&hk(1).unwrap()).decomposition().unwrap().width(), 1);
    assert_eq!(recognize_tw2(&hk(2).unwrap()).decomposition().unwrap().width(), 2);
    assert!(!recognize_tw2(&hk(3).unwrap()).is_decomposition());
}

#[test]
fn random_sp_decompositions_validate() {
    for seed in 0..50 {
        let g = generate(&FamilySpec::new(Family::RandomSp, 300, seed)).unwrap();
        let td = recognize_tw2(&g).decomposition().unwrap();
        validate_decomposition(&g, &td).unwrap();
        let ntd = to_nice(&td).unwrap();
        validate_nice(&g, &ntd).unwrap();
        assert!(ntd.width() <= 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn recognition_matches_the_minor_oracle_on_random_graphs(n in 2usize..=9, p in 0.1f64..0.6, seed in any::<u64>()) {
        let g = generate(&FamilySpec::new(Family::RandomGraph, n, seed).with_p2(p)).unwrap();
        check_recognition(&g);
    }

    #[test]
    fn lwz_witness_holds_on_series_parallel_graphs(n in 2usize..80, p2 in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = generate(&FamilySpec::new(Family::RandomSp, n, seed).with_p2(p2)).unwrap();
        let w = lwz_find(&g).unwrap();
        prop_assert!(w.holds_in(&g));
    }
}
