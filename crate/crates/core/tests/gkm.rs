mod common;

use std::collections::BTreeMap;

use gkm_ktheory::algebra::{LatticeMap, LaurentPoly, Weight};
use gkm_ktheory::flag::{build_gp_graph, RootSystem};
use gkm_ktheory::gkm::{apply_graph_iso, is_equivariant_class, validate_graph, EquivariantClass, GkmGraph, GraphIso, Theory};
use gkm_ktheory::projective::build_complete_gkm;
use proptest::prelude::*;

use common::{is_k_class_by_oracle, laurent};

fn k2() -> GkmGraph {
    let a = Weight::new(vec![1, -1]);
    GkmGraph::new(2, vec!["1".into(), "2".into()], vec![("1".into(), "2".into(), a.clone()), ("2".into(), "1".into(), a.scale(-1))])
        .unwrap()
}

#[test]
fn builders_produce_valid_graphs() {
    for n in 2..=5 {
        let report = validate_graph(&build_complete_gkm(n).unwrap().graph);
        assert!(report.is_valid(), "K_{n}: {:?}", report.findings);
    }
    let cases: Vec<(RootSystem, Vec<usize>)> = vec![
        (RootSystem::type_a(1).unwrap(), vec![]),
        (RootSystem::type_a(2).unwrap(), vec![]),
        (RootSystem::type_a(2).unwrap(), vec![0]),
        (RootSystem::type_a(3).unwrap(), vec![]),
        (RootSystem::type_a(3).unwrap(), vec![1]),
        (RootSystem::type_a(3).unwrap(), vec![0, 2]),
        (RootSystem::type_c(2).unwrap(), vec![]),
        (RootSystem::type_c(2).unwrap(), vec![0]),
        (RootSystem::type_c(3).unwrap(), vec![1, 2]),
    ];
    for (roots, sigma) in cases {
        let g = build_gp_graph(&roots, &sigma).unwrap();
        let report = validate_graph(g.graph());
        assert!(report.is_valid(), "{} {:?}: {:?}", roots.kind(), sigma, report.findings);
    }
}

#[test]
fn m_table_reproduces_the_connection_axiom() {
    for graph in [build_complete_gkm(4).unwrap().graph, build_gp_graph(&RootSystem::type_c(2).unwrap(), &[]).unwrap().into_graph()] {
        let report = validate_graph(&graph);
        assert!(!report.m_table.is_empty());
        let alpha = |(p, q): &(String, String)| graph.alpha(graph.edge_by_names(p, q).unwrap()).clone();
        for entry in &report.m_table {
            let lhs: Vec<i64> = alpha(&entry.to).coords().iter().zip(alpha(&entry.from).coords()).map(|(a, b)| a - b).collect();
            assert_eq!(Weight::new(lhs), alpha(&entry.edge).scale(entry.m), "{entry:?}");
        }
    }
}

#[test]
fn nu_is_a_class_and_a_step_is_not() {
    let model = build_complete_gkm(3).unwrap();
    assert!(is_equivariant_class(&model.graph, &model.nu).unwrap().is_class);
    let g = k2();
    let step = EquivariantClass::k(2, [("1".to_string(), LaurentPoly::one(2)), ("2".to_string(), LaurentPoly::var(2, 0))]).unwrap();
    let report = is_equivariant_class(&g, &step).unwrap();
    assert!(!report.is_class);
    assert_eq!(report.failing_edge, Some(("1".into(), "2".into())));
    assert!(!is_k_class_by_oracle(&g, &step));
}

#[test]
fn swap_fixes_nu_on_k2() {
    let model = build_complete_gkm(2).unwrap();
    let swap: BTreeMap<String, String> = [("1", "2"), ("2", "1")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let iso = GraphIso::new(swap, LatticeMap::permutation(&[1, 0]));
    assert_eq!(apply_graph_iso(&iso, &model.graph, &model.graph, &model.nu).unwrap(), model.nu);
}

fn k3_class() -> impl Strategy<Value = EquivariantClass> {
    proptest::collection::vec(laurent(3, 3), 3).prop_map(|c| build_complete_gkm(3).unwrap().combine_nu(&c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classes_form_a_ring(f in k3_class(), g in k3_class()) {
        let graph = build_complete_gkm(3).unwrap().graph;
        for h in [f.add(&g).unwrap(), f.mul(&g).unwrap(), f.sub(&g).unwrap()] {
            prop_assert!(is_equivariant_class(&graph, &h).unwrap().is_class);
            prop_assert!(is_k_class_by_oracle(&graph, &h));
        }
    }

    #[test]
    fn isomorphisms_pull_back_classes(f in k3_class(), perm in proptest::sample::select(vec![[0usize, 1, 2], [1, 0, 2], [1, 2, 0], [2, 1, 0]])) {
        let complete = build_complete_gkm(3).unwrap().graph;
        let coset = build_gp_graph(&RootSystem::type_a(2).unwrap(), &[1]).unwrap().into_graph();
        let vertex_map: BTreeMap<String, String> = (0..3).map(|i| ((i + 1).to_string(), (perm[i] + 1).to_string())).collect();
        let iso = GraphIso::new(vertex_map, LatticeMap::permutation(&perm));
        let pulled = apply_graph_iso(&iso, &coset, &complete, &f).unwrap();
        prop_assert_eq!(pulled.theory(), Theory::K);
        prop_assert!(is_equivariant_class(&coset, &pulled).unwrap().is_class);
    }
}
