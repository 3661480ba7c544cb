mod common;

use std::collections::BTreeMap;

use gkm_ktheory::algebra::{LatticeMap, LaurentPoly, Poly};
use gkm_ktheory::bundle::GkmBundle;
use gkm_ktheory::flag::{build_flag_bundle, build_gp_graph, RootSystem};
use gkm_ktheory::gkm::{EquivariantClass, GkmGraph, GraphIso};
use gkm_ktheory::json::{from_str, tensor_from_json, to_string, FromJson, ToJson};
use gkm_ktheory::kostant::{KkContext, TensorElement};
use gkm_ktheory::projective::build_complete_gkm;
use proptest::prelude::*;

use common::laurent;

fn roundtrip<T: ToJson + FromJson + PartialEq + std::fmt::Debug>(x: &T) {
    let text = to_string(x);
    let back: T = from_str(&text).unwrap();
    assert_eq!(&back, x);
    assert_eq!(to_string(&back), text);
}

#[test]
fn graphs_and_bundles_roundtrip() {
    for graph in [
        build_complete_gkm(3).unwrap().graph,
        build_gp_graph(&RootSystem::type_c(2).unwrap(), &[]).unwrap().into_graph(),
        build_gp_graph(&RootSystem::type_a(3).unwrap(), &[0, 2]).unwrap().into_graph(),
    ] {
        let text = to_string(&graph);
        let back: GkmGraph = from_str(&text).unwrap();
        assert_eq!(to_string(&back), text);
        assert_eq!(back.vertices(), graph.vertices());
        assert_eq!(back.num_edges(), graph.num_edges());
    }
    let bundle = build_flag_bundle(&RootSystem::type_a(2).unwrap(), &[1]).unwrap().bundle;
    let text = to_string(&bundle);
    let back: GkmBundle = from_str(&text).unwrap();
    assert_eq!(to_string(&back), text);
    assert_eq!(back.projection(), bundle.projection());
}

#[test]
fn isomorphisms_roundtrip() {
    let k3 = build_complete_gkm(3).unwrap().graph;
    roundtrip(&GraphIso::identity(&k3));
    let swap: BTreeMap<String, String> = [("1", "2"), ("2", "1"), ("3", "3")].map(|(a, b)| (a.into(), b.into())).into();
    let m = LatticeMap::from_rows(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
    roundtrip(&GraphIso::new(swap, m));
}

#[test]
fn tensors_roundtrip() {
    let ctx = KkContext::new(&RootSystem::type_a(2).unwrap(), &[1]).unwrap();
    let z = |i| LaurentPoly::var(3, i);
    let t = TensorElement::new(&ctx, vec![(&z(1) * &z(2), z(0)), (LaurentPoly::one(3), -&z(2))]).unwrap();
    let value = t.to_json();
    assert_eq!(tensor_from_json(&ctx, &value).unwrap(), t);
    let bad = serde_json::json!({"summands": [{"f": {"rank": 3, "terms": [{"exp": [0, 1, 0], "coeff": "1"}]}, "g": {"rank": 3, "terms": []}}]});
    assert!(tensor_from_json(&ctx, &bad).is_err());
}

#[test]
fn output_is_deterministic() {
    let model = build_complete_gkm(4).unwrap();
    let first = to_string(&model.phi_power(3));
    for _ in 0..3 {
        assert_eq!(to_string(&build_complete_gkm(4).unwrap().phi_power(3)), first);
    }
    assert!(first.ends_with('\n'));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn laurent_roundtrip(p in laurent(3, 6)) {
        let text = to_string(&p);
        prop_assert_eq!(&from_str::<LaurentPoly>(&text).unwrap(), &p);
        prop_assert_eq!(to_string(&from_str::<LaurentPoly>(&text).unwrap()), text);
    }

    #[test]
    fn poly_roundtrip(p in laurent(2, 6)) {
        let shift: Vec<i64> = p.min_exponent().iter().map(|e| -e.min(&0)).collect();
        let q = Poly::new(p.shift(&shift)).unwrap();
        let text = to_string(&q);
        prop_assert_eq!(from_str::<Poly>(&text).unwrap(), q);
    }

    #[test]
    fn class_roundtrip(coeffs in proptest::collection::vec(laurent(3, 3), 3)) {
        let c = build_complete_gkm(3).unwrap().combine_nu(&coeffs).unwrap();
        let text = to_string(&c);
        let back: EquivariantClass = from_str(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(to_string(&back), text);
    }
}
