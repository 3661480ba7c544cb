use gkm_ktheory::algebra::{determinant, LaurentPoly, Weight};
use gkm_ktheory::bundle::validate_bundle;
use gkm_ktheory::flag::{
    build_flag_bundle, build_gp_graph, build_weyl_group, c_class, invariant_basis, multi_indices, reflection,
    signed_one_line, weyl_action_on_class, RootSystem, RootType,
};
use gkm_ktheory::gkm::{is_equivariant_class, validate_graph};
use gkm_ktheory::projective::build_complete_gkm;
use gkm_ktheory::sampling::rng;
use proptest::prelude::*;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn weyl_group_orders_and_longest_words() {
    for n in 1..=4 {
        let a = RootSystem::type_a(n).unwrap();
        let w = build_weyl_group(&a, &(0..n).collect::<Vec<_>>()).unwrap();
        assert_eq!(w.order(), factorial(n + 1));
        assert_eq!((0..w.order()).map(|i| w.length(i)).max(), Some(a.positive_roots().len()));
        assert_eq!(a.positive_roots().len(), n * (n + 1) / 2);
    }
    for n in 1..=3 {
        let c = RootSystem::type_c(n).unwrap();
        let w = build_weyl_group(&c, &(0..n).collect::<Vec<_>>()).unwrap();
        assert_eq!(w.order(), (1 << n) * factorial(n));
        assert_eq!(c.positive_roots().len(), n * n);
    }
}

#[test]
fn weyl_words_multiply_out_to_their_elements() {
    let roots = RootSystem::type_c(3).unwrap();
    let w = build_weyl_group(&roots, &[0, 1, 2]).unwrap();
    for i in 0..w.order() {
        let product = w.word(i).iter().fold(gkm_ktheory::algebra::LatticeMap::identity(3), |acc, &s| {
            acc.compose(roots.simple_reflection(s))
        });
        assert_eq!(&product, w.element(i));
        let inv = w.inverse(i);
        assert_eq!(w.element(w.multiply(i, inv)), &gkm_ktheory::algebra::LatticeMap::identity(3));
    }
}

#[test]
fn reflections_are_involutions() {
    let roots = RootSystem::type_c(3).unwrap();
    for beta in roots.positive_roots() {
        let s = reflection(beta).unwrap();
        assert_eq!(s.apply(beta), -beta);
        assert_eq!(s.compose(&s), gkm_ktheory::algebra::LatticeMap::identity(3));
        assert!(signed_one_line(&s).is_some());
    }
}

#[test]
fn coset_graphs_validate() {
    let mut cases = Vec::new();
    for n in 1..=3 {
        for sigma in [vec![], (1..n).collect::<Vec<_>>(), (0..n - 1).collect()] {
            cases.push((RootSystem::type_a(n).unwrap(), sigma.clone()));
            cases.push((RootSystem::type_c(n).unwrap(), sigma));
        }
    }
    cases.push((RootSystem::type_a(4).unwrap(), vec![]));
    cases.push((RootSystem::type_a(4).unwrap(), vec![0, 2]));
    cases.push((RootSystem::type_c(4).unwrap(), vec![1, 2, 3]));
    for (roots, sigma) in cases {
        let g = build_gp_graph(&roots, &sigma).unwrap();
        let whole = build_weyl_group(&roots, &(0..roots.rank()).collect::<Vec<_>>()).unwrap();
        assert_eq!(g.graph().num_vertices() * g.subgroup().order(), whole.order());
        let report = validate_graph(g.graph());
        assert!(report.is_valid(), "{} {sigma:?}: {:?}", roots.kind(), report.findings);
    }
}

#[test]
fn flag_bundles_over_partial_flags_validate() {
    for (roots, sigma) in [(RootSystem::type_a(3).unwrap(), vec![0]), (RootSystem::type_c(3).unwrap(), vec![2])] {
        let fb = build_flag_bundle(&roots, &sigma).unwrap();
        let report = validate_bundle(&fb.bundle);
        assert!(report.is_valid(), "{:?}", report.findings);
    }
}

/// `C_n / W(Σ)` for `Σ = {α_2, …, α_n}` is the complete graph on the signed
/// letters with `α(a, b) = sgn(a) e_|a| - sgn(b) e_|b|`.
#[test]
fn type_c_projective_space_is_complete() {
    for n in 1..=3 {
        let g = build_gp_graph(&RootSystem::type_c(n).unwrap(), &(1..n).collect::<Vec<_>>()).unwrap();
        let graph = g.graph();
        assert_eq!(graph.num_vertices(), 2 * n);
        assert_eq!(graph.valence(), Some(2 * n - 1));
        let signed = |v: &str| -> Weight {
            let a: i64 = v.parse().unwrap();
            Weight::unit(n, a.unsigned_abs() as usize - 1).scale(a.signum())
        };
        for e in graph.edges() {
            let (a, b) = (graph.vertex_name(e.src), graph.vertex_name(e.dst));
            assert_eq!(e.alpha, &signed(a) - &signed(b), "({a}, {b})");
        }
    }
}

#[test]
fn first_basis_classes() {
    let basis = invariant_basis(RootType::A, 2).unwrap();
    assert_eq!(basis.indices(), multi_indices(RootType::A, 2).as_slice());
    let model = build_complete_gkm(3).unwrap();
    assert_eq!(basis.class(&[1, 0]).unwrap(), &basis.bundle().pullback(&model.nu).unwrap());
    let c01 = basis.class(&[0, 1]).unwrap();
    assert_eq!(c01.value("123").unwrap(), &LaurentPoly::var(3, 1));
    assert_eq!(c01.value("312").unwrap(), &LaurentPoly::var(3, 0));
    assert_eq!(basis.class(&[0, 0]).unwrap().value("231").unwrap(), &LaurentPoly::one(3));
}

#[test]
fn restriction_matrix_is_nonsingular() {
    let basis = invariant_basis(RootType::A, 2).unwrap();
    let vertices = basis.graph().graph().vertices();
    let m: Vec<Vec<LaurentPoly>> =
        vertices.iter().map(|v| basis.classes().iter().map(|c| c.value(v).unwrap().clone()).collect()).collect();
    assert_eq!(m.len(), 6);
    assert!(!determinant(&m).unwrap().is_zero());
}

#[test]
fn basis_classes_are_invariant_under_the_whole_group() {
    for (kind, n) in [(RootType::A, 2), (RootType::A, 3), (RootType::C, 2)] {
        let basis = invariant_basis(kind, n).unwrap();
        let graph = basis.graph();
        for c in basis.classes() {
            assert!(is_equivariant_class(graph.graph(), c).unwrap().is_class);
            for w in graph.group().elements() {
                assert_eq!(&weyl_action_on_class(graph, w, c).unwrap(), c);
            }
        }
    }
}

#[test]
fn type_c_basis_certifies() {
    let basis = invariant_basis(RootType::C, 2).unwrap();
    assert_eq!(basis.len(), 8);
    basis.certify(5, &mut rng(3)).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn monomial_classes_are_classes(exp in proptest::collection::vec(-2i64..=2, 3)) {
        let g = build_gp_graph(&RootSystem::type_a(2).unwrap(), &[]).unwrap();
        let c = c_class(&g, &exp).unwrap();
        prop_assert!(is_equivariant_class(g.graph(), &c).unwrap().is_class);
    }

    #[test]
    fn coordinates_roundtrip(seed in 0u64..1000) {
        let basis = invariant_basis(RootType::A, 2).unwrap();
        let c = basis.random_class(&mut rng(seed)).unwrap();
        let coords = basis.coordinates(&c).unwrap();
        prop_assert_eq!(basis.combine(&coords).unwrap(), c);
    }
}
