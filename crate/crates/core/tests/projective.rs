mod common;

use gkm_ktheory::algebra::{elementary_symmetric, solve_system_over_fractions, LaurentPoly, Poly, RationalFunction};
use gkm_ktheory::gkm::{EquivariantClass, Theory};
use gkm_ktheory::projective::{
    build_complete_gkm, coordinates_in_fg, dual_bases_fg, expand_in_nu, integrate, is_left_invariant, is_sn_invariant,
    lift_to_k,
};
use proptest::prelude::*;

use common::laurent;

#[test]
fn complete_graph_shape() {
    let k2 = build_complete_gkm(2).unwrap().graph;
    assert_eq!(k2.num_vertices(), 2);
    assert_eq!(k2.alpha(k2.edge_by_names("1", "2").unwrap()).coords(), &[1, -1]);
    let k4 = build_complete_gkm(4).unwrap().graph;
    assert_eq!((k4.num_vertices(), k4.num_edges()), (4, 12));
}

#[test]
fn integrals_of_powers_of_phi() {
    let model = build_complete_gkm(3).unwrap();
    let int = |k| integrate(&model, &model.phi_power(k)).unwrap().value;
    assert_eq!(int(2), RationalFunction::one(3));
    assert!(int(0).is_zero() && int(1).is_zero());
    let s1 = elementary_symmetric(1, 3).unwrap();
    assert_eq!(int(3), RationalFunction::from_poly(s1.into_laurent()));
}

#[test]
fn phi_satisfies_its_characteristic_relation() {
    for n in 2..=5 {
        let model = build_complete_gkm(n).unwrap();
        let mut acc = model.phi_power(0).scale(&LaurentPoly::zero(n)).unwrap();
        for j in 0..=n {
            let term = model.phi_power((n - j) as u32).scale(elementary_symmetric(j, n).unwrap().as_laurent()).unwrap();
            acc = if j % 2 == 0 { acc.add(&term).unwrap() } else { acc.sub(&term).unwrap() };
        }
        assert!(acc.is_zero(), "n = {n}");
    }
}

#[test]
fn basis_classes_are_symmetric() {
    for n in 2..=4 {
        let model = build_complete_gkm(n).unwrap();
        let (f, g) = dual_bases_fg(&model).unwrap();
        let nus = (0..n as u32).map(|k| model.nu_power(k));
        for h in f.iter().chain(&g).cloned().chain(nus) {
            assert!(is_sn_invariant(&model, &h).unwrap());
            assert!(is_left_invariant(&model, &h).unwrap());
        }
    }
}

#[test]
fn coordinates_of_phi_cubed_match_a_direct_solve() {
    let n = 3;
    let model = build_complete_gkm(n).unwrap();
    let h = model.phi_power(3);
    let (a, _) = coordinates_in_fg(&model, &h).unwrap();
    let (f, _) = dual_bases_fg(&model).unwrap();
    let vertices = model.graph.vertices();
    let m: Vec<Vec<LaurentPoly>> =
        vertices.iter().map(|v| f.iter().map(|fk| fk.value(v).unwrap().clone()).collect()).collect();
    let b: Vec<LaurentPoly> = vertices.iter().map(|v| h.value(v).unwrap().clone()).collect();
    let x = solve_system_over_fractions(&m, &b).unwrap().unwrap();
    let expected: Vec<Poly> = x.iter().map(|r| r.to_poly().unwrap()).collect();
    assert_eq!(a, expected);
}

#[test]
fn lift_of_phi_is_nu() {
    let model = build_complete_gkm(3).unwrap();
    assert_eq!(lift_to_k(&model, &model.phi).unwrap(), model.nu);
}

#[test]
fn expansion_of_inverse_characters_on_k2() {
    let model = build_complete_gkm(2).unwrap();
    let z = |i| LaurentPoly::var(2, i);
    let inv = LaurentPoly::monomial(vec![-1, -1], 1);
    let g = EquivariantClass::k(2, [("1".to_string(), LaurentPoly::monomial(vec![-1, 0], 1)), ("2".to_string(), LaurentPoly::monomial(vec![0, -1], 1))]).unwrap();
    let c = expand_in_nu(&model, &g).unwrap();
    assert_eq!(c, vec![&(&z(0) + &z(1)) * &inv, -&inv]);
    // back-substitution at each vertex: c0 + c1 z_j = z_j^{-1}
    for j in 0..2 {
        assert_eq!(&c[0] + &(&c[1] * &z(j)), LaurentPoly::monomial((0..2).map(|i| if i == j { -1 } else { 0 }).collect(), 1));
    }
}

#[test]
fn expansion_of_constants_and_powers() {
    let model = build_complete_gkm(3).unwrap();
    let p = &LaurentPoly::var(3, 0) + &LaurentPoly::constant(3, 2);
    let constant = EquivariantClass::constant(&model.graph, Theory::K, &p).unwrap();
    assert_eq!(expand_in_nu(&model, &constant).unwrap(), vec![p, LaurentPoly::zero(3), LaurentPoly::zero(3)]);
    assert_eq!(expand_in_nu(&model, &model.nu_power(2)).unwrap(), vec![LaurentPoly::zero(3), LaurentPoly::zero(3), LaurentPoly::one(3)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn expansion_inverts_combination((n, coeffs) in (2usize..=4).prop_flat_map(|n| (Just(n), proptest::collection::vec(laurent(n, 3), n)))) {
        let model = build_complete_gkm(n).unwrap();
        let g = model.combine_nu(&coeffs).unwrap();
        let back = expand_in_nu(&model, &g).unwrap();
        prop_assert_eq!(&back, &coeffs);
        prop_assert_eq!(model.combine_nu(&back).unwrap(), g);
    }

    #[test]
    fn integral_is_polynomial_exactly_for_classes(
        (n, coeffs, bump, at) in (2usize..=3).prop_flat_map(|n| (Just(n), proptest::collection::vec(laurent(n, 2), n), laurent(n, 2), 1..=n)),
    ) {
        let model = build_complete_gkm(n).unwrap();
        let to_poly = |p: &LaurentPoly| p.shift(&p.min_exponent().iter().map(|x| -x.min(&0)).collect::<Vec<_>>());
        let mut f = model.phi_power(0).scale(&LaurentPoly::zero(n)).unwrap();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                f = f.add(&model.phi_power(k as u32).scale(&to_poly(c)).unwrap()).unwrap();
            }
        }
        let bump = if bump.is_zero() { bump } else { to_poly(&bump) };
        let at = at.to_string();
        let f = f.map_values(|v, p| if v == at { p + &bump } else { p.clone() }).unwrap();
        let in_s = integrate(&model, &f).unwrap().is_polynomial;
        let is_class = gkm_ktheory::gkm::is_equivariant_class(&model.graph, &f).unwrap().is_class;
        prop_assert_eq!(in_s, is_class);
    }
}
