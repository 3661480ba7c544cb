mod common;

use gkm_ktheory::algebra::{elementary_symmetric, LaurentPoly};
use gkm_ktheory::flag::{weyl_action_on_class, RootSystem};
use gkm_ktheory::gkm::{EquivariantClass, Theory};
use gkm_ktheory::kostant::{intertwines, kk_evaluate, kk_property_check, kk_w_action, KkContext, TensorElement};
use gkm_ktheory::projective::build_complete_gkm;
use proptest::prelude::*;

use common::{is_k_class_by_oracle, laurent};

fn a1() -> KkContext {
    KkContext::new(&RootSystem::type_a(1).unwrap(), &[]).unwrap()
}

/// `A_2` with `W_K` generated by the reflection in `α_2`.
fn a2() -> KkContext {
    KkContext::new(&RootSystem::type_a(2).unwrap(), &[1]).unwrap()
}

fn z(rank: usize, i: usize) -> LaurentPoly {
    LaurentPoly::var(rank, i)
}

#[test]
fn one_tensor_g_is_constant() {
    let ctx = a2();
    let g = &(&z(3, 0) * &z(3, 2)) + &LaurentPoly::constant(3, -2);
    let t = TensorElement::pure(&ctx, LaurentPoly::one(3), g.clone()).unwrap();
    let c = kk_evaluate(&ctx, &t).unwrap();
    assert_eq!(c, EquivariantClass::constant(ctx.graph().graph(), Theory::K, &g).unwrap());
}

#[test]
fn first_variable_gives_nu() {
    let ctx = a1();
    let c = kk_evaluate(&ctx, &TensorElement::pure(&ctx, z(2, 0), LaurentPoly::one(2)).unwrap()).unwrap();
    let nu = build_complete_gkm(2).unwrap().nu;
    for (v, value) in c.values() {
        assert_eq!(value, nu.value(&v[..1]).unwrap(), "at {v}");
    }
}

#[test]
fn product_of_the_other_letters() {
    let ctx = a2();
    let t = TensorElement::pure(&ctx, &z(3, 1) * &z(3, 2), LaurentPoly::one(3)).unwrap();
    let c = kk_evaluate(&ctx, &t).unwrap();
    assert!(is_k_class_by_oracle(ctx.graph().graph(), &c));
    for (v, value) in c.values() {
        let j: usize = v.parse().unwrap();
        let expected = (0..3).filter(|&i| i != j - 1).fold(LaurentPoly::one(3), |acc, i| &acc * &z(3, i));
        assert_eq!(value, &expected, "at {v}");
    }
}

#[test]
fn left_factor_must_be_fixed_by_the_subgroup() {
    assert!(TensorElement::pure(&a2(), z(3, 1), LaurentPoly::one(3)).is_err());
    assert!(TensorElement::pure(&a2(), z(3, 0), LaurentPoly::one(3)).is_ok());
}

#[test]
fn evaluation_does_not_depend_on_the_representative() {
    let ctx = a2();
    let graph = ctx.graph();
    let f = &z(3, 1) + &z(3, 2);
    let c = kk_evaluate(&ctx, &TensorElement::pure(&ctx, f.clone(), z(3, 0)).unwrap()).unwrap();
    for w in 0..graph.group().order() {
        let value = &f.substitute(graph.group().element(w)) * &z(3, 0);
        assert_eq!(c.value(graph.vertex_of_element(w)).unwrap(), &value);
    }
}

#[test]
fn weyl_action_on_tensors() {
    let ctx = a2();
    let group = ctx.graph().group();
    let t = TensorElement::pure(&ctx, LaurentPoly::one(3), z(3, 0)).unwrap();
    let s1 = group.element(group.index_of(ctx.graph().root_system().simple_reflection(0)).unwrap());
    let moved = kk_w_action(&ctx, s1, &t).unwrap();
    assert_eq!(moved.summands(), &[(LaurentPoly::one(3), z(3, 1))]);
    let id = group.element(0);
    assert_eq!(kk_w_action(&ctx, id, &t).unwrap(), t);

    let h = elementary_symmetric(2, 3).unwrap().into_laurent();
    let sym = TensorElement::pure(&ctx, &z(3, 1) * &z(3, 2), h).unwrap();
    for w in group.elements() {
        let image = kk_evaluate(&ctx, &kk_w_action(&ctx, w, &sym).unwrap()).unwrap();
        assert_eq!(image, kk_evaluate(&ctx, &sym).unwrap());
        assert!(intertwines(&ctx, w, &t).unwrap());
        let direct = weyl_action_on_class(ctx.graph(), w, &kk_evaluate(&ctx, &t).unwrap()).unwrap();
        assert_eq!(direct, kk_evaluate(&ctx, &kk_w_action(&ctx, w, &t).unwrap()).unwrap());
    }
}

#[test]
fn zero_tensor_and_property_reports() {
    let ctx = a1();
    let zero = TensorElement::pure(&ctx, LaurentPoly::zero(2), z(2, 1)).unwrap();
    assert!(kk_evaluate(&ctx, &zero).unwrap().is_zero());
    for ctx in [a1(), a2()] {
        let report = kk_property_check(&ctx, 20, 4).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures);
        assert_eq!(report.samples, 20);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn evaluation_is_a_ring_morphism(f1 in laurent(3, 2), g1 in laurent(3, 2), f2 in laurent(3, 2), g2 in laurent(3, 2)) {
        let ctx = a2();
        let t = TensorElement::pure(&ctx, ctx.symmetrize_wk(&f1), g1).unwrap();
        let u = TensorElement::pure(&ctx, ctx.symmetrize_wk(&f2), g2).unwrap();
        let k = |x: &TensorElement| kk_evaluate(&ctx, x).unwrap();
        prop_assert_eq!(k(&t.mul(&u)), k(&t).mul(&k(&u)).unwrap());
        prop_assert_eq!(k(&t.add(&u)), k(&t).add(&k(&u)).unwrap());
        prop_assert!(is_k_class_by_oracle(ctx.graph().graph(), &k(&t.mul(&u))));
    }

    #[test]
    fn invariant_factors_balance(f in laurent(3, 2), g in laurent(3, 2), j in 1usize..=3) {
        let ctx = a2();
        let f = ctx.symmetrize_wk(&f);
        let h = elementary_symmetric(j, 3).unwrap().into_laurent();
        let left = TensorElement::pure(&ctx, &h * &f, g.clone()).unwrap();
        let right = TensorElement::pure(&ctx, f, &h * &g).unwrap();
        prop_assert_eq!(kk_evaluate(&ctx, &left).unwrap(), kk_evaluate(&ctx, &right).unwrap());
    }
}
