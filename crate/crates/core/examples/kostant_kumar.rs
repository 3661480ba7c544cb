//! The evaluation map of the tensor model for `A_2` with `W_K = <s_2>`.

use gkm_ktheory::algebra::LaurentPoly;
use gkm_ktheory::flag::RootSystem;
use gkm_ktheory::kostant::{kk_evaluate, kk_property_check, KkContext, TensorElement};

fn main() {
    let ctx = KkContext::new(&RootSystem::type_a(2).unwrap(), &[1]).unwrap();
    let z = |i| LaurentPoly::var(3, i);
    let t = TensorElement::pure(&ctx, &z(1) * &z(2), LaurentPoly::one(3)).unwrap();
    for (v, p) in kk_evaluate(&ctx, &t).unwrap().values() {
        println!("k(z2 z3 ⊗ 1)({v}) = {p}");
    }
    let report = kk_property_check(&ctx, 50, 0).unwrap();
    println!(
        "50 samples: multiplicative {}, classes {}, balanced {}, invariant {}",
        report.multiplicative, report.image_is_class, report.balanced, report.invariant_images
    );
}
