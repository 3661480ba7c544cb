//! Recovering a class on `Fl(C^3)` from its restriction to one fiber.

use gkm_ktheory::bundle::extend_invariant;
use gkm_ktheory::flag::{invariant_basis, RootType};

fn main() {
    let basis = invariant_basis(RootType::A, 2).unwrap();
    let bundle = basis.bundle();
    let c = basis.class(&[0, 1]).unwrap();
    let fiber = bundle.fiber_names(bundle.base_index("1").unwrap());
    let f = c.restrict(&fiber).unwrap();
    println!("restriction to the fiber over 1:");
    for (v, p) in f.values() {
        println!("  {v}: {p}");
    }
    let ext = extend_invariant(bundle, "1", &f).unwrap();
    println!("extension:");
    for (v, p) in ext.values() {
        println!("  {v}: {p}");
    }
    println!("equals C_[0,1]: {}", &ext == c);
}
