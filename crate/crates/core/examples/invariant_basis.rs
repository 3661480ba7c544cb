//! The invariant basis `{C_I}` of the K-ring of `Fl(C^3)` and coordinates in it.

use gkm_ktheory::flag::{invariant_basis, RootType};
use gkm_ktheory::sampling::rng;

fn main() {
    let basis = invariant_basis(RootType::A, 2).unwrap();
    for (index, c) in basis.indices().iter().zip(basis.classes()) {
        let values: Vec<String> = c.values().iter().map(|(v, p)| format!("{v}:{p}")).collect();
        println!("C_{index:?} = {}", values.join("  "));
    }
    let c = basis.random_class(&mut rng(1)).unwrap();
    let coords = basis.coordinates(&c).unwrap();
    for (index, a) in basis.indices().iter().zip(&coords) {
        println!("coefficient of C_{index:?}: {a}");
    }
    println!("recombines: {}", basis.combine(&coords).unwrap() == c);

    let c2 = invariant_basis(RootType::C, 2).unwrap();
    println!("type C_2: {} classes on {} vertices", c2.len(), c2.graph().graph().num_vertices());
}
