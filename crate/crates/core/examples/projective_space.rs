//! The K-ring of `CP^{n-1}`: dual bases, integration and the ν-expansion.

use gkm_ktheory::projective::{build_complete_gkm, dual_bases_fg, expand_in_nu, integrate, pairing};

fn main() {
    let n = 3;
    let model = build_complete_gkm(n).unwrap();
    println!("K_{n}: {} vertices, {} oriented edges", model.graph.num_vertices(), model.graph.num_edges());

    let (f, g) = dual_bases_fg(&model).unwrap();
    for (j, fj) in f.iter().enumerate() {
        let row: Vec<String> = (0..n).map(|k| pairing(&model, fj, &g[n - 1 - k]).unwrap().to_string()).collect();
        println!("<f_{}, g_(n-k+1)> for k = 1..{n}: {}", j + 1, row.join(", "));
    }

    for k in 0..=3 {
        let int = integrate(&model, &model.phi_power(k)).unwrap();
        println!("integral of phi^{k} = {}", int.value);
    }

    let h = model.nu_power(2).add(&model.nu).unwrap();
    let coeffs = expand_in_nu(&model, &h).unwrap();
    let shown: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    println!("nu^2 + nu in the basis 1, nu, nu^2: [{}]", shown.join(", "));
}
