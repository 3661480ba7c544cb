//! Transport and holonomy of `Fl(C^3) -> CP^2` and `Fl(C^4) -> CP^3`.

use gkm_ktheory::bundle::validate_bundle;
use gkm_ktheory::flag::{build_flag_bundle, RootSystem};

fn main() {
    for n in 2..=3 {
        let sigma: Vec<usize> = (1..n).collect();
        let fb = build_flag_bundle(&RootSystem::type_a(n).unwrap(), &sigma).unwrap();
        let b = &fb.bundle;
        println!("Fl(C^{}) -> CP^{n}: valid {}", n + 1, validate_bundle(b).is_valid());
        let t = b.edge_transport("1", "2").unwrap();
        println!("  transport 1 -> 2: {:?}", t.vertex_map);
        let hol = b.holonomy_group("1").unwrap();
        println!("  holonomy at 1 has order {}", hol.order());
        for perm in hol.permutations() {
            println!("    {}", perm.join(" "));
        }
    }
}
