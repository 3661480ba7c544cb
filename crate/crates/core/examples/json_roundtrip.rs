//! Canonical JSON for graphs and classes.

use gkm_ktheory::gkm::{EquivariantClass, GkmGraph};
use gkm_ktheory::json::{from_str, to_string};
use gkm_ktheory::projective::build_complete_gkm;

fn main() {
    let model = build_complete_gkm(2).unwrap();
    let text = to_string(&model.graph);
    print!("{text}");
    let back: GkmGraph = from_str(&text).unwrap();
    println!("graph re-emits identically: {}", to_string(&back) == text);

    let class = to_string(&model.nu_power(2));
    print!("{class}");
    let parsed: EquivariantClass = from_str(&class).unwrap();
    println!("class roundtrips: {}", parsed == model.nu_power(2));
}
