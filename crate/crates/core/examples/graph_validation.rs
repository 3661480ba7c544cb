//! Validating a hand-written GKM graph and inferring its connection.

use gkm_ktheory::algebra::Weight;
use gkm_ktheory::gkm::{validate_graph, GkmGraph};

fn main() {
    let w = |v: [i64; 3]| Weight::new(v.to_vec());
    let mut edges = Vec::new();
    for (a, b, alpha) in [("1", "2", w([1, -1, 0])), ("2", "3", w([0, 1, -1])), ("1", "3", w([1, 0, -1]))] {
        edges.push((a.to_string(), b.to_string(), alpha.clone()));
        edges.push((b.to_string(), a.to_string(), -&alpha));
    }
    let names = ["1", "2", "3"].map(String::from).to_vec();
    let graph = GkmGraph::new(3, names.clone(), edges.clone()).unwrap();
    let report = validate_graph(&graph);
    println!("triangle valid: {}, connection inferred: {}", report.is_valid(), report.connection_inferred);

    // two parallel labels at a vertex break 2-independence
    edges[2].2 = w([2, -2, 0]);
    edges[3].2 = w([-2, 2, 0]);
    let broken = GkmGraph::new(3, names, edges).unwrap();
    for finding in validate_graph(&broken).findings {
        println!("{finding:?}");
    }
}
