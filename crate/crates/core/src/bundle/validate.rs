use crate::algebra::Weight;
use crate::gkm::{validate_graph, Check, Finding, GraphIso, ValidationReport};

use super::GkmBundle;

/// The `m`-table of one base edge `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMTable {
    pub edge: (String, String),
    pub entries: Vec<(Weight, i64)>,
}

/// Result of [`validate_bundle`]. The bundle is valid iff `findings` is empty.
#[derive(Clone, Debug, Default)]
pub struct BundleReport {
    pub findings: Vec<Finding>,
    pub notes: Vec<Finding>,
    pub total: ValidationReport,
    pub base: ValidationReport,
    pub m_tables: Vec<EdgeMTable>,
    /// Whether one table `x ↦ m(x)` serves every base edge out of each base
    /// vertex.
    pub edge_independent_m: bool,
}

impl BundleReport {
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn m_table(&self, p: &str, q: &str) -> Option<&[(Weight, i64)]> {
        self.m_tables.iter().find(|t| t.edge.0 == p && t.edge.1 == q).map(|t| t.entries.as_slice())
    }
}

/// Checks the graphs, the projection and the five bundle conditions, in that
/// order, and records the `m`-table of every base edge whose transport
/// exists.
pub fn validate_bundle(bundle: &GkmBundle) -> BundleReport {
    let total = &bundle.total;
    let base = &bundle.base;
    let mut report = BundleReport {
        total: validate_graph(total),
        base: validate_graph(base),
        edge_independent_m: true,
        ..Default::default()
    };
    let mut findings = Vec::new();
    let mut push = |check: Check, location: Vec<String>, message: String| {
        findings.push(Finding::new(check, location, message));
    };
    for f in &report.total.findings {
        push(Check::TotalGraph, f.location.clone(), format!("{}: {}", f.check, f.message));
    }
    for f in &report.base.findings {
        push(Check::BaseGraph, f.location.clone(), format!("{}: {}", f.check, f.message));
    }
    let vname = |v: usize| total.vertex_name(v).to_string();
    let bname = |v: usize| base.vertex_name(v).to_string();

    for (p, fiber) in bundle.fibers.iter().enumerate() {
        if fiber.is_empty() {
            push(Check::Projection, vec![bname(p)], "projection is not surjective".into());
        }
    }
    for (e, edge) in total.edges().iter().enumerate() {
        let (a, b) = (bundle.proj[edge.src], bundle.proj[edge.dst]);
        if a != b && base.edge_between(a, b).is_none() {
            push(
                Check::Projection,
                vec![vname(edge.src), vname(edge.dst)],
                format!("{} maps to ({}, {}), which is not a base edge", total.edge_label(e), bname(a), bname(b)),
            );
        }
    }

    // (1) horizontal edges at v biject onto the base star with matching labels
    for v in 0..total.num_vertices() {
        let p = bundle.proj[v];
        let horizontal = total.out_edges(v).iter().filter(|&&e| !bundle.is_vertical(e)).count();
        if horizontal != base.out_edges(p).len() {
            push(
                Check::HorizontalLift,
                vec![vname(v)],
                format!("{horizontal} horizontal edges over a base vertex of valence {}", base.out_edges(p).len()),
            );
        }
        for &be in base.out_edges(p) {
            match bundle.lift(v, base.edge(be).dst) {
                None => push(
                    Check::HorizontalLift,
                    vec![vname(v), bname(base.edge(be).dst)],
                    format!("no unique lift of {}", base.edge_label(be)),
                ),
                Some(e) if total.alpha(e) != base.alpha(be) => push(
                    Check::HorizontalLift,
                    vec![vname(v), vname(total.edge(e).dst)],
                    format!("α = {} but α_B = {}", total.alpha(e), base.alpha(be)),
                ),
                Some(_) => {}
            }
        }
    }

    // (2) connection preserves the type of edges, and is π-compatible along
    // horizontal edges
    for (e, edge) in total.edges().iter().enumerate() {
        for &f in total.out_edges(edge.src) {
            let Some(t) = total.nabla(e, f) else { continue };
            let loc = || vec![vname(edge.src), vname(edge.dst), vname(total.edge(f).dst)];
            if bundle.is_vertical(f) != bundle.is_vertical(t) {
                push(
                    Check::ConnectionPreservesType,
                    loc(),
                    format!("∇ sends {} to {} of the other type", total.edge_label(f), total.edge_label(t)),
                );
                continue;
            }
            if bundle.is_vertical(e) || bundle.is_vertical(f) {
                continue;
            }
            let (Some(be), Some(bf), Some(bt)) = (bundle.project_edge(e), bundle.project_edge(f), bundle.project_edge(t))
            else {
                continue;
            };
            if base.nabla(be, bf) != Some(bt) {
                push(
                    Check::ConnectionPreservesType,
                    loc(),
                    format!("π(∇_e e') = {} differs from ∇_B along the image", base.edge_label(bt)),
                );
            }
        }
    }

    // (3)-(5) per base edge
    let mut per_vertex: Vec<Option<Vec<(Weight, i64)>>> = vec![None; base.num_vertices()];
    let fiber_graphs: Vec<_> = (0..base.num_vertices()).map(|p| bundle.fiber_graph(p)).collect();
    for bedge in base.edges() {
        let (p, q) = (bedge.src, bedge.dst);
        let loc = vec![bname(p), bname(q)];
        let Ok(lifts) = bundle.lifts(p, q) else { continue };
        let phi: Vec<usize> = lifts.iter().map(|&e| total.edge(e).dst).collect();
        let mut images = phi.clone();
        images.sort_unstable();
        images.dedup();
        if images.len() != phi.len() || images != bundle.fibers[q] {
            push(Check::FiberIsomorphism, loc.clone(), "lifts do not biject the fibers".into());
            continue;
        }
        let position = |v: usize| bundle.fibers[p].iter().position(|&w| w == v).unwrap();
        for (i, &lift) in lifts.iter().enumerate() {
            let src = total.edge(lift).src;
            for &f in total.out_edges(src) {
                if !bundle.is_vertical(f) {
                    continue;
                }
                let other = total.edge(f).dst;
                let expected = total.edge_between(phi[i], phi[position(other)]);
                let Some(expected) = expected else {
                    push(
                        Check::FiberIsomorphism,
                        vec![vname(src), vname(other)],
                        format!("Φ does not carry {} to an edge", total.edge_label(f)),
                    );
                    continue;
                };
                if total.nabla(lift, f) != Some(expected) {
                    push(
                        Check::FiberIsomorphism,
                        vec![vname(src), vname(other)],
                        format!("∇ along {} does not send {} to {}", total.edge_label(lift), total.edge_label(f), total.edge_label(expected)),
                    );
                }
            }
        }

        let psi = match bundle.derive_psi(p, q, &lifts) {
            Ok(psi) => psi,
            Err(msg) => {
                push(Check::FiberTransport, loc.clone(), msg);
                continue;
            }
        };
        if let (Ok(gp), Ok(gq)) = (&fiber_graphs[p], &fiber_graphs[q]) {
            let vertex_map = lifts.iter().map(|&e| (vname(total.edge(e).src), vname(total.edge(e).dst))).collect();
            if let Err(err) = GraphIso::new(vertex_map, psi.clone()).verify(gp, gq) {
                push(Check::FiberTransport, loc.clone(), err.to_string());
            }
        }
        match bundle.m_table(p, q, &psi) {
            Ok(entries) => {
                match &per_vertex[p] {
                    None => per_vertex[p] = Some(entries.clone()),
                    Some(prev) if *prev != entries => report.edge_independent_m = false,
                    Some(_) => {}
                }
                report.m_tables.push(EdgeMTable { edge: (bname(p), bname(q)), entries });
            }
            Err(msg) => push(Check::EdgeIndependentM, loc.clone(), msg),
        }
    }
    for (p, g) in fiber_graphs.iter().enumerate() {
        if let Err(err) = g {
            push(Check::FiberIsomorphism, vec![bname(p)], err.to_string());
        }
    }
    report.findings = findings;
    if !report.edge_independent_m {
        report.notes.push(Finding::new(
            Check::EdgeIndependentM,
            vec![],
            "the m-tables depend on the base edge; no single edge-independent m exists",
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::super::testing::product_bundle;
    use super::*;
    use crate::gkm::GkmGraph;

    #[test]
    fn product_bundle_is_valid() {
        let b = product_bundle();
        let r = validate_bundle(&b);
        assert!(r.is_valid(), "{:?}", r.findings);
        assert_eq!(r.m_tables.len(), 2);
        assert!(r.edge_independent_m);
    }

    #[test]
    fn perturbed_horizontal_label_violates_condition_one() {
        let b = product_bundle();
        let total = b.total();
        let edges = total
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| {
                let (p, q) = total.edge_names(e);
                let alpha = match (p.as_str(), q.as_str()) {
                    ("a2", "b2") => Weight::new(vec![1, -1, 1, 0]),
                    ("b2", "a2") => Weight::new(vec![-1, 1, -1, 0]),
                    _ => edge.alpha.clone(),
                };
                (p, q, alpha)
            })
            .collect();
        let perturbed = GkmGraph::new(4, total.vertices().to_vec(), edges)
            .unwrap()
            .with_connection(total.connection().unwrap().clone());
        let bad = GkmBundle::new(perturbed, b.base().clone(), &b.projection()).unwrap();
        let r = validate_bundle(&bad);
        assert!(r.findings.iter().any(|f| f.check == Check::HorizontalLift));
    }
}
