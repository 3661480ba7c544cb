//! GKM fiber bundles: fibers, transports along base paths, holonomy,
//! extension of invariant fiber classes and expansion in a fiber basis.

mod expand;
mod transport;
mod validate;

use std::collections::BTreeMap;

pub use expand::{combine_fiber_basis, expand_in_fiber_basis};
pub use transport::{extend_invariant, extend_invariant_with_tree, FiberIso, HolonomyGroup, SpanningTree, TreeKind};
pub use validate::{validate_bundle, BundleReport, EdgeMTable};

use crate::gkm::{is_equivariant_class, Connection, EdgeId, EquivariantClass, GkmGraph};
use crate::{Error, Result};

/// A graph morphism `π : Γ -> Γ_B` between GKM graphs over the same torus.
/// Both graphs carry a connection; a missing one is inferred on
/// construction.
#[derive(Clone, Debug)]
pub struct GkmBundle {
    total: GkmGraph,
    base: GkmGraph,
    proj: Vec<usize>,
    fibers: Vec<Vec<usize>>,
}

impl GkmBundle {
    /// Checks that `proj` is defined on every total vertex with values in the
    /// base. The bundle conditions themselves are checked by
    /// [`validate_bundle`].
    pub fn new(total: GkmGraph, base: GkmGraph, proj: &BTreeMap<String, String>) -> Result<Self> {
        if total.rank() != base.rank() {
            return Err(Error::RankMismatch { expected: total.rank(), found: base.rank() });
        }
        let total = total.ensure_connection()?;
        let base = base.ensure_connection()?;
        let mut idx = Vec::with_capacity(total.num_vertices());
        for v in total.vertices() {
            let b = proj.get(v).ok_or_else(|| Error::Malformed(format!("projection undefined at `{v}`")))?;
            idx.push(base.require_vertex(b)?);
        }
        if proj.len() != total.num_vertices() {
            let extra = proj.keys().find(|k| total.vertex_index(k).is_none()).cloned().unwrap_or_default();
            return Err(Error::UnknownVertex(extra));
        }
        let mut fibers = vec![Vec::new(); base.num_vertices()];
        for (v, &b) in idx.iter().enumerate() {
            fibers[b].push(v);
        }
        Ok(GkmBundle { total, base, proj: idx, fibers })
    }

    pub fn total(&self) -> &GkmGraph {
        &self.total
    }

    pub fn base(&self) -> &GkmGraph {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.total.rank()
    }

    /// `π` on vertex names.
    pub fn projection(&self) -> BTreeMap<String, String> {
        self.total
            .vertices()
            .iter()
            .zip(&self.proj)
            .map(|(v, &b)| (v.clone(), self.base.vertex_name(b).to_string()))
            .collect()
    }

    pub fn project(&self, total_vertex: usize) -> usize {
        self.proj[total_vertex]
    }

    /// Total vertices over the base vertex `p`, in vertex order.
    pub fn fiber(&self, p: usize) -> &[usize] {
        &self.fibers[p]
    }

    pub fn fiber_names(&self, p: usize) -> Vec<String> {
        self.fibers[p].iter().map(|&v| self.total.vertex_name(v).to_string()).collect()
    }

    pub fn is_vertical(&self, e: EdgeId) -> bool {
        let edge = self.total.edge(e);
        self.proj[edge.src] == self.proj[edge.dst]
    }

    /// The base edge under a horizontal edge.
    pub fn project_edge(&self, e: EdgeId) -> Option<EdgeId> {
        let edge = self.total.edge(e);
        self.base.edge_between(self.proj[edge.src], self.proj[edge.dst])
    }

    /// The lift of the base edge `(p, q)` at the total vertex `v` over `p`,
    /// if unique.
    pub(crate) fn lift(&self, v: usize, q: usize) -> Option<EdgeId> {
        let mut it = self.total.out_edges(v).iter().copied().filter(|&e| self.proj[self.total.edge(e).dst] == q);
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }

    pub fn base_index(&self, name: &str) -> Result<usize> {
        self.base.require_vertex(name)
    }

    /// The induced GKM graph `Γ_p` on the fiber over `p`, with restricted
    /// axial function and connection.
    pub fn fiber_subgraph(&self, p: &str) -> Result<GkmGraph> {
        self.fiber_graph(self.base_index(p)?)
    }

    pub(crate) fn fiber_graph(&self, p: usize) -> Result<GkmGraph> {
        let fiber = &self.fibers[p];
        let names: Vec<String> = fiber.iter().map(|&v| self.total.vertex_name(v).to_string()).collect();
        let mut edges = Vec::new();
        for &v in fiber {
            for &e in self.total.out_edges(v) {
                if self.is_vertical(e) {
                    let (a, b) = self.total.edge_names(e);
                    edges.push((a, b, self.total.alpha(e).clone()));
                }
            }
        }
        let graph = GkmGraph::new(self.rank(), names, edges)?;
        let mut conn = Connection::empty(&graph);
        let conn_total = self.total.connection().expect("bundle graphs carry a connection");
        for (fe, _) in graph.edges().iter().enumerate() {
            let (a, b) = graph.edge_names(fe);
            let te = self.total.edge_by_names(&a, &b)?;
            for &ff in graph.out_edges(graph.edge(fe).src) {
                let (c, d) = graph.edge_names(ff);
                let tf = self.total.edge_by_names(&c, &d)?;
                let tt = conn_total.get(&self.total, te, tf).ok_or_else(|| {
                    Error::InvalidBundle(format!("connection undefined along {}", self.total.edge_label(te)))
                })?;
                let (x, y) = self.total.edge_names(tt);
                let target = graph.edge_by_names(&x, &y).map_err(|_| {
                    Error::InvalidBundle(format!(
                        "connection along vertical edge {} leaves the fiber",
                        self.total.edge_label(te)
                    ))
                })?;
                conn.set(&graph, fe, ff, target)?;
            }
        }
        Ok(graph.with_connection(conn))
    }

    /// `π*(f)(q) = f(π(q))`.
    pub fn pullback(&self, f: &EquivariantClass) -> Result<EquivariantClass> {
        let report = is_equivariant_class(&self.base, f)?;
        if !report.is_class {
            let (p, q) = report.failing_edge.unwrap_or_default();
            return Err(Error::NotAClass(p, q));
        }
        self.pullback_map(f)
    }

    /// `π*` on arbitrary vertex maps, without the class check.
    pub(crate) fn pullback_map(&self, f: &EquivariantClass) -> Result<EquivariantClass> {
        let values = self
            .total
            .vertices()
            .iter()
            .zip(&self.proj)
            .map(|(v, &b)| {
                let name = self.base.vertex_name(b);
                f.value(name).cloned().map(|x| (v.clone(), x)).ok_or_else(|| Error::UnknownVertex(name.to_string()))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        EquivariantClass::new(f.theory(), f.rank(), values)
    }
}

/// Free function form of [`GkmBundle::pullback`].
pub fn pullback(bundle: &GkmBundle, f: &EquivariantClass) -> Result<EquivariantClass> {
    bundle.pullback(f)
}

/// Free function form of [`GkmBundle::fiber_subgraph`].
pub fn fiber_subgraph(bundle: &GkmBundle, p: &str) -> Result<GkmGraph> {
    bundle.fiber_subgraph(p)
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;
    use crate::algebra::Weight;

    /// `K_2 × K_2 -> K_2` with the base in coordinates 1, 2 and the fiber in
    /// coordinates 3, 4.
    pub fn product_bundle() -> GkmBundle {
        let names = ["a1", "a2", "b1", "b2"];
        let mut edges = Vec::new();
        let base_alpha = Weight::new(vec![1, -1, 0, 0]);
        let fiber_alpha = Weight::new(vec![0, 0, 1, -1]);
        for f in ["1", "2"] {
            edges.push((format!("a{f}"), format!("b{f}"), base_alpha.clone()));
            edges.push((format!("b{f}"), format!("a{f}"), -&base_alpha));
        }
        for b in ["a", "b"] {
            edges.push((format!("{b}1"), format!("{b}2"), fiber_alpha.clone()));
            edges.push((format!("{b}2"), format!("{b}1"), -&fiber_alpha));
        }
        let total = GkmGraph::new(4, names.iter().map(|s| s.to_string()).collect(), edges).unwrap();
        let base = GkmGraph::new(
            4,
            vec!["a".into(), "b".into()],
            vec![("a".into(), "b".into(), base_alpha.clone()), ("b".into(), "a".into(), -&base_alpha)],
        )
        .unwrap();
        let proj = names.iter().map(|v| (v.to_string(), v[..1].to_string())).collect();
        GkmBundle::new(total, base, &proj).unwrap()
    }
}
