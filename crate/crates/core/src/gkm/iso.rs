use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::LatticeMap;
use crate::{Error, Result};

use super::{EquivariantClass, GkmGraph};

/// An isomorphism of GKM graphs `(Φ, Ψ)`: a vertex bijection `Φ` and a lattice
/// automorphism `Ψ` with `α₂(Φp, Φq) = Ψ(α₁(p, q))` on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphIso {
    pub vertex_map: BTreeMap<String, String>,
    pub lattice_map: LatticeMap,
}

impl GraphIso {
    pub fn new(vertex_map: BTreeMap<String, String>, lattice_map: LatticeMap) -> Self {
        GraphIso { vertex_map, lattice_map }
    }

    pub fn identity(graph: &GkmGraph) -> Self {
        GraphIso {
            vertex_map: graph.vertices().iter().map(|v| (v.clone(), v.clone())).collect(),
            lattice_map: LatticeMap::identity(graph.rank()),
        }
    }

    pub fn image(&self, v: &str) -> Option<&str> {
        self.vertex_map.get(v).map(String::as_str)
    }

    /// Checks that this is an isomorphism from `g1` to `g2`.
    pub fn verify(&self, g1: &GkmGraph, g2: &GkmGraph) -> Result<()> {
        if self.lattice_map.dim() != g1.rank() || g1.rank() != g2.rank() {
            return Err(Error::InvalidIso("rank mismatch".into()));
        }
        if !self.lattice_map.is_unimodular() {
            return Err(Error::InvalidIso("lattice map is not unimodular".into()));
        }
        if !self.vertex_map.keys().eq(g1.vertices().iter()) {
            return Err(Error::InvalidIso("vertex map is not defined on exactly the source vertices".into()));
        }
        let targets: BTreeSet<&String> = self.vertex_map.values().collect();
        if targets.len() != self.vertex_map.len() || !targets.into_iter().eq(g2.vertices().iter()) {
            return Err(Error::InvalidIso("vertex map is not a bijection onto the target vertices".into()));
        }
        if g1.num_edges() != g2.num_edges() {
            return Err(Error::InvalidIso("edge counts differ".into()));
        }
        for (e, _) in g1.edges().iter().enumerate() {
            let (p, q) = g1.edge_names(e);
            let (fp, fq) = (&self.vertex_map[&p], &self.vertex_map[&q]);
            let e2 = g2.edge_by_names(fp, fq).map_err(|_| {
                Error::InvalidIso(format!("edge ({p}, {q}) has no image ({fp}, {fq})"))
            })?;
            let mapped = self.lattice_map.apply(g1.alpha(e));
            if &mapped != g2.alpha(e2) {
                return Err(Error::InvalidIso(format!(
                    "Ψ(α({p}, {q})) = {mapped} but α({fp}, {fq}) = {}",
                    g2.alpha(e2)
                )));
            }
        }
        Ok(())
    }

    /// `Υ*(f)(p) = Ψ⁻¹(f(Φ(p)))` for a class `f` on the target graph.
    pub fn pull_back(&self, f: &EquivariantClass) -> Result<EquivariantClass> {
        let inv = self.lattice_map.inverse()?;
        let mut values = BTreeMap::new();
        for (p, q) in &self.vertex_map {
            let value = f.value(q).ok_or_else(|| Error::UnknownVertex(q.clone()))?;
            values.insert(p.clone(), value.substitute(&inv));
        }
        EquivariantClass::new(f.theory(), f.rank(), values)
    }

    /// The composite `next ∘ self`.
    pub fn then(&self, next: &GraphIso) -> Result<GraphIso> {
        let mut vertex_map = BTreeMap::new();
        for (p, q) in &self.vertex_map {
            let r = next.vertex_map.get(q).ok_or_else(|| Error::InvalidIso(format!("`{q}` not in domain")))?;
            vertex_map.insert(p.clone(), r.clone());
        }
        Ok(GraphIso { vertex_map, lattice_map: next.lattice_map.compose(&self.lattice_map) })
    }

    pub fn inverse(&self) -> Result<GraphIso> {
        Ok(GraphIso {
            vertex_map: self.vertex_map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            lattice_map: self.lattice_map.inverse()?,
        })
    }
}

/// Verifies `iso : g1 -> g2` and pulls back the class `f` on `g2`.
pub fn apply_graph_iso(iso: &GraphIso, g1: &GkmGraph, g2: &GkmGraph, f: &EquivariantClass) -> Result<EquivariantClass> {
    iso.verify(g1, g2)?;
    iso.pull_back(f)
}
