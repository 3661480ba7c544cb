use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::algebra::{linear_map_from_data, LatticeMap, Weight};
use crate::gkm::{is_equivariant_class, EdgeId, EquivariantClass, GraphIso, Theory};
use crate::{Error, Result, DEFAULT_GROUP_CAP};

use super::GkmBundle;

/// The transport `Υ = (Φ, Ψ)` from the fiber over `source` to the fiber over
/// `target`. For a single base edge `(p, q)` the table `m_table` lists, for
/// each axial value `x` of the fiber over `p`, the integer `m(x)` with
/// `Ψ(x) = x + m(x) α_B(p, q)`; it is empty for longer paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberIso {
    pub source: String,
    pub target: String,
    pub vertex_map: BTreeMap<String, String>,
    pub lattice_map: LatticeMap,
    pub m_table: Vec<(Weight, i64)>,
}

impl FiberIso {
    /// The identity of the fiber over `p`.
    pub fn identity(bundle: &GkmBundle, p: usize) -> Self {
        let name = bundle.base.vertex_name(p).to_string();
        FiberIso {
            source: name.clone(),
            target: name,
            vertex_map: bundle.fiber_names(p).into_iter().map(|v| (v.clone(), v)).collect(),
            lattice_map: LatticeMap::identity(bundle.rank()),
            m_table: Vec::new(),
        }
    }

    pub fn as_graph_iso(&self) -> GraphIso {
        GraphIso::new(self.vertex_map.clone(), self.lattice_map.clone())
    }

    /// The composite `next ∘ self`.
    pub fn then(&self, next: &FiberIso) -> Result<FiberIso> {
        if self.target != next.source {
            return Err(Error::InvalidArgument(format!(
                "cannot compose a transport ending at `{}` with one starting at `{}`",
                self.target, next.source
            )));
        }
        let composite = self.as_graph_iso().then(&next.as_graph_iso())?;
        Ok(FiberIso {
            source: self.source.clone(),
            target: next.target.clone(),
            vertex_map: composite.vertex_map,
            lattice_map: composite.lattice_map,
            m_table: Vec::new(),
        })
    }

    pub fn inverse(&self) -> Result<FiberIso> {
        let inv = self.as_graph_iso().inverse()?;
        Ok(FiberIso {
            source: self.target.clone(),
            target: self.source.clone(),
            vertex_map: inv.vertex_map,
            lattice_map: inv.lattice_map,
            m_table: Vec::new(),
        })
    }

    /// `Υ*(f)(p') = Ψ⁻¹(f(Φ(p')))` for a K-class `f` on the target fiber.
    pub fn pullback(&self, f: &EquivariantClass) -> Result<EquivariantClass> {
        if f.theory() != Theory::K {
            return Err(Error::InvalidArgument("transports act on K-classes".into()));
        }
        self.as_graph_iso().pull_back(f)
    }

    pub fn is_identity(&self) -> bool {
        self.lattice_map.is_identity() && self.vertex_map.iter().all(|(a, b)| a == b)
    }

    fn key(&self) -> (Vec<String>, Vec<i64>) {
        (self.vertex_map.values().cloned().collect(), self.lattice_map.entries().to_vec())
    }
}

/// The holonomy group of the fiber over `base_vertex`, enumerated from the
/// transports around the fundamental cycles of a breadth-first spanning tree.
#[derive(Clone, Debug)]
pub struct HolonomyGroup {
    pub base_vertex: String,
    /// Generators with their witness loops (base vertex names, closed).
    pub generators: Vec<(Vec<String>, FiberIso)>,
    /// All elements, the identity first.
    pub elements: Vec<FiberIso>,
}

impl HolonomyGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Each element as a permutation of the fiber vertices, given as the
    /// images of the fiber vertices in vertex order.
    pub fn permutations(&self) -> Vec<Vec<String>> {
        self.elements.iter().map(|g| g.vertex_map.values().cloned().collect()).collect()
    }

    /// The number of distinct vertex permutations induced by the group.
    pub fn permutation_group_order(&self) -> usize {
        self.permutations().into_iter().collect::<BTreeSet<_>>().len()
    }
}

/// Order in which a spanning tree of the base is grown.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeKind {
    BreadthFirst,
    DepthFirst,
}

/// A spanning tree of the base rooted at a vertex, stored as parent links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    root: usize,
    parent: Vec<Option<usize>>,
}

impl SpanningTree {
    /// Grows a tree from `root`, visiting neighbours in out-edge order.
    pub fn new(bundle: &GkmBundle, root: usize, kind: TreeKind) -> Result<Self> {
        let base = &bundle.base;
        let n = base.num_vertices();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        match kind {
            TreeKind::BreadthFirst => {
                let mut queue = VecDeque::from([root]);
                while let Some(v) = queue.pop_front() {
                    for &e in base.out_edges(v) {
                        let w = base.edge(e).dst;
                        if !seen[w] {
                            seen[w] = true;
                            parent[w] = Some(v);
                            queue.push_back(w);
                        }
                    }
                }
            }
            TreeKind::DepthFirst => {
                let mut stack = vec![(root, 0usize)];
                while let Some((v, next)) = stack.pop() {
                    let star = base.out_edges(v);
                    if next < star.len() {
                        stack.push((v, next + 1));
                        let w = base.edge(star[next]).dst;
                        if !seen[w] {
                            seen[w] = true;
                            parent[w] = Some(v);
                            stack.push((w, 0));
                        }
                    }
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidBundle(format!("base is disconnected: `{}` unreachable", base.vertex_name(v))));
        }
        Ok(SpanningTree { root, parent })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// The tree path `v, parent(v), …, root`.
    pub fn path_to_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path
    }

    fn is_tree_edge(&self, a: usize, b: usize) -> bool {
        self.parent[a] == Some(b) || self.parent[b] == Some(a)
    }

    /// One closed loop at the root per non-tree edge `{a, b}`: the tree path
    /// to `a`, the edge, and the tree path back from `b`.
    pub fn fundamental_cycles(&self, bundle: &GkmBundle) -> Vec<Vec<usize>> {
        let base = &bundle.base;
        let mut loops = Vec::new();
        for edge in base.edges() {
            let (a, b) = (edge.src, edge.dst);
            if a < b && !self.is_tree_edge(a, b) {
                let mut path: Vec<usize> = self.path_to_root(a).into_iter().rev().collect();
                path.extend(self.path_to_root(b));
                loops.push(path);
            }
        }
        loops
    }
}

impl GkmBundle {
    /// The lifts of the base edge `(p, q)`, one per vertex of the fiber over
    /// `p` in fiber order.
    pub(crate) fn lifts(&self, p: usize, q: usize) -> std::result::Result<Vec<EdgeId>, String> {
        self.fibers[p]
            .iter()
            .map(|&v| {
                self.lift(v, q).ok_or_else(|| {
                    format!(
                        "`{}` does not have exactly one edge over ({}, {})",
                        self.total.vertex_name(v),
                        self.base.vertex_name(p),
                        self.base.vertex_name(q)
                    )
                })
            })
            .collect()
    }

    /// `Ψ_{p,q}` solved from `Ψ(α(e'')) = α(∇_{e'} e'')` over every lift `e'`
    /// and every edge `e''` at its source, extended by the identity on the
    /// orthogonal complement of the span.
    pub(crate) fn derive_psi(&self, p: usize, q: usize, lifts: &[EdgeId]) -> std::result::Result<LatticeMap, String> {
        let mut sources = Vec::new();
        let mut targets = Vec::new();
        for &lift in lifts {
            for &e in self.total.out_edges(self.total.edge(lift).src) {
                let image = self.total.nabla(lift, e).ok_or_else(|| {
                    format!("connection undefined along {}", self.total.edge_label(lift))
                })?;
                sources.push(self.total.alpha(e).clone());
                targets.push(self.total.alpha(image).clone());
            }
        }
        linear_map_from_data(self.rank(), &sources, &targets).ok_or_else(|| {
            format!(
                "no integral lattice map carries the axial values along ({}, {})",
                self.base.vertex_name(p),
                self.base.vertex_name(q)
            )
        })
    }

    /// Distinct axial values of vertical edges over `p`, sorted.
    pub(crate) fn fiber_axial_values(&self, p: usize) -> Vec<Weight> {
        let mut values = BTreeSet::new();
        for &v in &self.fibers[p] {
            for &e in self.total.out_edges(v) {
                if self.is_vertical(e) {
                    values.insert(self.total.alpha(e).clone());
                }
            }
        }
        values.into_iter().collect()
    }

    /// The table `x ↦ m(x)` with `Ψ(x) - x = m(x) α_B(p, q)`.
    pub(crate) fn m_table(&self, p: usize, q: usize, psi: &LatticeMap) -> std::result::Result<Vec<(Weight, i64)>, String> {
        let e = self.base.edge_between(p, q).ok_or("not a base edge")?;
        let alpha_b = self.base.alpha(e);
        self.fiber_axial_values(p)
            .into_iter()
            .map(|x| {
                let diff = &psi.apply(&x) - &x;
                let m = if diff.is_zero() { Some(0) } else { diff.integer_multiple_of(alpha_b) };
                m.map(|m| (x.clone(), m))
                    .ok_or_else(|| format!("Ψ({x}) - {x} = {diff} is not an integer multiple of {alpha_b}"))
            })
            .collect()
    }

    /// `Υ_{p,q}` for the base edge `(p, q)`.
    pub(crate) fn edge_transport_idx(&self, p: usize, q: usize) -> Result<FiberIso> {
        if self.base.edge_between(p, q).is_none() {
            return Err(Error::InvalidArgument(format!(
                "({}, {}) is not a base edge",
                self.base.vertex_name(p),
                self.base.vertex_name(q)
            )));
        }
        let lifts = self.lifts(p, q).map_err(Error::InvalidBundle)?;
        let psi = self.derive_psi(p, q, &lifts).map_err(Error::InvalidBundle)?;
        let m_table = self.m_table(p, q, &psi).map_err(Error::InvalidBundle)?;
        let vertex_map = lifts
            .iter()
            .map(|&e| self.total.edge_names(e))
            .collect::<BTreeMap<String, String>>();
        if vertex_map.values().collect::<BTreeSet<_>>().len() != self.fibers[q].len() || self.fibers[p].len() != self.fibers[q].len() {
            return Err(Error::InvalidBundle(format!(
                "lifts of ({}, {}) do not biject the fibers",
                self.base.vertex_name(p),
                self.base.vertex_name(q)
            )));
        }
        Ok(FiberIso {
            source: self.base.vertex_name(p).to_string(),
            target: self.base.vertex_name(q).to_string(),
            vertex_map,
            lattice_map: psi,
            m_table,
        })
    }

    /// `Υ_{p,q}` for the base edge named `(p, q)`.
    pub fn edge_transport(&self, p: &str, q: &str) -> Result<FiberIso> {
        self.edge_transport_idx(self.base_index(p)?, self.base_index(q)?)
    }

    pub(crate) fn transport_idx(&self, path: &[usize]) -> Result<FiberIso> {
        let first = *path.first().ok_or_else(|| Error::InvalidArgument("empty path".into()))?;
        let mut acc = FiberIso::identity(self, first);
        for w in path.windows(2) {
            acc = acc.then(&self.edge_transport_idx(w[0], w[1])?)?;
        }
        Ok(acc)
    }

    /// `Υ_γ` along the base path `γ` given by its vertices; a single vertex
    /// gives the identity.
    pub fn transport(&self, path: &[&str]) -> Result<FiberIso> {
        let idx = path.iter().map(|v| self.base_index(v)).collect::<Result<Vec<_>>>()?;
        self.transport_idx(&idx)
    }

    /// The holonomy group at `p` with the default enumeration cap.
    pub fn holonomy_group(&self, p: &str) -> Result<HolonomyGroup> {
        self.holonomy_group_with_cap(p, DEFAULT_GROUP_CAP)
    }

    /// Generators from fundamental cycles, closed under composition. Fails
    /// with [`Error::CapExceeded`] once more than `cap` elements appear.
    pub fn holonomy_group_with_cap(&self, p: &str, cap: usize) -> Result<HolonomyGroup> {
        let root = self.base_index(p)?;
        let tree = SpanningTree::new(self, root, TreeKind::BreadthFirst)?;
        let names = |path: &[usize]| path.iter().map(|&v| self.base.vertex_name(v).to_string()).collect::<Vec<_>>();
        let generators = tree
            .fundamental_cycles(self)
            .into_iter()
            .map(|cycle| Ok((names(&cycle), self.transport_idx(&cycle)?)))
            .collect::<Result<Vec<_>>>()?;
        let identity = FiberIso::identity(self, root);
        let mut seen = HashSet::from([identity.key()]);
        let mut elements = vec![identity];
        let mut next = 0;
        while next < elements.len() {
            for (_, g) in &generators {
                let h = elements[next].then(g)?;
                if seen.insert(h.key()) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    elements.push(h);
                }
            }
            next += 1;
        }
        Ok(HolonomyGroup { base_vertex: p.to_string(), generators, elements })
    }
}

/// Extends a holonomy-invariant K-class on the fiber over `p` to the total
/// graph by transport along a breadth-first spanning tree.
pub fn extend_invariant(bundle: &GkmBundle, p: &str, f: &EquivariantClass) -> Result<EquivariantClass> {
    let tree = SpanningTree::new(bundle, bundle.base_index(p)?, TreeKind::BreadthFirst)?;
    extend_invariant_with_tree(bundle, &tree, f)
}

/// As [`extend_invariant`], with the fiber at the root of `tree`: the value
/// on the fiber over `q` is `Υ_γ*(f)` for the tree path `γ` from `q` to the
/// root.
pub fn extend_invariant_with_tree(bundle: &GkmBundle, tree: &SpanningTree, f: &EquivariantClass) -> Result<EquivariantClass> {
    let root = tree.root();
    if f.theory() != Theory::K {
        return Err(Error::InvalidArgument("extension is defined for K-classes".into()));
    }
    let fiber = bundle.fiber_graph(root)?;
    let report = is_equivariant_class(&fiber, f)?;
    if let Some((a, b)) = report.failing_edge {
        return Err(Error::NotAClass(a, b));
    }
    for cycle in tree.fundamental_cycles(bundle) {
        if bundle.transport_idx(&cycle)?.pullback(f)? != *f {
            return Err(Error::NotInvariant(cycle.iter().map(|&v| bundle.base.vertex_name(v).to_string()).collect()));
        }
    }
    let mut values = BTreeMap::new();
    for q in 0..bundle.base.num_vertices() {
        let fq = bundle.transport_idx(&tree.path_to_root(q))?.pullback(f)?;
        values.extend(fq.values().iter().map(|(v, x)| (v.clone(), x.clone())));
    }
    let c = EquivariantClass::new(Theory::K, f.rank(), values)?;
    if let Some((a, b)) = is_equivariant_class(&bundle.total, &c)?.failing_edge {
        return Err(Error::InvalidBundle(format!("extension fails the class condition on ({a}, {b})")));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::super::testing::product_bundle;
    use super::*;
    use crate::algebra::LaurentPoly;

    #[test]
    fn product_transports_are_trivial_on_fibers() {
        let b = product_bundle();
        let t = b.edge_transport("a", "b").unwrap();
        assert_eq!(t.vertex_map["a1"], "b1");
        assert!(t.m_table.iter().all(|(_, m)| *m == 0));
        let back = b.transport(&["a", "b", "a"]).unwrap();
        assert!(back.is_identity());
        assert!(b.transport(&["a"]).unwrap().is_identity());
        assert!(b.transport(&[]).is_err());
    }

    #[test]
    fn product_holonomy_is_trivial() {
        let b = product_bundle();
        let h = b.holonomy_group("a").unwrap();
        assert_eq!(h.order(), 1);
        assert!(h.generators.is_empty());
    }

    #[test]
    fn extension_of_one_is_one() {
        let b = product_bundle();
        let fiber = b.fiber_subgraph("a").unwrap();
        let one = EquivariantClass::constant(&fiber, Theory::K, &LaurentPoly::one(4)).unwrap();
        let c = extend_invariant(&b, "a", &one).unwrap();
        assert_eq!(c, EquivariantClass::constant(b.total(), Theory::K, &LaurentPoly::one(4)).unwrap());
    }

    #[test]
    fn trees_differ_in_shape_but_span() {
        let b = product_bundle();
        let bfs = SpanningTree::new(&b, 0, TreeKind::BreadthFirst).unwrap();
        let dfs = SpanningTree::new(&b, 0, TreeKind::DepthFirst).unwrap();
        assert_eq!(bfs, dfs);
        assert_eq!(bfs.path_to_root(1), vec![1, 0]);
    }
}
