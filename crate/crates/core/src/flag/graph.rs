use std::collections::{BTreeMap, HashMap};

use crate::algebra::{LatticeMap, Weight};
use crate::bundle::GkmBundle;
use crate::gkm::{Connection, GkmGraph};
use crate::{Error, Result, DEFAULT_GROUP_CAP};

use super::roots::reflection;
use super::weyl::build_weyl_group_with_cap;
use super::{CosetSpace, RootSystem, RootType, WeylGroup};

/// The images `w(1), …, w(n)` of a monomial matrix, signed and 1-based:
/// `w e_i = ±e_j` gives `±(j + 1)`.
pub fn signed_one_line(w: &LatticeMap) -> Option<Vec<i64>> {
    let n = w.dim();
    (0..n)
        .map(|i| {
            let mut hit = None;
            for j in 0..n {
                match w.get(j, i) {
                    0 => {}
                    s @ (1 | -1) if hit.is_none() => hit = Some(s * (j as i64 + 1)),
                    _ => return None,
                }
            }
            hit
        })
        .collect()
}

fn join_values(values: &[i64], sep: &str) -> String {
    values.iter().map(i64::to_string).collect::<Vec<_>>().join(sep)
}

/// Vertex name of the coset of `w`.
///
/// Type A with `Σ = ∅` uses the one-line notation (`"312"`, comma separated
/// beyond nine letters). Otherwise positions are grouped into blocks joined
/// by the simple roots in `Σ`; each block shows its sorted values and blocks
/// are separated by `|`. The last block is omitted when it is determined by
/// the others (always in type A, when `α_n ∈ Σ` in type C). Type C values are
/// signed. Custom root systems use the reduced word of the representative.
fn coset_name(roots: &RootSystem, sigma: &[usize], w: &LatticeMap, word: &[usize]) -> String {
    let one_line = match roots.kind() {
        RootType::Custom => None,
        _ => signed_one_line(w),
    };
    let Some(values) = one_line else {
        return if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|i| format!("s{}", i + 1)).collect()
        };
    };
    let n = values.len();
    let sep = if roots.kind() == RootType::C || n > 9 { "," } else { "" };
    if sigma.is_empty() {
        return join_values(&values, sep);
    }
    let mut blocks: Vec<Vec<i64>> = vec![vec![values[0]]];
    for i in 1..n {
        if sigma.contains(&(i - 1)) {
            blocks.last_mut().unwrap().push(values[i]);
        } else {
            blocks.push(vec![values[i]]);
        }
    }
    let drop_last = match roots.kind() {
        RootType::A => true,
        _ => sigma.contains(&(roots.rank() - 1)),
    };
    if drop_last {
        blocks.pop();
    }
    blocks
        .iter_mut()
        .map(|b| {
            b.sort_unstable();
            join_values(b, sep)
        })
        .collect::<Vec<_>>()
        .join("|")
}

/// The GKM graph of `G/P(Σ)` together with the group data it was built from.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    roots: RootSystem,
    sigma: Vec<usize>,
    group: WeylGroup,
    subgroup: WeylGroup,
    cosets: CosetSpace,
    names: Vec<String>,
    by_name: HashMap<String, usize>,
    graph: GkmGraph,
}

impl CosetGraph {
    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    /// `Σ` as sorted 0-based simple root indices.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    /// `W(Σ)`.
    pub fn subgroup(&self) -> &WeylGroup {
        &self.subgroup
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    pub fn graph(&self) -> &GkmGraph {
        &self.graph
    }

    pub fn into_graph(self) -> GkmGraph {
        self.graph
    }

    /// Vertex name of the coset containing the element with index `w`.
    pub fn vertex_of_element(&self, w: usize) -> &str {
        &self.names[self.cosets.coset_of(w)]
    }

    /// Element index of the representative of the named coset.
    pub fn representative(&self, name: &str) -> Result<usize> {
        self.by_name
            .get(name)
            .map(|&c| self.cosets.representative(c))
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Vertex names in coset order (the order of minimal representatives).
    pub fn coset_names(&self) -> &[String] {
        &self.names
    }
}

/// The graph with vertices `W/W(Σ)` and edges `([v], [v s_β])` for
/// `β ∈ Δ⁺ ∖ ⟨Σ⟩`, labelled `vβ`, with the connection sending the edge with
/// label `α'` at `[v]` to the edge with label `s_α(α')` at the end of an edge
/// labelled `α`.
pub fn build_gp_graph(roots: &RootSystem, sigma: &[usize]) -> Result<CosetGraph> {
    build_gp_graph_with_cap(roots, sigma, DEFAULT_GROUP_CAP)
}

pub fn build_gp_graph_with_cap(roots: &RootSystem, sigma: &[usize], cap: usize) -> Result<CosetGraph> {
    roots.check_subset(sigma)?;
    let mut sigma = sigma.to_vec();
    sigma.sort_unstable();
    sigma.dedup();
    let all: Vec<usize> = (0..roots.rank()).collect();
    let group = build_weyl_group_with_cap(roots, &all, cap)?;
    let subgroup = build_weyl_group_with_cap(roots, &sigma, cap)?;
    let cosets = CosetSpace::new(&group, &subgroup)?;
    let names: Vec<String> = (0..cosets.len())
        .map(|c| {
            let r = cosets.representative(c);
            coset_name(roots, &sigma, group.element(r), group.word(r))
        })
        .collect();
    let mut by_name = HashMap::new();
    for (c, name) in names.iter().enumerate() {
        if by_name.insert(name.clone(), c).is_some() {
            return Err(Error::InvalidGraph(format!("two cosets share the name `{name}`")));
        }
    }

    let betas = roots.complement_roots(&sigma);
    let beta_reflections = betas.iter().map(reflection).collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    let mut seen = BTreeMap::new();
    for c in 0..cosets.len() {
        let v = group.element(cosets.representative(c));
        for (beta, s) in betas.iter().zip(&beta_reflections) {
            let target = group.index_of(&v.compose(s)).expect("W is closed");
            let d = cosets.coset_of(target);
            if d == c || seen.insert((c, d), ()).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "root {beta} gives a loop or repeated edge at `{}`",
                    names[c]
                )));
            }
            edges.push((names[c].clone(), names[d].clone(), v.apply(beta)));
        }
    }
    let graph = GkmGraph::new(roots.dim(), names.clone(), edges)?;

    let mut reflections: HashMap<Weight, LatticeMap> = HashMap::new();
    let mut conn = Connection::empty(&graph);
    for (e, edge) in graph.edges().iter().enumerate() {
        if !reflections.contains_key(&edge.alpha) {
            reflections.insert(edge.alpha.clone(), reflection(&edge.alpha)?);
        }
        let s = &reflections[&edge.alpha];
        for &f in graph.out_edges(edge.src) {
            let label = s.apply(graph.alpha(f));
            let target = graph
                .out_edges(edge.dst)
                .iter()
                .copied()
                .find(|&t| graph.alpha(t) == &label)
                .ok_or_else(|| Error::InvalidGraph(format!("no edge labelled {label} at the end of {}", graph.edge_label(e))))?;
            conn.set(&graph, e, f, target)?;
        }
    }
    let graph = graph.with_connection(conn);
    Ok(CosetGraph { roots: roots.clone(), sigma, group, subgroup, cosets, names, by_name, graph })
}

/// The bundle `G/B -> G/P(Σ)` with both coset graphs.
#[derive(Clone, Debug)]
pub struct FlagBundle {
    pub total: CosetGraph,
    pub base: CosetGraph,
    pub bundle: GkmBundle,
}

/// `π : G/B -> G/P(Σ)`, `w ↦ wW(Σ)`.
pub fn build_flag_bundle(roots: &RootSystem, sigma: &[usize]) -> Result<FlagBundle> {
    build_flag_bundle_with_cap(roots, sigma, DEFAULT_GROUP_CAP)
}

pub fn build_flag_bundle_with_cap(roots: &RootSystem, sigma: &[usize], cap: usize) -> Result<FlagBundle> {
    let total = build_gp_graph_with_cap(roots, &[], cap)?;
    let base = build_gp_graph_with_cap(roots, sigma, cap)?;
    let proj: BTreeMap<String, String> = (0..total.group.order())
        .map(|w| (total.vertex_of_element(w).to_string(), base.vertex_of_element(w).to_string()))
        .collect();
    let bundle = GkmBundle::new(total.graph.clone(), base.graph.clone(), &proj)?;
    Ok(FlagBundle { total, base, bundle })
}
