use std::collections::BTreeMap;

use crate::algebra::Weight;
use crate::{Error, Result};

/// Index of an oriented edge inside a [`GkmGraph`].
pub type EdgeId = usize;

/// An oriented edge `src -> dst` with its axial value and the id of the
/// reversed edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub alpha: Weight,
    pub reverse: EdgeId,
}

/// A connection: for every oriented edge `e` from `p` to `q`, a map from the
/// star `E_p` to the star `E_q`. Entry `[e][k]` is the image of the `k`-th
/// out-edge of `p` (in the graph's out-edge order), or `None` if unspecified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub(crate) map: Vec<Vec<Option<EdgeId>>>,
}

impl Connection {
    pub fn empty(graph: &GkmGraph) -> Self {
        Connection { map: graph.edges.iter().map(|e| vec![None; graph.out[e.src].len()]).collect() }
    }

    pub fn set(&mut self, graph: &GkmGraph, e: EdgeId, from: EdgeId, to: EdgeId) -> Result<()> {
        let k = graph.out_position(from).ok_or_else(|| Error::Malformed(format!("unknown edge id {from}")))?;
        if graph.edges[from].src != graph.edges[e].src || graph.edges[to].src != graph.edges[e].dst {
            return Err(Error::Malformed(format!(
                "connection entry along {} maps {} to {}, which are not in the right stars",
                graph.edge_label(e),
                graph.edge_label(from),
                graph.edge_label(to)
            )));
        }
        if let Some(prev) = self.map[e][k] {
            if prev != to {
                return Err(Error::Malformed(format!(
                    "conflicting connection entries along {} for {}",
                    graph.edge_label(e),
                    graph.edge_label(from)
                )));
            }
        }
        self.map[e][k] = Some(to);
        Ok(())
    }

    /// `∇_e(e')`, where `e'` is an out-edge at the source of `e`.
    pub fn get(&self, graph: &GkmGraph, e: EdgeId, from: EdgeId) -> Option<EdgeId> {
        self.map[e][graph.out_position(from)?]
    }

    pub fn is_complete(&self) -> bool {
        self.map.iter().all(|row| row.iter().all(Option::is_some))
    }
}

/// A GKM graph: finite regular graph with oriented edges, an axial function
/// with values in the weight lattice of a rank-`n` torus, and optionally a
/// connection. Vertices are strings, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmGraph {
    pub(crate) rank: usize,
    pub(crate) vertices: Vec<String>,
    pub(crate) index: BTreeMap<String, usize>,
    pub(crate) edges: Vec<Edge>,
    pub(crate) out: Vec<Vec<EdgeId>>,
    pub(crate) lookup: BTreeMap<(usize, usize), EdgeId>,
    pub(crate) connection: Option<Connection>,
}

impl GkmGraph {
    /// Builds a graph from its vertices and oriented edges `(src, dst, α)`.
    /// Every edge must have its reverse in the list. The axial values are not
    /// checked here beyond their rank; see [`crate::gkm::validate_graph`].
    pub fn new(rank: usize, vertices: Vec<String>, edges: Vec<(String, String, Weight)>) -> Result<Self> {
        let mut sorted = vertices;
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Malformed(format!("duplicate vertex `{}`", w[0])));
            }
        }
        let index: BTreeMap<String, usize> = sorted.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut raw: BTreeMap<(usize, usize), Weight> = BTreeMap::new();
        for (s, d, alpha) in edges {
            let si = *index.get(&s).ok_or_else(|| Error::UnknownVertex(s.clone()))?;
            let di = *index.get(&d).ok_or_else(|| Error::UnknownVertex(d.clone()))?;
            if si == di {
                return Err(Error::Malformed(format!("loop at vertex `{s}`")));
            }
            if alpha.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: alpha.rank() });
            }
            if raw.insert((si, di), alpha).is_some() {
                return Err(Error::Malformed(format!("duplicate edge ({s}, {d})")));
            }
        }
        let lookup: BTreeMap<(usize, usize), EdgeId> = raw.keys().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut edges = Vec::with_capacity(raw.len());
        let mut out = vec![Vec::new(); sorted.len()];
        for (&(s, d), alpha) in &raw {
            let reverse = *lookup.get(&(d, s)).ok_or_else(|| {
                Error::Malformed(format!("edge ({}, {}) has no reverse edge", sorted[s], sorted[d]))
            })?;
            out[s].push(edges.len());
            edges.push(Edge { src: s, dst: d, alpha: alpha.clone(), reverse });
        }
        Ok(GkmGraph { rank, vertices: sorted, index, edges, out, lookup, connection: None })
    }

    /// Attaches a connection given by `(e, e', ∇_e(e'))` triples of vertex
    /// pairs.
    pub fn with_connection_entries(
        mut self,
        entries: &[((String, String), (String, String), (String, String))],
    ) -> Result<Self> {
        let mut conn = Connection::empty(&self);
        for (e, from, to) in entries {
            let e = self.edge_by_names(&e.0, &e.1)?;
            let from = self.edge_by_names(&from.0, &from.1)?;
            let to = self.edge_by_names(&to.0, &to.1)?;
            conn.set(&self, e, from, to)?;
        }
        self.connection = Some(conn);
        Ok(self)
    }

    /// Attaches the connection computed by `f(graph, e, e')`.
    pub fn with_connection_fn(mut self, f: impl Fn(&GkmGraph, EdgeId, EdgeId) -> EdgeId) -> Result<Self> {
        let mut conn = Connection::empty(&self);
        for e in 0..self.edges.len() {
            for &from in &self.out[self.edges[e].src] {
                let to = f(&self, e, from);
                conn.set(&self, e, from, to)?;
            }
        }
        self.connection = Some(conn);
        Ok(self)
    }

    pub fn with_connection(mut self, conn: Connection) -> Self {
        self.connection = Some(conn);
        self
    }

    pub fn without_connection(mut self) -> Self {
        self.connection = None;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require_vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Out-edges at vertex `v`, ordered by target vertex.
    pub fn out_edges(&self, v: usize) -> &[EdgeId] {
        &self.out[v]
    }

    pub(crate) fn out_position(&self, e: EdgeId) -> Option<usize> {
        let edge = self.edges.get(e)?;
        self.out[edge.src].iter().position(|&x| x == e)
    }

    pub fn edge_between(&self, p: usize, q: usize) -> Option<EdgeId> {
        self.lookup.get(&(p, q)).copied()
    }

    pub fn edge_by_names(&self, p: &str, q: &str) -> Result<EdgeId> {
        let (pi, qi) = (self.require_vertex(p)?, self.require_vertex(q)?);
        self.edge_between(pi, qi).ok_or_else(|| Error::Malformed(format!("no edge ({p}, {q})")))
    }

    pub fn alpha(&self, e: EdgeId) -> &Weight {
        &self.edges[e].alpha
    }

    pub fn edge_label(&self, e: EdgeId) -> String {
        let edge = &self.edges[e];
        format!("({}, {})", self.vertices[edge.src], self.vertices[edge.dst])
    }

    pub(crate) fn edge_names(&self, e: EdgeId) -> (String, String) {
        let edge = &self.edges[e];
        (self.vertices[edge.src].clone(), self.vertices[edge.dst].clone())
    }

    /// Common out-degree, if the graph is regular.
    pub fn valence(&self) -> Option<usize> {
        let d = self.out.first().map_or(0, Vec::len);
        self.out.iter().all(|o| o.len() == d).then_some(d)
    }

    pub fn connection(&self) -> Option<&Connection> {
        self.connection.as_ref()
    }

    /// `∇_e(e')` for the attached connection.
    pub fn nabla(&self, e: EdgeId, from: EdgeId) -> Option<EdgeId> {
        self.connection.as_ref()?.get(self, e, from)
    }

    /// Returns this graph with a connection attached, inferring one by search
    /// if none is present.
    pub fn ensure_connection(self) -> Result<Self> {
        if self.connection.as_ref().is_some_and(Connection::is_complete) {
            return Ok(self);
        }
        let search = super::search_connection(&self);
        match search.connection {
            Some(conn) => Ok(self.with_connection(conn)),
            None => Err(Error::InvalidGraph(
                search.failure.unwrap_or_else(|| "no compatible connection exists".into()),
            )),
        }
    }

    /// Whether the graph is connected.
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.out[v] {
                let w = self.edges[e].dst;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}
