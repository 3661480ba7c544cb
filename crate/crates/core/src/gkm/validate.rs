use std::fmt;

use num_rational::Ratio;

use super::graph::{Connection, EdgeId, GkmGraph};
use crate::algebra::Weight;

/// Largest valence for which a missing connection is searched for.
pub const MAX_SEARCH_VALENCE: usize = 8;

/// The axiom or condition a finding refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Regularity,
    ReversalSign,
    PairwiseIndependence,
    ConnectionMissing,
    ConnectionBijection,
    ConnectionReversal,
    ConnectionInverse,
    Compatibility,
    ConnectionSearch,
    ConnectionAmbiguous,
    Projection,
    BaseGraph,
    TotalGraph,
    HorizontalLift,
    ConnectionPreservesType,
    FiberIsomorphism,
    FiberTransport,
    EdgeIndependentM,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::Regularity => "regularity",
            Check::ReversalSign => "reversal-sign",
            Check::PairwiseIndependence => "pairwise-independence",
            Check::ConnectionMissing => "connection-missing",
            Check::ConnectionBijection => "connection-bijection",
            Check::ConnectionReversal => "connection-reversal",
            Check::ConnectionInverse => "connection-inverse",
            Check::Compatibility => "compatibility",
            Check::ConnectionSearch => "connection-search",
            Check::ConnectionAmbiguous => "connection-ambiguous",
            Check::Projection => "projection",
            Check::BaseGraph => "base-graph",
            Check::TotalGraph => "total-graph",
            Check::HorizontalLift => "condition-1",
            Check::ConnectionPreservesType => "condition-2",
            Check::FiberIsomorphism => "condition-3",
            Check::FiberTransport => "condition-4",
            Check::EdgeIndependentM => "condition-5",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        ALL_CHECKS.iter().copied().find(|c| c.as_str() == s)
    }
}

const ALL_CHECKS: [Check; 18] = [
    Check::Regularity,
    Check::ReversalSign,
    Check::PairwiseIndependence,
    Check::ConnectionMissing,
    Check::ConnectionBijection,
    Check::ConnectionReversal,
    Check::ConnectionInverse,
    Check::Compatibility,
    Check::ConnectionSearch,
    Check::ConnectionAmbiguous,
    Check::Projection,
    Check::BaseGraph,
    Check::TotalGraph,
    Check::HorizontalLift,
    Check::ConnectionPreservesType,
    Check::FiberIsomorphism,
    Check::FiberTransport,
    Check::EdgeIndependentM,
];

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One violated axiom (or, among notes, one remark) with its location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub check: Check,
    pub location: Vec<String>,
    pub message: String,
}

impl Finding {
    pub fn new(check: Check, location: Vec<String>, message: impl Into<String>) -> Self {
        Finding { check, location, message: message.into() }
    }
}

/// An entry `m(e, e') ` of the compatibility table:
/// `α(∇_e e') - α(e') = m · α(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MEntry {
    pub edge: (String, String),
    pub from: (String, String),
    pub to: (String, String),
    pub m: i64,
}

/// Result of [`validate_graph`]. The graph is valid iff `findings` is empty;
/// `notes` carry information that does not invalidate it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
    pub notes: Vec<Finding>,
    pub m_table: Vec<MEntry>,
    pub connection_inferred: bool,
    pub connection_unique: Option<bool>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }

    /// The m-value for the triple `(e, e')` given by vertex names.
    pub fn m_value(&self, edge: (&str, &str), from: (&str, &str)) -> Option<i64> {
        self.m_table
            .iter()
            .find(|m| m.edge.0 == edge.0 && m.edge.1 == edge.1 && m.from.0 == from.0 && m.from.1 == from.1)
            .map(|m| m.m)
    }
}

/// Outcome of searching for a connection compatible with the axial function.
#[derive(Clone, Debug)]
pub struct ConnectionSearch {
    pub connection: Option<Connection>,
    pub unique: bool,
    /// Edges `(p, q)` with `p < q` along which several bijections qualify.
    pub ambiguous_edges: Vec<EdgeId>,
    pub failure: Option<String>,
}

/// Describes `diff / base` for a finding: a reduced fraction if the vectors
/// are parallel, otherwise a statement that no scalar exists.
fn ratio_description(diff: &Weight, base: &Weight) -> String {
    match base.coords().iter().position(|&c| c != 0) {
        Some(p) if diff.is_parallel(base) => {
            let r = Ratio::new(diff.coords()[p], base.coords()[p]);
            format!("ratio {r} is not an integer")
        }
        _ => format!("{diff} is not a multiple of {base}"),
    }
}

/// `m` with `α(to) - α(from) = m α(e)`, if integral.
fn m_value(graph: &GkmGraph, e: EdgeId, from: EdgeId, to: EdgeId) -> Result<i64, String> {
    let diff = graph.alpha(to) - graph.alpha(from);
    let base = graph.alpha(e);
    if base.is_zero() {
        return if diff.is_zero() { Ok(0) } else { Err(format!("{diff} is not a multiple of the zero weight")) };
    }
    diff.integer_multiple_of(base).ok_or_else(|| ratio_description(&diff, base))
}

/// Searches, per edge, for bijections `E_p -> E_q` compatible with the axial
/// function and sending `e` to its reverse. The first bijection in
/// lexicographic order of target positions is chosen along `(p, q)` with
/// `p < q`, and its inverse is used along `(q, p)`.
pub fn search_connection(graph: &GkmGraph) -> ConnectionSearch {
    let fail = |msg: String| ConnectionSearch { connection: None, unique: false, ambiguous_edges: vec![], failure: Some(msg) };
    let Some(d) = graph.valence() else {
        return fail("graph is not regular".into());
    };
    if d > MAX_SEARCH_VALENCE {
        return fail(format!("valence {d} exceeds the search limit {MAX_SEARCH_VALENCE}"));
    }
    let mut conn = Connection::empty(graph);
    let mut ambiguous = Vec::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        if edge.src > edge.dst {
            continue;
        }
        let from_star = graph.out_edges(edge.src);
        let to_star = graph.out_edges(edge.dst);
        let candidates: Vec<Vec<usize>> = from_star
            .iter()
            .map(|&f| {
                (0..to_star.len())
                    .filter(|&k| {
                        let t = to_star[k];
                        if f == e {
                            t == edge.reverse
                        } else {
                            t != edge.reverse && m_value(graph, e, f, t).is_ok()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut solutions = Vec::new();
        let mut current = Vec::with_capacity(d);
        let mut used = vec![false; d];
        backtrack(&candidates, &mut current, &mut used, &mut solutions);
        let Some(first) = solutions.first() else {
            return fail(format!("no compatible bijection along {}", graph.edge_label(e)));
        };
        if solutions.len() > 1 {
            ambiguous.push(e);
        }
        for (i, &k) in first.iter().enumerate() {
            let from = from_star[i];
            let to = to_star[k];
            conn.map[e][i] = Some(to);
            let back_pos = graph.out_position(to).expect("edge in star");
            conn.map[edge.reverse][back_pos] = Some(from);
        }
    }
    ConnectionSearch { connection: Some(conn), unique: ambiguous.is_empty(), ambiguous_edges: ambiguous, failure: None }
}

/// Collects up to two complete injective assignments.
fn backtrack(candidates: &[Vec<usize>], current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if out.len() >= 2 {
        return;
    }
    let i = current.len();
    if i == candidates.len() {
        out.push(current.clone());
        return;
    }
    for &k in &candidates[i] {
        if !used[k] {
            used[k] = true;
            current.push(k);
            backtrack(candidates, current, used, out);
            current.pop();
            used[k] = false;
        }
    }
}

/// Checks the GKM axioms and reports every violation. When the graph has no
/// connection, one is searched for and the report records whether it was
/// unique.
pub fn validate_graph(graph: &GkmGraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    let name = |v: usize| graph.vertex_name(v).to_string();

    let d0 = graph.out_edges(0).len();
    for v in 0..graph.num_vertices() {
        let d = graph.out_edges(v).len();
        if d != d0 {
            report.findings.push(Finding::new(
                Check::Regularity,
                vec![name(v)],
                format!("out-degree {d} differs from {d0} at {}", name(0)),
            ));
        }
    }

    for (e, edge) in graph.edges().iter().enumerate() {
        if edge.src < edge.dst && graph.alpha(edge.reverse) != &-graph.alpha(e) {
            report.findings.push(Finding::new(
                Check::ReversalSign,
                vec![name(edge.src), name(edge.dst)],
                format!("α(e) = {} but α(ē) = {}", graph.alpha(e), graph.alpha(edge.reverse)),
            ));
        }
    }

    for v in 0..graph.num_vertices() {
        let star = graph.out_edges(v);
        for (i, &a) in star.iter().enumerate() {
            for &b in &star[i + 1..] {
                if graph.alpha(a).is_parallel(graph.alpha(b)) {
                    report.findings.push(Finding::new(
                        Check::PairwiseIndependence,
                        vec![name(v), name(graph.edge(a).dst), name(graph.edge(b).dst)],
                        format!("{} and {} are linearly dependent", graph.alpha(a), graph.alpha(b)),
                    ));
                }
            }
        }
    }

    let conn = match graph.connection() {
        Some(c) => c.clone(),
        None => {
            report.connection_inferred = true;
            let search = search_connection(graph);
            report.connection_unique = Some(search.unique);
            for &e in &search.ambiguous_edges {
                let (p, q) = graph.edge_names(e);
                report.notes.push(Finding::new(
                    Check::ConnectionAmbiguous,
                    vec![p, q],
                    "several compatible connections exist; the first in deterministic order was chosen",
                ));
            }
            match search.connection {
                Some(c) => c,
                None => {
                    report.findings.push(Finding::new(
                        Check::ConnectionSearch,
                        vec![],
                        search.failure.unwrap_or_default(),
                    ));
                    return report;
                }
            }
        }
    };

    check_connection(graph, &conn, &mut report);
    report
}

fn check_connection(graph: &GkmGraph, conn: &Connection, report: &mut ValidationReport) {
    let names = |e: EdgeId| graph.edge_names(e);
    let loc = |e: EdgeId, f: EdgeId| {
        let (a, b) = names(e);
        let (c, d) = names(f);
        vec![a, b, c, d]
    };
    for (e, edge) in graph.edges().iter().enumerate() {
        let star = graph.out_edges(edge.src);
        let images: Vec<Option<EdgeId>> = star.iter().map(|&f| conn.get(graph, e, f)).collect();
        if images.iter().any(Option::is_none) {
            let (p, q) = names(e);
            report.findings.push(Finding::new(Check::ConnectionMissing, vec![p, q], "connection entries missing"));
            continue;
        }
        let images: Vec<EdgeId> = images.into_iter().flatten().collect();
        let mut sorted = images.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != images.len() || images.len() != graph.out_edges(edge.dst).len() {
            let (p, q) = names(e);
            report.findings.push(Finding::new(Check::ConnectionBijection, vec![p, q], "∇_e is not a bijection"));
        }
        if conn.get(graph, e, e) != Some(edge.reverse) {
            let (p, q) = names(e);
            report.findings.push(Finding::new(Check::ConnectionReversal, vec![p, q], "∇_e(e) ≠ ē"));
        }
        for (&f, &t) in star.iter().zip(&images) {
            if conn.get(graph, edge.reverse, t) != Some(f) {
                report.findings.push(Finding::new(
                    Check::ConnectionInverse,
                    loc(e, f),
                    format!("∇_ē(∇_e e') ≠ e' for e' = {}", graph.edge_label(f)),
                ));
            }
            match m_value(graph, e, f, t) {
                Ok(m) => report.m_table.push(MEntry { edge: names(e), from: names(f), to: names(t), m }),
                Err(msg) => report.findings.push(Finding::new(Check::Compatibility, loc(e, f), msg)),
            }
        }
    }
}
