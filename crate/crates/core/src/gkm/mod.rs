//! GKM graphs, the axioms they must satisfy, and equivariant classes on them.

mod class;
mod graph;
mod iso;
mod validate;

pub use class::{class_ring_ops, is_equivariant_class, ClassOp, ClassReport, EquivariantClass, Theory};
pub use graph::{Connection, Edge, EdgeId, GkmGraph};
pub use iso::{apply_graph_iso, GraphIso};
pub use validate::{
    search_connection, validate_graph, Check, ConnectionSearch, Finding, MEntry, ValidationReport, MAX_SEARCH_VALENCE,
};
