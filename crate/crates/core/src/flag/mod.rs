//! Root systems, Weyl groups and the GKM graphs of flag manifolds `G/P`,
//! with the bundles `G/B -> G/P` and invariant bases of their K-rings.

mod basis;
mod graph;
mod roots;
mod weyl;

pub use basis::{
    c_class, c_invariant_class, certify_tower, invariant_basis, is_weyl_invariant, multi_indices, weyl_action_on_class,
    InvariantBasis, MAX_TYPE_C_RANK,
};
pub use graph::{
    build_flag_bundle, build_flag_bundle_with_cap, build_gp_graph, build_gp_graph_with_cap, signed_one_line, CosetGraph,
    FlagBundle,
};
pub use roots::{reflection, RootSystem, RootType};
pub use weyl::{build_weyl_group, build_weyl_group_with_cap, CosetSpace, WeylGroup};
