pub mod algebra;
pub mod bundle;
pub mod cli;
mod error;
pub mod flag;
pub mod gkm;
pub mod json;
pub mod kostant;
pub mod projective;
pub mod sampling;

pub use error::{Error, Result};

/// Default bound on the number of elements enumerated when closing a finite
/// group (holonomy groups, Weyl groups).
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;
