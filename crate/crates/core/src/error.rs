use thiserror::Error;

/// Errors raised by the library. Validation failures of graphs and bundles are
/// not errors; they are reported as findings in a [`crate::gkm::ValidationReport`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("the zero weight is not allowed here")]
    ZeroWeight,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("lattice map is not unimodular")]
    NotUnimodular,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("not an equivariant class: condition fails on edge ({0}, {1})")]
    NotAClass(String, String),

    #[error("carrier or theory mismatch: {0}")]
    CarrierMismatch(String),

    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    #[error("class is not holonomy invariant: fails along loop {0:?}")]
    NotInvariant(Vec<String>),

    #[error("restrictions do not form a basis of the fiber ring over `{0}`")]
    NotABasis(String),

    #[error("coefficient is not a ring element: {0}")]
    NotInRing(String),

    #[error("invalid isomorphism: {0}")]
    InvalidIso(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
