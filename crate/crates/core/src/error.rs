use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("Cartan matrix is not of finite type: root closure exceeded {cap} positive roots")]
    NotFiniteType { cap: usize },

    #[error("Weyl group has more than {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("unrecognized type label `{0}`")]
    BadTypeLabel(String),

    #[error("element does not belong to this Coxeter system")]
    SystemMismatch,

    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("invalid quadruple shadow: {0}")]
    InvalidQuadruple(String),

    #[error("{what} is not a minimal length representative for J = {subset}")]
    NotMinimalRep { what: &'static str, subset: String },

    #[error("subset {inner} is not contained in {outer}")]
    NotSubset { inner: String, outer: String },

    #[error("incompatible stratum kinds: {0}")]
    IncompatibleKinds(String),

    #[error("malformed stratum: {0}")]
    MalformedStratum(String),

    #[error("incomplete partition: {0}")]
    IncompletePartition(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    /// A statement that is a theorem turned out false on a concrete input.
    #[error("falsified: {0}")]
    Falsified(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
