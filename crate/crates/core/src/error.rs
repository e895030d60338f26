use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid vertex label: {0}")]
    InvalidLabel(String),
    #[error("vertex not in complex: {0}")]
    UnknownVertex(String),
    #[error("facet {0} is contained in another facet")]
    NonMaximalFacet(String),
    #[error("duplicate vertex {0} in one face")]
    DuplicateVertex(String),
    #[error("complex is not pure")]
    NotPure,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a facet of the complex: {0}")]
    NotAFacet(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("dual graph is disconnected")]
    DisconnectedDualGraph,
    #[error("invalid facet system: {0}")]
    InvalidFacetSystem(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
