use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported subfield order t = {0} (supported: 2, 3, 4, 5)")]
    UnsupportedSubfield(u32),

    #[error("all-zero coordinates do not define a projective point")]
    ZeroVector,

    #[error("a line needs two distinct points")]
    CoincidentPoints,

    #[error("point {0} is not on the Hermitian surface")]
    NotOnSurface(String),

    #[error("the zero form does not define a quadric")]
    ZeroForm,

    #[error("expected {expected}, got quadric type {found}")]
    WrongQuadricType { expected: &'static str, found: u8 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A cardinality or incidence outside what the geometry allows. Always a
    /// bug in this crate, never bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
