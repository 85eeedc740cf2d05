use thiserror::Error;

/// Errors raised by the engine. Each variant has a stable kebab-case
/// [`Error::kind`] so front ends can emit machine-parsable diagnostics.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("schema violation at `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("route count exceeds cap {cap}")]
    RouteExplosion { cap: usize },
    #[error("path count exceeds cap {cap}")]
    PathExplosion { cap: usize },
    #[error("element count exceeds cap {cap}")]
    ElementExplosion { cap: usize },
    #[error("poset size {size} exceeds isomorphism cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("structural failure: {0}")]
    Structural(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "invalid-graph",
            Error::Schema { .. } => "schema",
            Error::RouteExplosion { .. } => "route-explosion",
            Error::PathExplosion { .. } => "path-explosion",
            Error::ElementExplosion { .. } => "element-explosion",
            Error::SizeCap { .. } => "size-cap",
            Error::Precondition(_) => "precondition",
            Error::Structural(_) => "structural",
        }
    }

    pub fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Enumeration caps. Exceeding any of them is a hard error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_routes: usize,
    pub max_paths: usize,
    pub max_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_routes: 20_000,
            max_paths: 1_000_000,
            max_elements: 100_000,
        }
    }
}
