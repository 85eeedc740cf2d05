//! Framing lattices of framed flow graphs.
//!
//! A framed graph determines a triangulation of its flow polytope whose facets
//! are maximal cliques of pairwise coherent routes. Ordering facets by
//! counterclockwise rotation gives a lattice; this crate enumerates it and
//! computes joins, meets, irreducibles, labelings and quotients.

pub mod cliques;
pub mod constructors;
pub mod cross_tamari;
pub mod error;
pub mod graph;
pub mod labels;
pub mod lattice;
pub mod oracle;
pub mod order;
pub mod paths;
pub mod quotients;

pub use error::{Error, Limits, Result};
pub use graph::{EdgeId, FramedGraph, VertexId};
pub use paths::Path;
