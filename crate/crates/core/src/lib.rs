//! Provably-equivalent small kernels for the (r-)Dominating Set problem on
//! sparse graphs: closure/projection machinery, a win-win approximation
//! with scattered-set certificates, domination-core reduction, kernel
//! construction, exact desk-scale oracles, and instance generators.

pub mod domcore;
pub mod error;
pub mod generators;
pub mod graph;
pub mod kernel;
pub mod oracle;
pub mod orderings;
pub mod projections;
pub mod winwin;

pub use error::{Error, Result};
pub use graph::{DistanceMap, Graph, IdMap, VertexSet};
pub use oracle::ExactResult;
