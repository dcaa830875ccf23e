//! Trace functions, shadows and sparse Kruskal-Katona bounds for finite set systems.
//!
//! The crate is organized bottom-up:
//!
//! - [`hypergraph`]: the immutable [`Hypergraph`] type with traces, induced
//!   subgraphs, links, shadows and closures.
//! - [`binomials`]: real-argument binomial coefficients and the scalar
//!   inequalities used by the bounds.
//! - [`decompose`]: regularization, heavy links and the sparse shadow bounds.
//! - [`construct`]: the two randomized extremal constructions.
//! - [`oracle`]: independent brute-force reimplementations and the named
//!   property suites.

pub mod error;
pub mod hypergraph;
pub mod sampling;
pub mod binomials;
pub mod decompose;
pub mod construct;
pub mod oracle;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, VertexSet, VertexTuple};
