//! Tree decompositions with bounded per-vertex subtree pathwidth, and the
//! layered path decompositions they induce.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`]: simple undirected graphs, layerings, blocks, minor models and
//!   the graph families used throughout (complete binary trees, `Q_k`,
//!   `T_k^+`, random outerplanar / series-parallel / Halin graphs).
//! * [`decomposition`]: tree and path decompositions, their verifiers, exact
//!   pathwidth of trees and the combinators that build path decompositions
//!   out of tree decompositions.
//! * [`spqr`]: SPQR trees of 2-connected graphs built by recursive splitting
//!   at 2-cutsets, plus a validator for their structural properties.
//! * [`pipeline`]: SPQR tree -> good tree decomposition -> layered path
//!   decomposition.
//! * [`oracles`]: brute-force ground truth for small graphs.
//! * [`schema`] and [`dot`]: JSON interchange and Graphviz export.

pub mod corpus;
pub mod decomposition;
pub mod dot;
mod error;
pub mod graph;
pub mod oracles;
pub mod pipeline;
pub mod schema;
pub mod spqr;

pub use error::{Check, Violation};
pub use graph::{Graph, GraphError, Vertex};
