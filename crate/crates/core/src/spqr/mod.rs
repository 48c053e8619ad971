//! SPQR trees of 2-connected graphs.
//!
//! Construction splits recursively at 2-cutsets `{x, y}` whose endpoints both
//! have degree at least 3, choosing the lexicographically smallest such pair.
//! Each split creates a P-node and one piece per component of `G - {x, y}`;
//! every piece gets a placeholder edge `xy` that ends up as a virtual edge in
//! exactly one node of the piece's subtree, paired with the P-node. Cycles
//! become S-nodes and 3-connected pieces become R-nodes.
//!
//! Skeleton vertices keep their host ids.

mod build;
mod verify;

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Subgraph, Vertex};

pub use build::build_spqr;
pub use verify::verify_spqr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    S,
    P,
    R,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::S => "S",
            NodeKind::P => "P",
            NodeKind::R => "R",
        })
    }
}

/// A virtual edge `uv` paired with the tree neighbour `partner`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VirtualEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub partner: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub kind: NodeKind,
    /// Sorted host vertex ids.
    pub vertices: Vec<Vertex>,
    /// Pairs `(u, v)` with `u < v`.
    pub real_edges: Vec<(Vertex, Vertex)>,
    pub virtual_edges: Vec<VirtualEdge>,
}

impl Skeleton {
    /// The skeleton with virtual edges treated as ordinary edges and parallel
    /// copies merged, on local ids `0..vertices.len()`.
    pub fn simple_graph(&self) -> Graph {
        let local = |v: Vertex| self.vertices.binary_search(&v).expect("edge endpoint in skeleton");
        let mut g = Graph::new(self.vertices.len());
        let pairs = self
            .real_edges
            .iter()
            .copied()
            .chain(self.virtual_edges.iter().map(|e| (e.u, e.v)));
        for (u, v) in pairs {
            g.ensure_edge(local(u), local(v)).expect("skeleton edges are proper");
        }
        g
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpqrTree {
    /// Vertex count of the decomposed graph.
    pub n: usize,
    pub tree: Graph,
    pub skeletons: Vec<Skeleton>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpqrError {
    #[error("an SPQR tree needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("graph is not connected: vertex {0} is unreachable from 0")]
    Disconnected(Vertex),
    #[error("graph is not 2-connected: {0} is a cut vertex")]
    CutVertex(Vertex),
    #[error("piece on vertices {0:?} has a 2-cutset but none with both endpoints of degree >= 3")]
    NoValidCutset(Vec<Vertex>),
    #[error("internal split error: {0}")]
    Internal(String),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("invalid node set: {0}")]
    BadNodeSet(String),
}

/// Nodes whose skeletons contain `v`: the vertex set of `S[v]`.
pub fn induced_subtree(s: &SpqrTree, v: Vertex) -> Result<Vec<usize>, SpqrError> {
    if v >= s.n {
        return Err(SpqrError::UnknownVertex(v));
    }
    Ok((0..s.skeletons.len())
        .filter(|&a| s.skeletons[a].contains(v))
        .collect())
}

/// `G[S']` for a connected node set `S'`: the union of the skeleton vertex
/// sets together with the union of the real edges.
pub fn realize(s: &SpqrTree, nodes: &[usize]) -> Result<Subgraph, SpqrError> {
    if let Some(&a) = nodes.iter().find(|&&a| a >= s.skeletons.len()) {
        return Err(SpqrError::BadNodeSet(format!("no node {a}")));
    }
    if !s.tree.induces_connected(nodes) {
        return Err(SpqrError::BadNodeSet(
            "nodes do not induce a connected subtree".into(),
        ));
    }
    Ok(realize_unchecked(s, nodes))
}

pub(crate) fn realize_unchecked(s: &SpqrTree, nodes: &[usize]) -> Subgraph {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for &a in nodes {
        vertices.extend_from_slice(&s.skeletons[a].vertices);
        edges.extend_from_slice(&s.skeletons[a].real_edges);
    }
    vertices.sort_unstable();
    vertices.dedup();
    edges.sort_unstable();
    Subgraph { vertices, edges }
}
