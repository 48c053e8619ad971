//! Simple undirected graphs on dense vertex ids `0..n`.

mod blocks;
mod edgelist;
pub mod generators;
mod layering;
mod minor;

use std::collections::VecDeque;

use thiserror::Error;

pub use blocks::{blocks, BlockForest};
pub use edgelist::{parse_edge_list, write_edge_list};
pub use generators::Family;
pub use layering::{bfs_layering, is_layering, Layering};
pub use minor::{find_qk_in_tplus, verify_minor_model, MinorModel};

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(Vertex, Vertex),
    #[error("graph is disconnected: vertex {unreachable} is unreachable from {root}")]
    Disconnected { root: Vertex, unreachable: Vertex },
    #[error("{family}: {reason}")]
    BadParameter { family: &'static str, reason: String },
    #[error("edge list line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// A simple undirected graph. Adjacency lists are kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::ParallelEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    /// Inserts `uv` unless it is already present. Returns whether it was new.
    pub fn ensure_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        match self.add_edge(u, v) {
            Ok(()) => Ok(true),
            Err(GraphError::ParallelEdge(..)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`, relabelled to `0..k` in sorted order.
    pub fn induced(&self, vertices: &[Vertex]) -> Induced {
        let mut to_host = vertices.to_vec();
        to_host.sort_unstable();
        to_host.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in to_host.iter().enumerate() {
            local[v] = i;
        }
        let mut graph = Graph::new(to_host.len());
        for (i, &v) in to_host.iter().enumerate() {
            let row: Vec<Vertex> = self.adj[v]
                .iter()
                .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                .collect();
            graph.m += row.iter().filter(|&&j| j > i).count();
            graph.adj[i] = row;
        }
        Induced { graph, to_host }
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap() + 1;
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.distances(0).iter().all(Option::is_some)
    }

    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m + 1 == self.n() && self.is_connected()
    }

    /// Whether the subgraph induced by `vertices` is connected (and nonempty).
    pub fn induces_connected(&self, vertices: &[Vertex]) -> bool {
        !vertices.is_empty() && self.induced(vertices).graph.is_connected()
    }
}

/// An induced subgraph together with the map back to host ids.
#[derive(Debug, Clone)]
pub struct Induced {
    pub graph: Graph,
    /// `to_host[i]` is the host vertex behind local vertex `i`; sorted.
    pub to_host: Vec<Vertex>,
}

impl Induced {
    pub fn to_local(&self, v: Vertex) -> Option<usize> {
        self.to_host.binary_search(&v).ok()
    }

    pub fn map_to_host(&self, local: &[usize]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = local.iter().map(|&i| self.to_host[i]).collect();
        out.sort_unstable();
        out
    }
}

/// A subgraph given by explicit vertex and edge lists over host ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Subgraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Subgraph {
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let index = |v: Vertex| self.vertices.binary_search(&v).ok();
        let mut uf = UnionFind::new(self.vertices.len());
        for &(u, v) in &self.edges {
            if let (Some(a), Some(b)) = (index(u), index(v)) {
                uf.union(a, b);
            }
        }
        let root = uf.find(0);
        (0..self.vertices.len()).all(|i| uf.find(i) == root)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
