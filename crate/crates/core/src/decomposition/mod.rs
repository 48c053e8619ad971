//! Tree and path decompositions.
//!
//! Bags are sorted vertex lists. Tree decompositions index their bags by the
//! vertices of `tree`; path decompositions are plain bag sequences whose
//! empty bags are ignored by the verifiers.

mod ops;
mod tree_pw;

use thiserror::Error;

use crate::error::{bail, Check, Violation};
use crate::graph::{Graph, Induced, Layering, Vertex};

pub use ops::{
    ball_restriction, blowup, combine_subtrees, goodness, GoodnessReport, LocalDecomposition,
    SubtreePart,
};
pub use tree_pw::tree_pathwidth;
pub(crate) use ops::blowup_unchecked;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("invalid decomposition: {0}")]
    Invalid(Violation),
    #[error("expected a forest, found a cycle through vertex {0}")]
    NotAForest(Vertex),
    #[error("vertex {0} is in no bag")]
    VertexInNoBag(Vertex),
    #[error("vertex {0} is not covered by the layering")]
    NotLayered(Vertex),
    #[error("invalid subtree cover: {0}")]
    BadCover(String),
}

impl From<Violation> for DecompositionError {
    fn from(v: Violation) -> Self {
        DecompositionError::Invalid(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<Vertex>>,
}

fn normalize(mut bags: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    for b in bags.iter_mut() {
        b.sort_unstable();
        b.dedup();
    }
    bags
}

fn max_bag(bags: &[Vec<Vertex>]) -> usize {
    bags.iter().map(Vec::len).max().unwrap_or(0)
}

impl TreeDecomposition {
    /// Sorts and deduplicates every bag.
    pub fn new(tree: Graph, bags: Vec<Vec<Vertex>>) -> Self {
        TreeDecomposition {
            tree,
            bags: normalize(bags),
        }
    }

    /// The decomposition with one node holding every vertex of `g`.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            tree: Graph::new(1),
            bags: vec![g.vertices().collect()],
        }
    }

    pub fn width(&self) -> usize {
        max_bag(&self.bags).saturating_sub(1)
    }

    /// Nodes whose bags contain `v`, in increasing order.
    pub fn nodes_of(&self, v: Vertex) -> Vec<usize> {
        (0..self.bags.len())
            .filter(|&x| self.bags[x].binary_search(&v).is_ok())
            .collect()
    }

    /// Viewed as a path decomposition, when the tree is a path.
    pub fn as_path(&self) -> Option<PathDecomposition> {
        let t = &self.tree;
        if !t.is_tree() || t.vertices().any(|x| t.degree(x) > 2) {
            return None;
        }
        let start = t.vertices().find(|&x| t.degree(x) <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        while let Some(&next) = t
            .neighbors(*order.last().unwrap())
            .iter()
            .find(|&&y| y != prev)
        {
            prev = *order.last().unwrap();
            order.push(next);
        }
        Some(PathDecomposition {
            bags: order.into_iter().map(|x| self.bags[x].clone()).collect(),
        })
    }
}

impl PathDecomposition {
    /// Sorts and deduplicates every bag.
    pub fn new(bags: Vec<Vec<Vertex>>) -> Self {
        PathDecomposition {
            bags: normalize(bags),
        }
    }

    pub fn width(&self) -> usize {
        max_bag(&self.bags).saturating_sub(1)
    }

    pub fn max_bag_size(&self) -> usize {
        max_bag(&self.bags)
    }

    /// The same bags indexed by a path, empty bags dropped.
    pub fn to_tree(&self) -> TreeDecomposition {
        let bags: Vec<Vec<Vertex>> = self.bags.iter().filter(|b| !b.is_empty()).cloned().collect();
        let tree = Graph::from_edges(bags.len(), (1..bags.len()).map(|i| (i - 1, i))).unwrap();
        TreeDecomposition { tree, bags }
    }

    /// Each bag intersected with `keep` (a sorted vertex list); empty results
    /// are dropped.
    pub fn restrict(&self, keep: &[Vertex]) -> PathDecomposition {
        PathDecomposition {
            bags: self
                .bags
                .iter()
                .map(|b| {
                    b.iter()
                        .copied()
                        .filter(|v| keep.binary_search(v).is_ok())
                        .collect::<Vec<_>>()
                })
                .filter(|b| !b.is_empty())
                .collect(),
        }
    }
}

/// Checks conditions (i) and (ii) for `td` as a tree decomposition of `g`.
pub fn verify_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> Check {
    let all: Vec<Vertex> = g.vertices().collect();
    check(g, &all, &td.tree, &td.bags)
}

/// Checks `pd` as a path decomposition of `g`. Empty bags are skipped.
pub fn verify_path_decomposition(g: &Graph, pd: &PathDecomposition) -> Check {
    verify_tree_decomposition(g, &pd.to_tree())
}

/// Checks `td` as a tree decomposition of the subgraph of `g` induced by the
/// sorted vertex list `vertices`, without relabelling.
pub fn verify_tree_decomposition_induced(
    g: &Graph,
    vertices: &[Vertex],
    td: &TreeDecomposition,
) -> Check {
    check(g, vertices, &td.tree, &td.bags)
}

/// Path counterpart of [`verify_tree_decomposition_induced`].
pub fn verify_path_decomposition_induced(
    g: &Graph,
    vertices: &[Vertex],
    pd: &PathDecomposition,
) -> Check {
    let td = pd.to_tree();
    check(g, vertices, &td.tree, &td.bags)
}

fn check(g: &Graph, vertices: &[Vertex], tree: &Graph, bags: &[Vec<Vertex>]) -> Check {
    if bags.len() != tree.n() {
        bail!(
            "{} bags for a tree with {} nodes",
            bags.len(),
            tree.n()
        );
    }
    if !vertices.is_empty() && !tree.is_tree() {
        bail!("the decomposition is not indexed by a tree");
    }
    let inside = |v: Vertex| vertices.binary_search(&v).is_ok();
    let mut nodes: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (x, bag) in bags.iter().enumerate() {
        for (i, &v) in bag.iter().enumerate() {
            if i > 0 && bag[i - 1] >= v {
                bail!("bag {x} is not a sorted set");
            }
            if v >= g.n() || !inside(v) {
                bail!("bag {x} contains {v}, which is not a vertex of the graph");
            }
            nodes[v].push(x);
        }
    }
    for &v in vertices {
        let xs = &nodes[v];
        if xs.is_empty() {
            bail!("vertex {v} is in no bag");
        }
        let inner = xs
            .iter()
            .map(|&x| {
                tree.neighbors(x)
                    .iter()
                    .filter(|&&y| y > x && xs.binary_search(&y).is_ok())
                    .count()
            })
            .sum::<usize>();
        if inner + 1 != xs.len() {
            bail!("the bags containing vertex {v} do not induce a connected subtree");
        }
    }
    for &u in vertices {
        for &v in g.neighbors(u) {
            if v <= u || !inside(v) {
                continue;
            }
            let covered = nodes[u].iter().any(|&x| bags[x].binary_search(&v).is_ok());
            if !covered {
                bail!("edge {u}-{v} is in no bag");
            }
        }
    }
    Ok(())
}

/// Maximum over bags `B` and layers `V_i` of `|B ∩ V_i|`.
pub fn layered_width(pd: &PathDecomposition, layering: &Layering) -> Result<usize, DecompositionError> {
    let mut best = 0;
    let mut count = vec![0usize; layering.len()];
    for bag in &pd.bags {
        for &v in bag {
            let i = layering
                .layer_of(v)
                .ok_or(DecompositionError::NotLayered(v))?;
            count[i] += 1;
            best = best.max(count[i]);
        }
        for &v in bag {
            count[layering.layer_of(v).unwrap()] = 0;
        }
    }
    Ok(best)
}

/// The subtree `T[v]` of nodes whose bags contain `v`.
pub fn subtree_of(td: &TreeDecomposition, v: Vertex) -> Result<Induced, DecompositionError> {
    let nodes = td.nodes_of(v);
    if nodes.is_empty() {
        return Err(DecompositionError::VertexInNoBag(v));
    }
    Ok(td.tree.induced(&nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bfs_layering, generators};

    /// Bag `{x, parent(x)}` at every node of a tree rooted at 0.
    pub(crate) fn rooted_tree_decomposition(t: &Graph) -> TreeDecomposition {
        let dist = t.distances(0);
        let bags = t
            .vertices()
            .map(|x| {
                let parent = t
                    .neighbors(x)
                    .iter()
                    .find(|&&y| dist[y] < dist[x])
                    .copied();
                parent.into_iter().chain([x]).collect()
            })
            .collect();
        TreeDecomposition::new(t.clone(), bags)
    }

    #[test]
    fn rooted_tree_decomposition_is_valid() {
        let t = generators::random_tree(40, 9).unwrap();
        let td = rooted_tree_decomposition(&t);
        assert!(verify_tree_decomposition(&t, &td).is_ok());
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn detects_uncovered_edge() {
        let g = generators::cycle(4).unwrap();
        let pd = PathDecomposition::new(vec![vec![0, 1, 2], vec![2, 3]]);
        let err = verify_path_decomposition(&g, &pd).unwrap_err();
        assert_eq!(err.message(), "edge 0-3 is in no bag");
    }

    #[test]
    fn detects_disconnected_occurrence() {
        let g = generators::path(3).unwrap();
        let pd = PathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![0]]);
        let err = verify_path_decomposition(&g, &pd).unwrap_err();
        assert!(err.message().contains("vertex 0"), "{err}");
    }

    #[test]
    fn detects_foreign_vertices_and_missing_vertices() {
        let g = generators::path(2).unwrap();
        let pd = PathDecomposition::new(vec![vec![0, 1, 5]]);
        assert!(verify_path_decomposition(&g, &pd).is_err());
        let pd = PathDecomposition::new(vec![vec![0]]);
        assert_eq!(
            verify_path_decomposition(&g, &pd).unwrap_err().message(),
            "vertex 1 is in no bag"
        );
    }

    #[test]
    fn empty_bags_are_ignored() {
        let g = generators::path(3).unwrap();
        let pd = PathDecomposition::new(vec![vec![0, 1], vec![], vec![1, 2]]);
        assert!(verify_path_decomposition(&g, &pd).is_ok());
    }

    #[test]
    fn rejects_cyclic_index() {
        let g = generators::path(2).unwrap();
        let tree = generators::cycle(3).unwrap();
        let td = TreeDecomposition::new(tree, vec![vec![0, 1]; 3]);
        assert!(verify_tree_decomposition(&g, &td).is_err());
    }

    #[test]
    fn induced_variant_ignores_outside_edges() {
        let g = generators::cycle(5).unwrap();
        let pd = PathDecomposition::new(vec![vec![0, 1], vec![1, 2]]);
        assert!(verify_path_decomposition_induced(&g, &[0, 1, 2], &pd).is_ok());
        assert!(verify_path_decomposition(&g, &pd).is_err());
    }

    #[test]
    fn widths() {
        let pd = PathDecomposition::new(vec![vec![0, 1, 2, 3]]);
        assert_eq!(pd.width(), 3);
        let g = generators::path(6).unwrap();
        let pd = PathDecomposition::new((1..6).map(|i| vec![i - 1, i]).collect());
        let l = bfs_layering(&g, 0).unwrap();
        assert_eq!(layered_width(&pd, &l).unwrap(), 1);
    }

    #[test]
    fn grid_column_sweep_has_layered_width_two() {
        let (r, c) = (4, 6);
        let g = generators::grid(r, c).unwrap();
        let rows: Vec<Vec<Vertex>> = (0..r).map(|i| (0..c).map(|j| i * c + j).collect()).collect();
        let l = Layering::from_layers(&g, rows).unwrap();
        let pd = PathDecomposition::new(
            (1..c)
                .map(|j| (0..r).flat_map(|i| [i * c + j - 1, i * c + j]).collect())
                .collect(),
        );
        assert!(verify_path_decomposition(&g, &pd).is_ok());
        assert_eq!(layered_width(&pd, &l).unwrap(), 2);
    }

    #[test]
    fn layered_width_requires_cover() {
        let g = generators::path(2).unwrap();
        let l = Layering::single_layer(&generators::path(1).unwrap());
        let pd = PathDecomposition::new(vec![vec![0, 1]]);
        assert_eq!(
            layered_width(&pd, &l),
            Err(DecompositionError::NotLayered(1))
        );
        let _ = g;
    }

    #[test]
    fn subtree_of_rooted_tree_vertex_is_star() {
        let t = generators::complete_binary_tree(3).unwrap();
        let td = rooted_tree_decomposition(&t);
        let sub = subtree_of(&td, 1).unwrap();
        // node 1 and its children 3, 4
        assert_eq!(sub.to_host, vec![1, 3, 4]);
        assert_eq!(sub.graph.degree(0), 2);
        let leaf = subtree_of(&td, 7).unwrap();
        assert_eq!(leaf.to_host, vec![7]);
        assert!(subtree_of(&td, 99).is_err());
    }

    #[test]
    fn as_path_round_trips() {
        let pd = PathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(pd.to_tree().as_path().unwrap(), pd);
    }
}
