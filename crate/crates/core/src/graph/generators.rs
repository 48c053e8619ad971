//! Deterministic generators for the graph families used in tests and fixtures.
//!
//! Id conventions:
//! * trees are rooted at 0; complete binary trees use heap order (children of
//!   `i` are `2i+1` and `2i+2`);
//! * `q_graph` / `t_plus` put the extra vertex last (`2^{h+1} - 1`);
//! * `grid(r, c)` numbers row-major, vertex `(i, j)` is `i * c + j`;
//! * polygon-based families (`cycle`, `random_outerplanar`) list the boundary
//!   in id order.
//!
//! Randomized families take an explicit seed and use ChaCha8, so the same
//! `(family, parameters, seed)` always yields the same graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError, Vertex};

const MAX_HEIGHT: u32 = 22;

/// A graph family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBinaryTree(u32),
    QGraph(u32),
    TPlus(u32),
    Grid(usize, usize),
    RandomTree { n: usize, seed: u64 },
    RandomOuterplanar { n: usize, seed: u64 },
    RandomSeriesParallel { n: usize, seed: u64 },
    Halin { n: usize, seed: u64 },
}

impl Family {
    /// Family names accepted by [`Family::from_name`].
    pub const NAMES: &'static [&'static str] = &[
        "path",
        "cycle",
        "complete",
        "cbt",
        "qk",
        "tplus",
        "grid",
        "tree",
        "outerplanar",
        "sp",
        "halin",
    ];

    pub fn from_name(name: &str, params: &[u64], seed: Option<u64>) -> Result<Self, GraphError> {
        let family: &'static str = Self::NAMES
            .iter()
            .find(|&&n| n == name)
            .ok_or_else(|| GraphError::BadParameter {
                family: "gen",
                reason: format!("unknown family {name:?}"),
            })?;
        let arity = if family == "grid" { 2 } else { 1 };
        if params.len() != arity {
            return Err(bad(
                family,
                format!("expects {arity} parameter(s), got {}", params.len()),
            ));
        }
        let randomized = matches!(family, "tree" | "outerplanar" | "sp" | "halin");
        let seed = match (randomized, seed) {
            (true, None) => return Err(bad(family, "randomized family requires a seed".into())),
            (false, Some(_)) => {
                return Err(bad(family, "deterministic family takes no seed".into()))
            }
            (_, s) => s.unwrap_or(0),
        };
        let p = params[0] as usize;
        let h = u32::try_from(params[0]).map_err(|_| bad(family, "parameter too large".into()))?;
        Ok(match family {
            "path" => Family::Path(p),
            "cycle" => Family::Cycle(p),
            "complete" => Family::Complete(p),
            "cbt" => Family::CompleteBinaryTree(h),
            "qk" => Family::QGraph(h),
            "tplus" => Family::TPlus(h),
            "grid" => Family::Grid(p, params[1] as usize),
            "tree" => Family::RandomTree { n: p, seed },
            "outerplanar" => Family::RandomOuterplanar { n: p, seed },
            "sp" => Family::RandomSeriesParallel { n: p, seed },
            "halin" => Family::Halin { n: p, seed },
            _ => unreachable!(),
        })
    }

    pub fn generate(&self) -> Result<Graph, GraphError> {
        match *self {
            Family::Path(n) => path(n),
            Family::Cycle(n) => cycle(n),
            Family::Complete(n) => complete(n),
            Family::CompleteBinaryTree(h) => complete_binary_tree(h),
            Family::QGraph(k) => q_graph(k),
            Family::TPlus(k) => t_plus(k),
            Family::Grid(r, c) => grid(r, c),
            Family::RandomTree { n, seed } => random_tree(n, seed),
            Family::RandomOuterplanar { n, seed } => random_outerplanar(n, seed),
            Family::RandomSeriesParallel { n, seed } => random_series_parallel(n, seed),
            Family::Halin { n, seed } => halin(seed, n),
        }
    }
}

fn bad(family: &'static str, reason: String) -> GraphError {
    GraphError::BadParameter { family, reason }
}

fn edges_to_graph(n: usize, mut edges: Vec<(Vertex, Vertex)>) -> Graph {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
    Graph::from_edges(n, edges).expect("generator produced an invalid edge")
}

pub(crate) fn cbt_size(h: u32) -> usize {
    (1usize << (h + 1)) - 1
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(bad("path", "needs n >= 1".into()));
    }
    Ok(edges_to_graph(n, (1..n).map(|i| (i - 1, i)).collect()))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(bad("cycle", "needs n >= 3".into()));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Ok(edges_to_graph(n, edges))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 || n > 2000 {
        return Err(bad("complete", "needs 1 <= n <= 2000".into()));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(edges_to_graph(n, edges))
}

/// `T_h`: `2^{h+1} - 1` vertices in heap order.
pub fn complete_binary_tree(h: u32) -> Result<Graph, GraphError> {
    if h > MAX_HEIGHT {
        return Err(bad("cbt", format!("height must be at most {MAX_HEIGHT}")));
    }
    let n = cbt_size(h);
    Ok(edges_to_graph(n, (1..n).map(|i| ((i - 1) / 2, i)).collect()))
}

/// `Q_k`: `T_k` plus a dominant vertex with id `2^{k+1} - 1`.
pub fn q_graph(k: u32) -> Result<Graph, GraphError> {
    let mut g = complete_binary_tree(k).map_err(|_| bad("qk", "k too large".into()))?;
    let apex = g.add_vertex();
    for v in 0..apex {
        g.add_edge(v, apex).unwrap();
    }
    Ok(g)
}

/// `T_k^+`: `T_k` plus a vertex adjacent to the `2^k` leaves, with id
/// `2^{k+1} - 1`.
pub fn t_plus(k: u32) -> Result<Graph, GraphError> {
    let mut g = complete_binary_tree(k).map_err(|_| bad("tplus", "k too large".into()))?;
    let apex = g.add_vertex();
    let first_leaf = cbt_size(k) / 2;
    for v in first_leaf..apex {
        g.add_edge(v, apex).unwrap();
    }
    Ok(g)
}

pub fn grid(rows: usize, cols: usize) -> Result<Graph, GraphError> {
    if rows == 0 || cols == 0 {
        return Err(bad("grid", "needs rows, cols >= 1".into()));
    }
    let id = |i: usize, j: usize| i * cols + j;
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    Ok(edges_to_graph(rows * cols, edges))
}

/// Random recursive tree: vertex `i > 0` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(bad("tree", "needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    Ok(edges_to_graph(n, edges))
}

/// Random triangulation of the convex polygon `0..n`, followed by deleting
/// each chord independently with probability 1/2. The boundary cycle is kept,
/// so the result is 2-connected and outerplanar.
pub fn random_outerplanar(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(bad("outerplanar", "needs n >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    let mut pending = vec![(0usize, n - 1)];
    while let Some((a, b)) = pending.pop() {
        if b - a < 2 {
            continue;
        }
        let apex = rng.gen_range(a + 1..b);
        for (x, y) in [(a, apex), (apex, b)] {
            if y - x >= 2 {
                if rng.gen_bool(0.5) {
                    edges.push((x, y));
                }
                pending.push((x, y));
            }
        }
    }
    Ok(edges_to_graph(n, edges))
}

/// Random 2-connected series-parallel graph: start from a triangle and grow by
/// either subdividing a random edge or adding a degree-2 vertex parallel to a
/// random edge, until `n` vertices exist.
pub fn random_series_parallel(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(bad("sp", "needs n >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    for w in 3..n {
        let i = rng.gen_range(0..edges.len());
        let (u, v) = edges[i];
        if rng.gen_bool(0.5) {
            edges.swap_remove(i);
        }
        edges.push((u, w));
        edges.push((v, w));
    }
    Ok(edges_to_graph(n, edges))
}

/// Random Halin graph on `n >= 4` vertices: a random plane tree with no
/// degree-2 vertices, plus a cycle through its leaves in planar order.
pub fn halin(seed: u64, n: usize) -> Result<Graph, GraphError> {
    if n < 4 {
        return Err(bad("halin", "needs n >= 4".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut children: Vec<Vec<Vertex>> = vec![vec![1, 2, 3], vec![], vec![], vec![]];
    while children.len() < n {
        let remaining = n - children.len();
        if remaining >= 2 && rng.gen_bool(0.5) {
            let leaves: Vec<Vertex> = (0..children.len())
                .filter(|&v| children[v].is_empty())
                .collect();
            let leaf = *leaves.choose(&mut rng).unwrap();
            let a = children.len();
            children.extend([vec![], vec![]]);
            children[leaf] = vec![a, a + 1];
        } else {
            let internal: Vec<Vertex> = (0..children.len())
                .filter(|&v| !children[v].is_empty())
                .collect();
            let parent = *internal.choose(&mut rng).unwrap();
            let new = children.len();
            children.push(vec![]);
            let pos = rng.gen_range(0..=children[parent].len());
            children[parent].insert(pos, new);
        }
    }
    let mut edges = Vec::new();
    let mut leaves = Vec::new();
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        if children[v].is_empty() {
            leaves.push(v);
        }
        for &c in children[v].iter().rev() {
            edges.push((v, c));
            stack.push(c);
        }
    }
    for i in 0..leaves.len() {
        edges.push((leaves[i], leaves[(i + 1) % leaves.len()]));
    }
    Ok(edges_to_graph(n, edges))
}
