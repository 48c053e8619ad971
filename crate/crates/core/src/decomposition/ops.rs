use std::collections::BTreeMap;

use super::{
    layered_width, subtree_of, tree_pathwidth, verify_path_decomposition,
    verify_path_decomposition_induced, verify_tree_decomposition, DecompositionError,
    PathDecomposition, TreeDecomposition,
};
use crate::graph::{Graph, Layering, Vertex};

/// Width of a tree decomposition and the worst pathwidth of its subtrees
/// `T[v]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoodnessReport {
    pub width: usize,
    pub subtree_pathwidth: usize,
    /// Smallest vertex whose subtree attains `subtree_pathwidth`; `None` only
    /// for the empty graph.
    pub witness_vertex: Option<Vertex>,
}

/// Path decomposition of `g` from a tree decomposition `td` and a path
/// decomposition `pd_t` of its index tree: bag `i` is the union of the bags
/// `B_x` over `x` in `C_i`.
pub fn blowup(
    g: &Graph,
    td: &TreeDecomposition,
    pd_t: &PathDecomposition,
) -> Result<PathDecomposition, DecompositionError> {
    verify_tree_decomposition(g, td)?;
    verify_path_decomposition(&td.tree, pd_t)?;
    Ok(blowup_unchecked(td, pd_t))
}

pub(crate) fn blowup_unchecked(td: &TreeDecomposition, pd_t: &PathDecomposition) -> PathDecomposition {
    PathDecomposition::new(
        pd_t.bags
            .iter()
            .map(|c| c.iter().flat_map(|&x| td.bags[x].iter().copied()).collect())
            .collect(),
    )
}

/// A connected vertex set of a tree together with a path decomposition of
/// the subtree it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreePart {
    pub nodes: Vec<Vertex>,
    pub pd: PathDecomposition,
}

/// Path decomposition of the tree `t` from path decompositions of subtrees
/// whose union is `t`.
///
/// The first part is the base. Each component `J` of what remains is adjacent
/// to exactly one base vertex `v`; `J`'s decomposition (built recursively
/// from the remaining parts restricted to `J`) is merged into copies of the
/// first base bag containing `v`. Copies for different components sit
/// consecutively, ordered by smallest vertex of the component. Bag size is at
/// most the sum of the parts' bag sizes.
pub fn combine_subtrees(
    t: &Graph,
    parts: &[SubtreePart],
) -> Result<PathDecomposition, DecompositionError> {
    if !t.is_tree() {
        return Err(DecompositionError::BadCover("the host is not a tree".into()));
    }
    let mut covered = vec![false; t.n()];
    let mut sorted_parts = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        let mut nodes = part.nodes.clone();
        nodes.sort_unstable();
        nodes.dedup();
        if let Some(&v) = nodes.iter().find(|&&v| v >= t.n()) {
            return Err(DecompositionError::BadCover(format!(
                "part {i} contains {v}, which is not a node of the tree"
            )));
        }
        if !t.induces_connected(&nodes) {
            return Err(DecompositionError::BadCover(format!(
                "part {i} is not a connected subtree"
            )));
        }
        verify_path_decomposition_induced(t, &nodes, &part.pd).map_err(|e| {
            DecompositionError::BadCover(format!("part {i}: {e}"))
        })?;
        for &v in &nodes {
            covered[v] = true;
        }
        sorted_parts.push(nodes);
    }
    if let Some(v) = covered.iter().position(|c| !c) {
        return Err(DecompositionError::BadCover(format!(
            "node {v} is in no part"
        )));
    }
    for (u, v) in t.edges() {
        let in_some = sorted_parts
            .iter()
            .any(|p| p.binary_search(&u).is_ok() && p.binary_search(&v).is_ok());
        if !in_some {
            return Err(DecompositionError::BadCover(format!(
                "tree edge {u}-{v} is in no part"
            )));
        }
    }
    let work: Vec<(Vec<Vertex>, PathDecomposition)> = sorted_parts
        .into_iter()
        .zip(parts)
        .map(|(nodes, p)| (nodes, p.pd.clone()))
        .collect();
    let region: Vec<Vertex> = t.vertices().collect();
    Ok(PathDecomposition::new(merge(t, &region, work)))
}

/// `region` is sorted and connected; `parts` are restricted to it, nonempty,
/// and cover it.
fn merge(
    t: &Graph,
    region: &[Vertex],
    mut parts: Vec<(Vec<Vertex>, PathDecomposition)>,
) -> Vec<Vec<Vertex>> {
    let (base_nodes, base_pd) = parts.remove(0);
    let mut in_base = vec![false; t.n()];
    for &v in &base_nodes {
        in_base[v] = true;
    }
    let inside = |v: Vertex| region.binary_search(&v).is_ok();

    // Components of region - base, each with its attachment vertex.
    let mut seen = in_base.clone();
    let mut claims: BTreeMap<usize, Vec<Vec<Vec<Vertex>>>> = BTreeMap::new();
    for &s in region {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut attach = None;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for &w in t.neighbors(v) {
                if !inside(w) {
                    continue;
                }
                if in_base[w] {
                    attach = Some(w);
                } else if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        let attach = attach.expect("region is connected");
        let sub_parts: Vec<(Vec<Vertex>, PathDecomposition)> = parts
            .iter()
            .filter_map(|(nodes, pd)| {
                let kept: Vec<Vertex> = nodes
                    .iter()
                    .copied()
                    .filter(|v| comp.binary_search(v).is_ok())
                    .collect();
                (!kept.is_empty()).then(|| {
                    let pd = pd.restrict(&kept);
                    (kept, pd)
                })
            })
            .collect();
        let bags = merge(t, &comp, sub_parts);
        let slot = base_pd
            .bags
            .iter()
            .position(|b| b.binary_search(&attach).is_ok())
            .expect("a valid decomposition covers every vertex");
        claims.entry(slot).or_default().push(bags);
    }

    let mut out = Vec::new();
    for (j, bag) in base_pd.bags.iter().enumerate() {
        match claims.remove(&j) {
            None => out.push(bag.clone()),
            Some(blocks) => {
                for block in blocks {
                    for d in block {
                        let mut b = bag.clone();
                        b.extend(d);
                        out.push(b);
                    }
                }
            }
        }
    }
    out
}

/// Measures `(w, p)`: the width of `td` and the largest pathwidth of a
/// subtree `T[v]`.
pub fn goodness(g: &Graph, td: &TreeDecomposition) -> Result<GoodnessReport, DecompositionError> {
    verify_tree_decomposition(g, td)?;
    let mut report = GoodnessReport {
        width: td.width(),
        subtree_pathwidth: 0,
        witness_vertex: None,
    };
    for v in g.vertices() {
        let sub = subtree_of(td, v)?;
        let (p, _) = tree_pathwidth(&sub.graph)?;
        if report.witness_vertex.is_none() || p > report.subtree_pathwidth {
            report.subtree_pathwidth = p;
            report.witness_vertex = Some(v);
        }
    }
    Ok(report)
}

/// A path decomposition of the ball `G[{u : dist(v, u) <= r}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalDecomposition {
    pub ball: Vec<Vertex>,
    pub pd: PathDecomposition,
    /// `(2r + 1) * layered_width(pd, layering) - 1`, an upper bound on the
    /// width of `pd`.
    pub bound: usize,
}

/// Restricts every bag of `pd` to the radius-`r` ball around `v`.
pub fn ball_restriction(
    g: &Graph,
    pd: &PathDecomposition,
    layering: &Layering,
    v: Vertex,
    r: usize,
) -> Result<LocalDecomposition, DecompositionError> {
    if v >= g.n() {
        return Err(DecompositionError::VertexInNoBag(v));
    }
    let ell = layered_width(pd, layering)?;
    let ball: Vec<Vertex> = g
        .distances(v)
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_some_and(|d| d <= r))
        .map(|(u, _)| u)
        .collect();
    Ok(LocalDecomposition {
        pd: pd.restrict(&ball),
        ball,
        bound: ((2 * r + 1) * ell).saturating_sub(1),
    })
}
