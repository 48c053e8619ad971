use super::{realize_unchecked, NodeKind, Skeleton, SpqrTree};
use crate::error::{bail, Check};
use crate::graph::{blocks, Graph};

/// Checks the skeleton-kind invariants, the pairing of virtual edges with
/// tree edges, and the seven structural properties:
///
/// 1. R- and S-nodes are adjacent only to P-nodes; no two P-nodes are adjacent.
/// 2. The degree of every node equals its number of virtual edges.
/// 3. `S[v]` is connected for every vertex `v`.
/// 4. S- and R-skeletons have no parallel edges.
/// 5. A degree-2 P-node whose neighbours are both S-nodes has a real edge.
/// 6. `G[S']` is connected for every component `S'` of `S - a`.
/// 7. Every edge of `g` is real in exactly one node.
pub fn verify_spqr(g: &Graph, s: &SpqrTree) -> Check {
    let k = s.skeletons.len();
    if s.n != g.n() {
        bail!("tree is for {} vertices, graph has {}", s.n, g.n());
    }
    if k == 0 || s.tree.n() != k {
        bail!("{} skeletons for a tree with {} nodes", k, s.tree.n());
    }
    if !s.tree.is_tree() {
        bail!("the SPQR nodes do not form a tree");
    }
    for (a, sk) in s.skeletons.iter().enumerate() {
        check_skeleton(g, a, sk)?;
    }

    // Pairing and property 2.
    for (a, sk) in s.skeletons.iter().enumerate() {
        if s.tree.degree(a) != sk.virtual_edges.len() {
            bail!(
                "property 2: node {a} has degree {} but {} virtual edges",
                s.tree.degree(a),
                sk.virtual_edges.len()
            );
        }
        for e in &sk.virtual_edges {
            let b = e.partner;
            if b >= k || !s.tree.has_edge(a, b) {
                bail!("virtual edge {}-{} of node {a} names {b}, which is not a tree neighbour", e.u, e.v);
            }
            let here = sk.virtual_edges.iter().filter(|f| f.partner == b).count();
            let there: Vec<_> = s.skeletons[b]
                .virtual_edges
                .iter()
                .filter(|f| f.partner == a)
                .collect();
            if here != 1 || there.len() != 1 {
                bail!("tree edge {a}-{b} is not paired with exactly one virtual edge on each side");
            }
            if (there[0].u, there[0].v) != (e.u, e.v) {
                bail!("tree edge {a}-{b} pairs virtual edges over different vertex pairs");
            }
        }
    }

    // Property 1.
    for (a, b) in s.tree.edges() {
        let (ka, kb) = (s.skeletons[a].kind, s.skeletons[b].kind);
        if ka == NodeKind::P && kb == NodeKind::P {
            bail!("property 1: P-nodes {a} and {b} are adjacent");
        }
        if ka != NodeKind::P && kb != NodeKind::P {
            bail!("property 1: {ka}-node {a} is adjacent to {kb}-node {b}");
        }
    }

    // Property 3.
    for v in g.vertices() {
        let nodes: Vec<usize> = (0..k).filter(|&a| s.skeletons[a].contains(v)).collect();
        if !s.tree.induces_connected(&nodes) {
            bail!("property 3: S[{v}] is empty or disconnected");
        }
    }

    // Property 5.
    for (a, sk) in s.skeletons.iter().enumerate() {
        if sk.kind == NodeKind::P
            && s.tree.degree(a) == 2
            && s.tree.neighbors(a).iter().all(|&b| s.skeletons[b].kind == NodeKind::S)
            && sk.real_edges.is_empty()
        {
            bail!("property 5: P-node {a} joins two S-nodes but has no real edge");
        }
    }

    // Property 6.
    for a in 0..k {
        let others: Vec<usize> = (0..k).filter(|&b| b != a).collect();
        let forest = s.tree.induced(&others);
        for comp in forest.graph.components() {
            let nodes = forest.map_to_host(&comp);
            if !realize_unchecked(s, &nodes).is_connected() {
                bail!("property 6: G[S'] is disconnected for a component of S - {a}");
            }
        }
    }

    // Property 7 and realization.
    let mut count = vec![0usize; g.m()];
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for (a, sk) in s.skeletons.iter().enumerate() {
        for &(u, v) in &sk.real_edges {
            match edges.binary_search(&(u, v)) {
                Ok(i) => count[i] += 1,
                Err(_) => bail!("node {a} has real edge {u}-{v}, which is not in the graph"),
            }
        }
    }
    if let Some(i) = count.iter().position(|&c| c != 1) {
        let (u, v) = edges[i];
        bail!(
            "property 7: edge {u}-{v} is real in {} nodes instead of exactly one",
            count[i]
        );
    }
    Ok(())
}

fn check_skeleton(g: &Graph, a: usize, sk: &Skeleton) -> Check {
    if sk.vertices.windows(2).any(|w| w[0] >= w[1]) {
        bail!("node {a}: vertex list is not a sorted set");
    }
    if let Some(&v) = sk.vertices.iter().find(|&&v| v >= g.n()) {
        bail!("node {a}: vertex {v} is not in the graph");
    }
    let pairs: Vec<(usize, usize)> = sk
        .real_edges
        .iter()
        .copied()
        .chain(sk.virtual_edges.iter().map(|e| (e.u, e.v)))
        .collect();
    for &(u, v) in &pairs {
        if u >= v || !sk.contains(u) || !sk.contains(v) {
            bail!("node {a}: edge {u}-{v} is not a proper pair of skeleton vertices");
        }
    }
    let mut sorted = pairs.clone();
    sorted.sort_unstable();
    let parallel = sorted.windows(2).any(|w| w[0] == w[1]);
    match sk.kind {
        NodeKind::P => {
            if sk.vertices.len() != 2 {
                bail!("node {a}: P-node has {} vertices", sk.vertices.len());
            }
            if sk.virtual_edges.len() < 2 || sk.real_edges.len() > 1 {
                bail!(
                    "node {a}: P-node has {} virtual and {} real edges",
                    sk.virtual_edges.len(),
                    sk.real_edges.len()
                );
            }
        }
        NodeKind::S | NodeKind::R => {
            if parallel {
                bail!("property 4: {}-node {a} has parallel edges", sk.kind);
            }
            let h = sk.simple_graph();
            if sk.kind == NodeKind::S {
                let cycle = h.n() >= 3
                    && h.m() == h.n()
                    && h.is_connected()
                    && h.vertices().all(|v| h.degree(v) == 2);
                if !cycle {
                    bail!("node {a}: S-node skeleton is not a cycle");
                }
            } else if !is_three_connected(&h) {
                bail!("node {a}: R-node skeleton is not 3-connected");
            }
        }
    }
    Ok(())
}

fn is_three_connected(h: &Graph) -> bool {
    if h.n() < 4 || !h.is_connected() {
        return false;
    }
    h.vertices().all(|x| {
        let others: Vec<usize> = h.vertices().filter(|&v| v != x).collect();
        let rest = h.induced(&others).graph;
        rest.is_connected() && blocks(&rest).cut_vertices.is_empty()
    })
}
