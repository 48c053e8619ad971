use super::{GoodDecomposition, PipelineError, Provenance, INEXACT_SKELETON};
use crate::decomposition::{goodness, verify_tree_decomposition_induced, TreeDecomposition};
use crate::graph::{BlockForest, Graph, Vertex};
use crate::oracles::{exact_pathwidth, greedy_path_decomposition, OracleLimits};
use crate::spqr::{build_spqr, NodeKind, Skeleton};

/// Good tree decomposition of a 2-connected graph from its SPQR tree.
///
/// Every S- and R-node contributes a path of bags decomposing its skeleton
/// (virtual edges included); every P-node contributes the bag `{x, y}`,
/// joined to the first bag containing both `x` and `y` in the path of each
/// neighbouring node. S-skeletons use the fan `{c_0, c_i, c_{i+1}}` of the
/// cycle; R-skeletons use an exact minimum-width decomposition, or a greedy
/// one flagged [`INEXACT_SKELETON`] above the oracle limit.
pub fn good_decomposition_2conn(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<GoodDecomposition, PipelineError> {
    let spqr = build_spqr(g)?;
    let mut bags: Vec<Vec<Vertex>> = Vec::new();
    let mut provenance = Vec::new();
    let mut edges = Vec::new();
    let mut flags = Vec::new();
    // Node ids of each SPQR node's path, in order.
    let mut paths: Vec<Vec<usize>> = Vec::with_capacity(spqr.skeletons.len());
    for (a, sk) in spqr.skeletons.iter().enumerate() {
        let path_bags = match sk.kind {
            NodeKind::P => vec![sk.vertices.clone()],
            NodeKind::S => cycle_fan(sk),
            NodeKind::R => {
                let h = sk.simple_graph();
                let pd = if h.n() <= limits.max_pw_vertices {
                    exact_pathwidth(&h, limits)?.1
                } else {
                    flags.push(INEXACT_SKELETON.to_string());
                    greedy_path_decomposition(&h)
                };
                drop_nested(pd.bags)
                    .iter()
                    .map(|b| b.iter().map(|&i| sk.vertices[i]).collect())
                    .collect()
            }
        };
        let first = bags.len();
        for bag in path_bags {
            bags.push(bag);
            provenance.push(Provenance::Spqr {
                block: 0,
                node: a,
                kind: sk.kind,
            });
        }
        edges.extend((first + 1..bags.len()).map(|x| (x - 1, x)));
        paths.push((first..bags.len()).collect());
    }
    for (a, b) in spqr.tree.edges() {
        let (p, other) = if spqr.skeletons[a].kind == NodeKind::P {
            (a, b)
        } else {
            (b, a)
        };
        let (x, y) = (spqr.skeletons[p].vertices[0], spqr.skeletons[p].vertices[1]);
        let c = paths[other]
            .iter()
            .copied()
            .find(|&c| bags[c].contains(&x) && bags[c].contains(&y))
            .ok_or_else(|| {
                PipelineError::Internal(format!(
                    "no bag of SPQR node {other} contains the pair {{{x},{y}}}"
                ))
            })?;
        edges.push((paths[p][0], c));
    }
    let tree = Graph::from_edges(bags.len(), edges)?;
    let td = TreeDecomposition::new(tree, bags);
    let report = goodness(g, &td)?;
    flags.sort();
    flags.dedup();
    Ok(GoodDecomposition {
        td,
        report,
        provenance,
        flags,
    })
}

/// Removes bags contained in a neighbouring bag; the path stays valid.
fn drop_nested(bags: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    let subset = |a: &[Vertex], b: &[Vertex]| a.iter().all(|v| b.contains(v));
    let mut kept: Vec<Vec<Vertex>> = Vec::with_capacity(bags.len());
    for bag in bags {
        if kept.last().is_some_and(|last| subset(&bag, last)) {
            continue;
        }
        while kept.last().is_some_and(|last| subset(last, &bag)) {
            kept.pop();
        }
        kept.push(bag);
    }
    kept
}

/// Bags `{c_0, c_i, c_{i+1}}` along the cycle `c_0, c_1, ...` that starts at
/// the smallest vertex and continues to its smaller neighbour.
fn cycle_fan(sk: &Skeleton) -> Vec<Vec<Vertex>> {
    let h = sk.simple_graph();
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0;
    while order.len() < h.n() {
        let next = h
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev && w != 0)
            .expect("S-skeletons are cycles");
        prev = cur;
        cur = next;
        order.push(cur);
    }
    let c: Vec<Vertex> = order.into_iter().map(|i| sk.vertices[i]).collect();
    (1..c.len() - 1).map(|i| vec![c[0], c[i], c[i + 1]]).collect()
}

/// Joins per-block decompositions (on host ids, `per_block[i]` for
/// `forest.blocks[i]`) into one decomposition of `g`.
///
/// Each cut vertex `v` gets a node with bag `{v}`, adjacent to the first
/// node containing `v` in each block through `v`. If `g` is disconnected,
/// the resulting component trees are chained in order by edges between
/// their first nodes.
pub fn compose_blocks(
    g: &Graph,
    forest: &BlockForest,
    per_block: &[GoodDecomposition],
) -> Result<GoodDecomposition, PipelineError> {
    if per_block.len() < forest.blocks.len() {
        return Err(PipelineError::MissingBlock(per_block.len()));
    }
    if per_block.len() > forest.blocks.len() {
        return Err(PipelineError::ExtraBlocks {
            given: per_block.len(),
            blocks: forest.blocks.len(),
        });
    }
    let mut bags = Vec::new();
    let mut provenance = Vec::new();
    let mut edges = Vec::new();
    let mut flags = Vec::new();
    let mut offsets = Vec::with_capacity(per_block.len());
    for (i, (block, gd)) in forest.blocks.iter().zip(per_block).enumerate() {
        verify_tree_decomposition_induced(g, block, &gd.td)
            .map_err(|violation| PipelineError::BadBlock { block: i, violation })?;
        if gd.provenance.len() != gd.td.bags.len() {
            return Err(PipelineError::Internal(format!(
                "block {i}: {} provenance entries for {} nodes",
                gd.provenance.len(),
                gd.td.bags.len()
            )));
        }
        let offset = bags.len();
        offsets.push(offset);
        bags.extend(gd.td.bags.iter().cloned());
        edges.extend(gd.td.tree.edges().map(|(x, y)| (x + offset, y + offset)));
        provenance.extend(gd.provenance.iter().map(|p| match *p {
            Provenance::Spqr { node, kind, .. } => Provenance::Spqr { block: i, node, kind },
            Provenance::Block { .. } => Provenance::Block { block: i },
            other => other,
        }));
        flags.extend(gd.flags.iter().cloned());
    }
    for &v in &forest.cut_vertices {
        let hub = bags.len();
        bags.push(vec![v]);
        provenance.push(Provenance::CutVertex { vertex: v });
        for i in forest.blocks_of(v) {
            let x = per_block[i]
                .td
                .bags
                .iter()
                .position(|b| b.contains(&v))
                .expect("validated block decompositions cover their vertices");
            edges.push((hub, offsets[i] + x));
        }
    }
    let forest_graph = Graph::from_edges(bags.len(), edges.iter().copied())?;
    let firsts: Vec<usize> = forest_graph.components().iter().map(|c| c[0]).collect();
    edges.extend(firsts.windows(2).map(|w| (w[0], w[1])));
    let tree = Graph::from_edges(bags.len(), edges)?;
    let td = TreeDecomposition::new(tree, bags);
    let report = goodness(g, &td)?;
    flags.sort();
    flags.dedup();
    Ok(GoodDecomposition {
        td,
        report,
        provenance,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{tree_pathwidth, verify_tree_decomposition, GoodnessReport};
    use crate::graph::{blocks, generators};
    use proptest::prelude::*;

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    fn single_bag(block: &[Vertex], index: usize) -> GoodDecomposition {
        GoodDecomposition {
            td: TreeDecomposition::new(Graph::new(1), vec![block.to_vec()]),
            report: GoodnessReport {
                width: block.len() - 1,
                subtree_pathwidth: 0,
                witness_vertex: Some(block[0]),
            },
            provenance: vec![Provenance::Block { block: index }],
            flags: vec![],
        }
    }

    #[test]
    fn cycle_is_a_path_of_triangles() {
        let g = generators::cycle(9).unwrap();
        let gd = good_decomposition_2conn(&g, &limits()).unwrap();
        assert!(gd.td.as_path().is_some());
        assert_eq!(gd.td.bags.len(), 7);
        assert!(gd.td.bags.iter().all(|b| b.len() == 3));
        assert_eq!(gd.report.width, 2);
        assert!(gd.report.subtree_pathwidth <= 1);
    }

    #[test]
    fn k4_is_one_full_bag() {
        let g = generators::complete(4).unwrap();
        let gd = good_decomposition_2conn(&g, &limits()).unwrap();
        assert_eq!(gd.td.bags, vec![vec![0, 1, 2, 3]]);
        assert_eq!(gd.report.width, 3);
    }

    #[test]
    fn k4_minus_edge_links_triangles_through_the_dipole() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let gd = good_decomposition_2conn(&g, &limits()).unwrap();
        assert_eq!(gd.td.bags, vec![vec![1, 2], vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(gd.td.tree.degree(0), 2);
        assert_eq!(gd.report.width, 2);
        assert_eq!(
            gd.provenance[0],
            Provenance::Spqr { block: 0, node: 0, kind: NodeKind::P }
        );
    }

    #[test]
    fn rejects_graphs_with_cut_vertices() {
        let g = generators::path(4).unwrap();
        assert!(good_decomposition_2conn(&g, &limits()).is_err());
    }

    #[test]
    fn two_triangles_sharing_a_vertex() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let forest = blocks(&g);
        let per_block: Vec<GoodDecomposition> = forest
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| single_bag(b, i))
            .collect();
        let gd = compose_blocks(&g, &forest, &per_block).unwrap();
        verify_tree_decomposition(&g, &gd.td).unwrap();
        assert_eq!(gd.report.width, 2);
        assert_eq!(gd.td.bags.len(), 3);
        assert_eq!(gd.provenance[2], Provenance::CutVertex { vertex: 2 });
        assert!(compose_blocks(&g, &forest, &per_block[..1]).is_err());
    }

    #[test]
    fn invalid_block_decompositions_are_rejected() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let forest = blocks(&g);
        let mut per_block: Vec<GoodDecomposition> = forest
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| single_bag(b, i))
            .collect();
        per_block[0].td.bags[0].pop();
        assert!(matches!(
            compose_blocks(&g, &forest, &per_block),
            Err(PipelineError::BadBlock { block: 0, .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn spqr_decompositions_are_valid(n in 3usize..50, seed in any::<u64>(), outer in any::<bool>()) {
            let g = if outer {
                generators::random_outerplanar(n, seed).unwrap()
            } else {
                generators::random_series_parallel(n, seed).unwrap()
            };
            let gd = good_decomposition_2conn(&g, &limits()).unwrap();
            prop_assert!(verify_tree_decomposition(&g, &gd.td).is_ok());
            prop_assert!(gd.td.bags.iter().all(|b| b.len() == 2 || b.len() == 3));
            prop_assert!(gd.report.width <= 2);
        }

        #[test]
        fn composing_adds_at_most_one_to_p(n in 2usize..60, seed in any::<u64>()) {
            // Chain random outerplanar blocks at shared vertices.
            let a = generators::random_outerplanar(n.max(3), seed).unwrap();
            let b = generators::random_outerplanar(n.max(3), seed ^ 1).unwrap();
            let k = a.n();
            let mut g = a.clone();
            for _ in 1..b.n() {
                g.add_vertex();
            }
            let host = |v: Vertex| if v == 0 { k - 1 } else { k - 1 + v };
            for (u, v) in b.edges() {
                g.add_edge(host(u), host(v)).unwrap();
            }
            let forest = blocks(&g);
            let mut per_block = Vec::new();
            let mut worst_p = 0;
            for (i, block) in forest.blocks.iter().enumerate() {
                if block.len() <= 2 {
                    per_block.push(single_bag(block, i));
                    continue;
                }
                let sub = g.induced(block);
                let local = good_decomposition_2conn(&sub.graph, &limits()).unwrap();
                worst_p = worst_p.max(local.report.subtree_pathwidth);
                let bags = local.td.bags.iter().map(|b| sub.map_to_host(b)).collect();
                per_block.push(GoodDecomposition {
                    td: TreeDecomposition::new(local.td.tree, bags),
                    ..local
                });
            }
            let gd = compose_blocks(&g, &forest, &per_block).unwrap();
            prop_assert!(verify_tree_decomposition(&g, &gd.td).is_ok());
            prop_assert!(gd.report.subtree_pathwidth <= worst_p + 1);
            for v in g.vertices() {
                let sub = crate::decomposition::subtree_of(&gd.td, v).unwrap();
                prop_assert!(tree_pathwidth(&sub.graph).unwrap().0 <= worst_p + 1);
            }
        }
    }
}
