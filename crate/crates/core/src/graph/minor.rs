use crate::error::{bail, Check};

use super::{generators, Graph, Vertex};

/// Witness that a pattern graph `H` is a minor of a host graph `G`: one
/// branch set of host vertices per pattern vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<Vertex>>,
}

/// Checks that `model` witnesses `h` as a minor of `g`: branch sets are
/// nonempty, pairwise disjoint and connected, and every edge of `h` is
/// realized by some edge of `g` between the corresponding branch sets.
pub fn verify_minor_model(g: &Graph, h: &Graph, model: &MinorModel) -> Check {
    if model.branch_sets.len() < h.n() {
        bail!("pattern vertex {} has no branch set", model.branch_sets.len());
    }
    if model.branch_sets.len() > h.n() {
        bail!(
            "model has {} branch sets for a pattern on {} vertices",
            model.branch_sets.len(),
            h.n()
        );
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (p, set) in model.branch_sets.iter().enumerate() {
        if set.is_empty() {
            bail!("branch set of pattern vertex {p} is empty");
        }
        for &v in set {
            if v >= g.n() {
                bail!("branch set of pattern vertex {p} contains {v}, not a host vertex");
            }
            if owner[v] == p {
                bail!("branch set of pattern vertex {p} lists {v} twice");
            }
            if owner[v] != usize::MAX {
                bail!(
                    "host vertex {v} is in the branch sets of both {} and {p}",
                    owner[v]
                );
            }
            owner[v] = p;
        }
        if !g.induces_connected(set) {
            bail!("branch set of pattern vertex {p} is not connected");
        }
    }
    for (a, b) in h.edges() {
        let realized = model.branch_sets[a]
            .iter()
            .any(|&v| g.neighbors(v).iter().any(|&w| owner[w] == b));
        if !realized {
            bail!("pattern edge {a}-{b} has no host edge between its branch sets");
        }
    }
    Ok(())
}

/// A model of `Q_k` in `T_{2k}^+`.
///
/// The root of `Q_k`'s tree takes the two middle grandchild subtrees of the
/// host root together with the host path joining them; the two outer
/// grandchildren root the recursive models of the left and right halves. Leaf
/// branch sets are single host leaves and the apex maps to the host apex.
///
/// Vertex ids follow [`generators::complete_binary_tree`] (heap order) for
/// both host and pattern, with the apex last.
pub fn find_qk_in_tplus(k: u32) -> MinorModel {
    let pattern_tree = generators::cbt_size(k);
    let host_tree = generators::cbt_size(2 * k);
    let mut branch_sets = vec![Vec::new(); pattern_tree + 1];
    // (host subtree root, remaining host height, pattern node)
    let mut work = vec![(0usize, 2 * k, 0usize)];
    while let Some((host, height, pat)) = work.pop() {
        if height == 0 {
            branch_sets[pat].push(host);
            continue;
        }
        let (left, right) = (2 * host + 1, 2 * host + 2);
        let grandchildren = [2 * left + 1, 2 * left + 2, 2 * right + 1, 2 * right + 2];
        let set = &mut branch_sets[pat];
        set.extend([host, left, right]);
        for &g in &grandchildren[1..3] {
            collect_subtree(g, height - 2, set);
        }
        set.sort_unstable();
        work.push((grandchildren[0], height - 2, 2 * pat + 1));
        work.push((grandchildren[3], height - 2, 2 * pat + 2));
    }
    branch_sets[pattern_tree] = vec![host_tree];
    MinorModel { branch_sets }
}

fn collect_subtree(root: Vertex, height: u32, out: &mut Vec<Vertex>) {
    let mut level = vec![root];
    for _ in 0..=height {
        out.extend_from_slice(&level);
        level = level.iter().flat_map(|&v| [2 * v + 1, 2 * v + 2]).collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, q_graph, t_plus};

    #[test]
    fn identity_model() {
        let g = q_graph(2).unwrap();
        let model = MinorModel {
            branch_sets: g.vertices().map(|v| vec![v]).collect(),
        };
        assert!(verify_minor_model(&g, &g, &model).is_ok());
    }

    #[test]
    fn rejects_disconnected_branch_set() {
        let g = crate::graph::generators::path(4).unwrap();
        let h = crate::graph::generators::path(2).unwrap();
        let model = MinorModel {
            branch_sets: vec![vec![0, 2], vec![1]],
        };
        let err = verify_minor_model(&g, &h, &model).unwrap_err();
        assert!(err.message().contains("not connected"), "{err}");
    }

    #[test]
    fn rejects_missing_and_overlapping_sets() {
        let g = complete(4).unwrap();
        let h = complete(3).unwrap();
        let short = MinorModel {
            branch_sets: vec![vec![0], vec![1]],
        };
        let err = verify_minor_model(&g, &h, &short).unwrap_err();
        assert!(err.message().contains("pattern vertex 2 has no branch set"));
        let overlap = MinorModel {
            branch_sets: vec![vec![0], vec![1], vec![1, 2]],
        };
        assert!(verify_minor_model(&g, &h, &overlap).is_err());
    }

    #[test]
    fn rejects_unrealized_pattern_edge() {
        let g = crate::graph::generators::path(3).unwrap();
        let h = complete(3).unwrap();
        let model = MinorModel {
            branch_sets: vec![vec![0], vec![1], vec![2]],
        };
        let err = verify_minor_model(&g, &h, &model).unwrap_err();
        assert!(err.message().contains("pattern edge 0-2"), "{err}");
    }

    #[test]
    fn qk_model_k0_is_k2() {
        let model = find_qk_in_tplus(0);
        assert_eq!(model.branch_sets, vec![vec![0], vec![1]]);
        assert!(verify_minor_model(&t_plus(0).unwrap(), &q_graph(0).unwrap(), &model).is_ok());
    }

    #[test]
    fn qk_models_verify() {
        for k in 0..=4 {
            let model = find_qk_in_tplus(k);
            let host = t_plus(2 * k).unwrap();
            let pattern = q_graph(k).unwrap();
            verify_minor_model(&host, &pattern, &model)
                .unwrap_or_else(|e| panic!("k={k}: {e}"));
        }
    }

    #[test]
    fn qk_root_set_for_k1() {
        // T_2^+: root 0, children 1 2, grandchildren 3 4 5 6, apex 7.
        let model = find_qk_in_tplus(1);
        assert_eq!(model.branch_sets[0], vec![0, 1, 2, 4, 5]);
        assert_eq!(model.branch_sets[1], vec![3]);
        assert_eq!(model.branch_sets[2], vec![6]);
        assert_eq!(model.branch_sets[3], vec![7]);
    }
}
