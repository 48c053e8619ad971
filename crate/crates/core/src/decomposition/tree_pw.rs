//! Exact pathwidth of forests.
//!
//! A rooted subtree is summarized by a label: a list of `(value, critical)`
//! entries with strictly decreasing values. The first value is the pathwidth
//! of the subtree. If it is flagged critical, some vertex `c` in the subtree
//! has two children whose subtrees attain that value; every optimal
//! decomposition then needs a main path through `c`, and the remaining
//! entries label the subtree with the subtree of `c` removed.
//!
//! Witnesses are built from the main-path characterization: a tree has
//! pathwidth at most `k >= 1` iff some path `P` leaves only components of
//! pathwidth at most `k - 1`. Labels locate such a path directly.

use super::{DecompositionError, PathDecomposition};
use crate::graph::{Graph, UnionFind, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Entry {
    value: u32,
    critical: bool,
}

type Label = Vec<Entry>;

fn combine(children: &[&[Entry]]) -> Label {
    let Some(m) = children.iter().map(|c| c[0].value).max() else {
        return vec![Entry { value: 0, critical: false }];
    };
    if m == 0 {
        return vec![Entry { value: 1, critical: false }];
    }
    let top: Vec<usize> = (0..children.len())
        .filter(|&i| children[i][0].value == m)
        .collect();
    let bump = vec![Entry { value: m + 1, critical: false }];
    match top.len() {
        1 => {
            let c = children[top[0]];
            if !c[0].critical {
                return vec![Entry { value: m, critical: false }];
            }
            let mut rest: Vec<&[Entry]> = (0..children.len())
                .filter(|&i| i != top[0])
                .map(|i| children[i])
                .collect();
            if c.len() > 1 {
                rest.push(&c[1..]);
            }
            let sub = combine(&rest);
            if sub[0].value >= m {
                bump
            } else {
                let mut label = vec![Entry { value: m, critical: true }];
                label.extend(sub);
                label
            }
        }
        2 if top.iter().all(|&i| !children[i][0].critical) => {
            vec![Entry { value: m, critical: true }]
        }
        _ => bump,
    }
}

/// Exact pathwidth of a forest together with an optimal path decomposition.
///
/// Components are decomposed independently and concatenated in order of
/// their smallest vertex.
pub fn tree_pathwidth(t: &Graph) -> Result<(usize, PathDecomposition), DecompositionError> {
    let mut uf = UnionFind::new(t.n());
    for (u, v) in t.edges() {
        if !uf.union(u, v) {
            return Err(DecompositionError::NotAForest(u));
        }
    }
    let mut allowed = vec![true; t.n()];
    let mut width = 0;
    let mut bags = Vec::new();
    for comp in t.components() {
        let (k, b) = decompose(t, comp[0], &mut allowed);
        width = width.max(k);
        bags.extend(b);
    }
    Ok((width as usize, PathDecomposition::new(bags)))
}

/// Decomposes the component of `root` among `allowed` vertices; marks every
/// vertex it consumes as no longer allowed.
fn decompose(t: &Graph, root: Vertex, allowed: &mut [bool]) -> (u32, Vec<Vec<Vertex>>) {
    // BFS tree of the component.
    let mut order = vec![root];
    let mut parent = vec![(root, usize::MAX)];
    allowed[root] = false;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        for &w in t.neighbors(v) {
            if allowed[w] {
                allowed[w] = false;
                parent.push((w, head));
                order.push(w);
            }
        }
        head += 1;
    }
    let size = order.len();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (i, &(_, p)) in parent.iter().enumerate().skip(1) {
        children[p].push(i);
    }
    let mut labels: Vec<Label> = vec![Vec::new(); size];
    for i in (0..size).rev() {
        let kids: Vec<&[Entry]> = children[i].iter().map(|&c| labels[c].as_slice()).collect();
        labels[i] = combine(&kids);
    }
    let k = labels[0][0].value;
    if k == 0 {
        return (0, vec![vec![root]]);
    }

    let heavy = |i: usize| -> Vec<usize> {
        children[i]
            .iter()
            .copied()
            .filter(|&c| labels[c][0].value == k)
            .collect()
    };
    let chain = |mut i: usize| -> Vec<usize> {
        let mut out = vec![i];
        while let Some(&c) = heavy(i).first() {
            out.push(c);
            i = c;
        }
        out
    };
    let mut walk = vec![0usize];
    let spine: Vec<usize> = loop {
        let x = *walk.last().unwrap();
        let h = heavy(x);
        match h.len() {
            0 => break walk,
            1 => walk.push(h[0]),
            _ => {
                let mut s = chain(h[0]);
                s.reverse();
                s.push(x);
                s.extend(chain(h[1]));
                break s;
            }
        }
    };
    let spine: Vec<Vertex> = spine.into_iter().map(|i| order[i]).collect();

    // Re-open the component minus the spine and decompose what hangs off it.
    for &i in order.iter() {
        allowed[i] = true;
    }
    for &p in &spine {
        allowed[p] = false;
    }
    let mut bags = Vec::new();
    for (i, &p) in spine.iter().enumerate() {
        let mut hanging: Vec<Vertex> = t
            .neighbors(p)
            .iter()
            .copied()
            .filter(|&w| allowed[w])
            .collect();
        hanging.sort_unstable();
        for w in hanging {
            if !allowed[w] {
                continue;
            }
            let (sub_k, sub_bags) = decompose(t, w, allowed);
            debug_assert!(sub_k < k);
            for mut b in sub_bags {
                b.push(p);
                bags.push(b);
            }
        }
        if let Some(&q) = spine.get(i + 1) {
            bags.push(vec![p, q]);
        }
    }
    (k, bags)
}
