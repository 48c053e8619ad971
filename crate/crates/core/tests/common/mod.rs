//! Checkers written from the definitions, sharing no code with the library's
//! verifiers.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use layered_decomp::Graph;

pub type Outcome = Result<(), String>;

fn edge_set(g: &Graph) -> Vec<(usize, usize)> {
    let mut edges: Vec<_> = g.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    edges
}

/// Bags containing each vertex form an interval and every edge of `g[vertices]`
/// lies in a bag. `vertices = None` means all of `g`.
pub fn check_path(g: &Graph, bags: &[Vec<usize>], vertices: Option<&[usize]>) -> Outcome {
    let all: Vec<usize> = (0..g.n()).collect();
    let vertices = vertices.unwrap_or(&all);
    let inside: HashSet<usize> = vertices.iter().copied().collect();
    let sets: Vec<HashSet<usize>> = bags.iter().map(|b| b.iter().copied().collect()).collect();
    for (i, bag) in sets.iter().enumerate() {
        if let Some(v) = bag.iter().find(|v| !inside.contains(v)) {
            return Err(format!("bag {i} holds {v}, outside the graph"));
        }
    }
    for &v in vertices {
        let hits: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].contains(&v)).collect();
        let Some((&first, &last)) = hits.first().zip(hits.last()) else {
            return Err(format!("vertex {v} is in no bag"));
        };
        if last - first + 1 != hits.len() {
            return Err(format!("bags holding {v} are not consecutive"));
        }
    }
    for (u, v) in edge_set(g) {
        if inside.contains(&u) && inside.contains(&v) && !sets.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Err(format!("edge {u}-{v} is in no bag"));
        }
    }
    Ok(())
}

fn connected_within(tree: &Graph, nodes: &HashSet<usize>) -> bool {
    let Some(&start) = nodes.iter().next() else {
        return true;
    };
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in tree.neighbors(x) {
            if nodes.contains(&y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len() == nodes.len()
}

pub fn check_tree(g: &Graph, tree: &Graph, bags: &[Vec<usize>]) -> Outcome {
    if tree.n() != bags.len() {
        return Err("node count differs from bag count".into());
    }
    if tree.n() > 0 && (tree.m() + 1 != tree.n() || !connected_within(tree, &(0..tree.n()).collect())) {
        return Err("index graph is not a tree".into());
    }
    let sets: Vec<HashSet<usize>> = bags.iter().map(|b| b.iter().copied().collect()).collect();
    for v in 0..g.n() {
        let nodes: HashSet<usize> = (0..sets.len()).filter(|&x| sets[x].contains(&v)).collect();
        if nodes.is_empty() {
            return Err(format!("vertex {v} is in no bag"));
        }
        if !connected_within(tree, &nodes) {
            return Err(format!("nodes holding {v} are disconnected"));
        }
    }
    if let Some(v) = sets.iter().flatten().find(|&&v| v >= g.n()) {
        return Err(format!("bag vertex {v} is outside the graph"));
    }
    for (u, v) in edge_set(g) {
        if !sets.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Err(format!("edge {u}-{v} is in no bag"));
        }
    }
    Ok(())
}

/// Layers partition `V(g)` and every edge joins equal or consecutive layers.
pub fn check_layering(g: &Graph, layers: &[Vec<usize>]) -> Outcome {
    let mut layer_of = vec![None; g.n()];
    for (i, layer) in layers.iter().enumerate() {
        for &v in layer {
            if v >= g.n() || layer_of[v].replace(i).is_some() {
                return Err(format!("vertex {v} is out of range or repeated"));
            }
        }
    }
    if let Some(v) = layer_of.iter().position(Option::is_none) {
        return Err(format!("vertex {v} has no layer"));
    }
    for (u, v) in edge_set(g) {
        if layer_of[u].unwrap().abs_diff(layer_of[v].unwrap()) > 1 {
            return Err(format!("edge {u}-{v} skips a layer"));
        }
    }
    Ok(())
}

pub fn layered_width(bags: &[Vec<usize>], layers: &[Vec<usize>]) -> usize {
    let sets: Vec<HashSet<usize>> = layers.iter().map(|l| l.iter().copied().collect()).collect();
    bags.iter()
        .flat_map(|b| sets.iter().map(move |l| b.iter().filter(|v| l.contains(v)).count()))
        .max()
        .unwrap_or(0)
}

pub fn max_bag(bags: &[Vec<usize>]) -> usize {
    bags.iter().map(Vec::len).max().unwrap_or(0)
}

/// Chordality by repeated removal of simplicial vertices.
pub fn is_chordal(g: &Graph) -> bool {
    let mut alive: Vec<bool> = vec![true; g.n()];
    for _ in 0..g.n() {
        let simplicial = (0..g.n()).filter(|&v| alive[v]).find(|&v| {
            let nb: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| alive[u]).collect();
            nb.iter()
                .enumerate()
                .all(|(i, &a)| nb[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        });
        match simplicial {
            Some(v) => alive[v] = false,
            None => return false,
        }
    }
    true
}
