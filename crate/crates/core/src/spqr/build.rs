use std::collections::VecDeque;

use super::{NodeKind, Skeleton, SpqrError, SpqrTree, VirtualEdge};
use crate::graph::{blocks, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tag {
    Real,
    /// Placeholder for the split pair of P-node `.0`.
    Link(usize),
}

/// A piece awaiting decomposition: a simple 2-connected graph on host ids.
struct Piece {
    vertices: Vec<Vertex>,
    edges: Vec<(Vertex, Vertex, Tag)>,
}

impl Piece {
    fn local(&self) -> Graph {
        let idx = |v: Vertex| self.vertices.binary_search(&v).unwrap();
        Graph::from_edges(
            self.vertices.len(),
            self.edges.iter().map(|&(u, v, _)| (idx(u), idx(v))),
        )
        .expect("pieces are simple")
    }
}

/// Builds the SPQR tree of a 2-connected graph.
///
/// Pieces are processed first-in first-out, so node ids follow the order in
/// which splits are discovered; P-nodes receive their id when created.
pub fn build_spqr(g: &Graph) -> Result<SpqrTree, SpqrError> {
    if g.n() < 3 {
        return Err(SpqrError::TooSmall(g.n()));
    }
    if let Some(v) = g.distances(0).iter().position(Option::is_none) {
        return Err(SpqrError::Disconnected(v));
    }
    if let Some(&c) = blocks(g).cut_vertices.first() {
        return Err(SpqrError::CutVertex(c));
    }

    let mut skeletons: Vec<Skeleton> = Vec::new();
    let mut queue = VecDeque::from([Piece {
        vertices: g.vertices().collect(),
        edges: g.edges().map(|(u, v)| (u, v, Tag::Real)).collect(),
    }]);

    while let Some(piece) = queue.pop_front() {
        let local = piece.local();
        let is_cycle = local.vertices().all(|v| local.degree(v) == 2);
        let split = if is_cycle { None } else { find_split(&local) };
        match split {
            None => {
                if !is_cycle && local.n() < 4 {
                    return Err(SpqrError::Internal(format!(
                        "piece {:?} is neither a cycle nor 3-connected",
                        piece.vertices
                    )));
                }
                let kind = if is_cycle { NodeKind::S } else { NodeKind::R };
                let id = skeletons.len();
                let mut sk = Skeleton {
                    kind,
                    vertices: piece.vertices.clone(),
                    real_edges: Vec::new(),
                    virtual_edges: Vec::new(),
                };
                for &(u, v, tag) in &piece.edges {
                    match tag {
                        Tag::Real => sk.real_edges.push((u, v)),
                        Tag::Link(p) => {
                            sk.virtual_edges.push(VirtualEdge { u, v, partner: p });
                            skeletons[p].virtual_edges.push(VirtualEdge { u, v, partner: id });
                        }
                    }
                }
                skeletons.push(sk);
            }
            Some(Split::Invalid) => return Err(SpqrError::NoValidCutset(piece.vertices)),
            Some(Split::Pair(lx, ly)) => {
                let (x, y) = (piece.vertices[lx], piece.vertices[ly]);
                let id = skeletons.len();
                let mut real_edges = Vec::new();
                for &(u, v, tag) in &piece.edges {
                    if (u, v) == (x, y) {
                        match tag {
                            Tag::Real => real_edges.push((x, y)),
                            Tag::Link(q) => {
                                return Err(SpqrError::Internal(format!(
                                    "split pair {{{x},{y}}} is already the pair of P-node {q}"
                                )))
                            }
                        }
                    }
                }
                skeletons.push(Skeleton {
                    kind: NodeKind::P,
                    vertices: vec![x, y],
                    real_edges,
                    virtual_edges: Vec::new(),
                });
                let mut side = vec![usize::MAX; g.n()];
                let others: Vec<usize> = local.vertices().filter(|&v| v != lx && v != ly).collect();
                let rest = local.induced(&others);
                let comps = rest.graph.components();
                for (i, comp) in comps.iter().enumerate() {
                    for &c in comp {
                        side[piece.vertices[rest.to_host[c]]] = i;
                    }
                }
                let mut pieces: Vec<Piece> = comps
                    .iter()
                    .map(|comp| {
                        let mut vertices: Vec<Vertex> =
                            comp.iter().map(|&c| piece.vertices[rest.to_host[c]]).collect();
                        vertices.extend([x, y]);
                        vertices.sort_unstable();
                        Piece {
                            vertices,
                            edges: Vec::new(),
                        }
                    })
                    .collect();
                for &(u, v, tag) in &piece.edges {
                    if (u, v) == (x, y) {
                        continue;
                    }
                    let s = if side[u] != usize::MAX { side[u] } else { side[v] };
                    pieces[s].edges.push((u, v, tag));
                }
                for mut p in pieces {
                    p.edges.push((x, y, Tag::Link(id)));
                    p.edges.sort_unstable_by_key(|&(u, v, _)| (u, v));
                    queue.push_back(p);
                }
            }
        }
    }

    let skeletons = merge_adjacent_cycles(skeletons);
    let tree_edges = skeletons.iter().enumerate().flat_map(|(a, sk)| {
        sk.virtual_edges
            .iter()
            .filter(move |e| e.partner > a)
            .map(move |e| (a, e.partner))
    });
    let tree = Graph::from_edges(skeletons.len(), tree_edges)
        .map_err(|e| SpqrError::Internal(e.to_string()))?;
    Ok(SpqrTree {
        n: g.n(),
        tree,
        skeletons,
    })
}

enum Split {
    Pair(usize, usize),
    /// 2-cutsets exist, but none has both endpoints of degree >= 3.
    Invalid,
}

/// Lexicographically smallest 2-cutset `{x, y}` (local ids, `x < y`) with
/// both endpoints of degree at least 3, or `None` if the graph has no
/// 2-cutset at all.
fn find_split(g: &Graph) -> Option<Split> {
    let mut any = false;
    for x in g.vertices() {
        let others: Vec<usize> = g.vertices().filter(|&v| v != x).collect();
        let rest = g.induced(&others);
        let cuts = blocks(&rest.graph).cut_vertices;
        any |= !cuts.is_empty();
        if g.degree(x) < 3 {
            continue;
        }
        if let Some(y) = cuts
            .iter()
            .map(|&c| rest.to_host[c])
            .find(|&y| y > x && g.degree(y) >= 3)
        {
            return Some(Split::Pair(x, y));
        }
    }
    any.then_some(Split::Invalid)
}

/// Splitting at the smallest valid pair can separate two cycles by a P-node
/// that carries only their two virtual edges. Such a pair of S-nodes is glued
/// back into one cycle and the P-node removed, until no such P-node remains.
/// Surviving nodes keep their relative order.
fn merge_adjacent_cycles(mut skeletons: Vec<Skeleton>) -> Vec<Skeleton> {
    let mut alive = vec![true; skeletons.len()];
    loop {
        let found = (0..skeletons.len()).find(|&a| {
            let sk = &skeletons[a];
            alive[a]
                && sk.kind == NodeKind::P
                && sk.real_edges.is_empty()
                && sk.virtual_edges.len() == 2
                && sk
                    .virtual_edges
                    .iter()
                    .all(|e| skeletons[e.partner].kind == NodeKind::S)
        });
        let Some(a) = found else { break };
        let (b, c) = {
            let e = &skeletons[a].virtual_edges;
            (e[0].partner.min(e[1].partner), e[0].partner.max(e[1].partner))
        };
        let absorbed = std::mem::replace(
            &mut skeletons[c],
            Skeleton {
                kind: NodeKind::S,
                vertices: Vec::new(),
                real_edges: Vec::new(),
                virtual_edges: Vec::new(),
            },
        );
        for e in &absorbed.virtual_edges {
            if e.partner != a {
                for f in skeletons[e.partner].virtual_edges.iter_mut() {
                    if f.partner == c {
                        f.partner = b;
                    }
                }
            }
        }
        let target = &mut skeletons[b];
        target.virtual_edges.retain(|e| e.partner != a);
        target
            .virtual_edges
            .extend(absorbed.virtual_edges.into_iter().filter(|e| e.partner != a));
        target.vertices.extend(absorbed.vertices);
        target.vertices.sort_unstable();
        target.vertices.dedup();
        target.real_edges.extend(absorbed.real_edges);
        target.real_edges.sort_unstable();
        target.virtual_edges.sort_by_key(|e| (e.u, e.v, e.partner));
        alive[a] = false;
        alive[c] = false;
    }
    let mut new_id = vec![usize::MAX; skeletons.len()];
    let mut next = 0;
    for (a, &keep) in alive.iter().enumerate() {
        if keep {
            new_id[a] = next;
            next += 1;
        }
    }
    skeletons
        .into_iter()
        .zip(alive)
        .filter(|(_, keep)| *keep)
        .map(|(mut sk, _)| {
            for e in sk.virtual_edges.iter_mut() {
                e.partner = new_id[e.partner];
            }
            sk
        })
        .collect()
}
