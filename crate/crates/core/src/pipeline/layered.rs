use super::{GoodDecomposition, LayeredPD, PipelineError};
use crate::decomposition::{
    blowup_unchecked, combine_subtrees, goodness, layered_width, tree_pathwidth,
    verify_path_decomposition, verify_tree_decomposition, verify_tree_decomposition_induced,
    DecompositionError, PathDecomposition, SubtreePart, TreeDecomposition,
};
use crate::graph::{Graph, GraphError, Layering, Vertex};

/// `g` plus every pair of vertices sharing a bag of `td`. The result is
/// chordal and `td` is a tree decomposition of it.
pub fn chordal_fill(g: &Graph, td: &TreeDecomposition) -> Result<Graph, PipelineError> {
    verify_tree_decomposition(g, td).map_err(DecompositionError::from)?;
    let mut gf = g.clone();
    for bag in &td.bags {
        for (i, &u) in bag.iter().enumerate() {
            for &v in &bag[i + 1..] {
                gf.ensure_edge(u, v)?;
            }
        }
    }
    Ok(gf)
}

/// The vertices of layer `i - 1` adjacent to `component`, a connected set
/// inside layer `i >= 1`.
///
/// Fails unless the result is a nonempty clique of `gf` with at most
/// `max_size` vertices.
pub fn parent_clique(
    gf: &Graph,
    layering: &Layering,
    component: &[Vertex],
    max_size: usize,
) -> Result<Vec<Vertex>, PipelineError> {
    let bad = |msg: String| Err(PipelineError::BadComponent(msg));
    let Some(&first) = component.first() else {
        return bad("empty component".into());
    };
    let layer = |v: Vertex| {
        if v >= gf.n() {
            return Err(PipelineError::Graph(GraphError::VertexOutOfRange { vertex: v, n: gf.n() }));
        }
        layering
            .layer_of(v)
            .ok_or(PipelineError::Decomposition(DecompositionError::NotLayered(v)))
    };
    let i = layer(first)?;
    if i == 0 {
        return bad(format!("vertex {first} lies in layer 0"));
    }
    for &v in component {
        if layer(v)? != i {
            return bad(format!("vertices {first} and {v} lie in different layers"));
        }
    }
    if !gf.induces_connected(component) {
        return bad(format!("{component:?} is not connected"));
    }
    let mut parents: Vec<Vertex> = component
        .iter()
        .flat_map(|&v| gf.neighbors(v).iter().copied())
        .filter(|&u| layering.layer_of(u) == Some(i - 1))
        .collect();
    parents.sort_unstable();
    parents.dedup();
    if parents.is_empty() {
        return Err(PipelineError::ParentClique(format!(
            "component containing {first} has no neighbour in layer {}",
            i - 1
        )));
    }
    for (k, &u) in parents.iter().enumerate() {
        if let Some(&v) = parents[k + 1..].iter().find(|&&v| !gf.has_edge(u, v)) {
            return Err(PipelineError::ParentClique(format!(
                "parents {u} and {v} of the component containing {first} are not adjacent"
            )));
        }
    }
    if parents.len() > max_size {
        return Err(PipelineError::ParentClique(format!(
            "{} parents of the component containing {first} exceed {max_size}",
            parents.len()
        )));
    }
    Ok(parents)
}

/// Path decomposition of `g` with bounded layered width, built from a good
/// tree decomposition.
///
/// The chordal fill `gf` is layered by BFS from `root` (other components of
/// `gf` from their smallest vertex). Layer by layer, every component `H` of
/// layer `i` with parent clique `C` is decomposed by blowing up the bags of
/// the subtree `T_H` spanned by `C`, restricted to `H ∪ C`, along a path
/// decomposition of `T_H` assembled from those of the subtrees `T[u]`. The
/// result is merged into copies of the first bag containing `C`.
pub fn layered_path_decomposition(
    g: &Graph,
    gd: &GoodDecomposition,
    root: Vertex,
) -> Result<LayeredPD, PipelineError> {
    let n = g.n();
    if n == 0 {
        return Ok(LayeredPD {
            pd: PathDecomposition::default(),
            layering: Layering::from_parts_unchecked(0, Vec::new()),
            ell: 0,
        });
    }
    if root >= n {
        return Err(GraphError::VertexOutOfRange { vertex: root, n }.into());
    }
    let td = &gd.td;
    let gf = chordal_fill(g, td)?;
    let report = goodness(g, td)?;
    let (w, p) = (report.width, report.subtree_pathwidth);

    let mut components = gf.components();
    components.sort_by_key(|c| (c.binary_search(&root).is_err(), c[0]));
    let mut layer_of = vec![0usize; n];
    let mut layers: Vec<Vec<Vertex>> = Vec::new();
    let mut per_component = Vec::with_capacity(components.len());
    for comp in &components {
        let r = if comp.binary_search(&root).is_ok() { root } else { comp[0] };
        let dist = gf.distances(r);
        let mut own: Vec<Vec<Vertex>> = Vec::new();
        for &v in comp {
            let d = dist[v].expect("component is connected");
            layer_of[v] = d;
            if own.len() <= d {
                own.resize(d + 1, Vec::new());
            }
            own[d].push(v);
        }
        for (d, layer) in own.iter().enumerate() {
            if layers.len() <= d {
                layers.resize(d + 1, Vec::new());
            }
            layers[d].extend_from_slice(layer);
        }
        per_component.push(own);
    }
    let layering = Layering::from_parts_unchecked(n, layers);

    let mut nodes_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            nodes_of[v].push(x);
        }
    }

    let mut bags: Vec<Vec<Vertex>> = Vec::new();
    for own in &per_component {
        let mut pd: Vec<Vec<Vertex>> = vec![own[0].clone()];
        for layer in &own[1..] {
            let sub = gf.induced(layer);
            let mut claims: Vec<Vec<Vec<Vertex>>> = vec![Vec::new(); pd.len()];
            for local in sub.graph.components() {
                let h = sub.map_to_host(&local);
                let c = parent_clique(&gf, &layering, &h, w)?;
                let d = decompose_component(&gf, td, &nodes_of, &h, &c, w * (p + 1))?;
                let j = pd
                    .iter()
                    .position(|b| c.iter().all(|u| b.binary_search(u).is_ok()))
                    .ok_or_else(|| {
                        PipelineError::Internal(format!("no bag contains the parent clique {c:?}"))
                    })?;
                claims[j].extend(d);
            }
            let mut next = Vec::with_capacity(pd.len());
            for (bag, claim) in pd.into_iter().zip(claims) {
                if claim.is_empty() {
                    next.push(bag);
                    continue;
                }
                for extra in claim {
                    let mut merged: Vec<Vertex> = bag.iter().chain(&extra).copied().collect();
                    merged.sort_unstable();
                    merged.dedup();
                    next.push(merged);
                }
            }
            pd = next;
        }
        bags.extend(pd);
    }
    let pd = PathDecomposition::new(bags);
    verify_path_decomposition(g, &pd)
        .map_err(|v| PipelineError::Internal(format!("assembled decomposition is invalid: {v}")))?;
    let ell = layered_width(&pd, &layering)?;
    Ok(LayeredPD { pd, layering, ell })
}

/// Bags decomposing `gf[H ∪ C]`, one per bag of the assembled path
/// decomposition of `T_H`, whose bags hold at most `cap` tree nodes.
fn decompose_component(
    gf: &Graph,
    td: &TreeDecomposition,
    nodes_of: &[Vec<usize>],
    h: &[Vertex],
    c: &[Vertex],
    cap: usize,
) -> Result<Vec<Vec<Vertex>>, PipelineError> {
    let mut t_nodes: Vec<usize> = c.iter().flat_map(|&u| nodes_of[u].iter().copied()).collect();
    t_nodes.sort_unstable();
    t_nodes.dedup();
    let th = td.tree.induced(&t_nodes);
    if !th.graph.is_tree() {
        return Err(PipelineError::Internal(format!(
            "nodes containing {c:?} do not span a subtree"
        )));
    }
    let mut hat: Vec<Vertex> = h.iter().chain(c).copied().collect();
    hat.sort_unstable();
    let restricted = th
        .to_host
        .iter()
        .map(|&x| {
            td.bags[x]
                .iter()
                .copied()
                .filter(|v| hat.binary_search(v).is_ok())
                .collect()
        })
        .collect();
    let td_h = TreeDecomposition::new(th.graph.clone(), restricted);
    verify_tree_decomposition_induced(gf, &hat, &td_h).map_err(|v| {
        PipelineError::Internal(format!("restriction to the component of {} is invalid: {v}", h[0]))
    })?;
    let mut parts = Vec::with_capacity(c.len());
    for &u in c {
        let local: Vec<usize> = nodes_of[u]
            .iter()
            .map(|&x| th.to_local(x).expect("T[u] lies inside T_H"))
            .collect();
        let sub = th.graph.induced(&local);
        let (_, pd_u) = tree_pathwidth(&sub.graph)?;
        parts.push(SubtreePart {
            nodes: local,
            pd: PathDecomposition::new(pd_u.bags.iter().map(|b| sub.map_to_host(b)).collect()),
        });
    }
    let pd_t = combine_subtrees(&th.graph, &parts)?;
    if pd_t.max_bag_size() > cap {
        return Err(PipelineError::Internal(format!(
            "path decomposition of T_H has a bag of {} nodes, above {cap}",
            pd_t.max_bag_size()
        )));
    }
    Ok(blowup_unchecked(&td_h, &pd_t).bags)
}
