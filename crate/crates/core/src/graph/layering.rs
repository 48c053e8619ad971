use crate::error::{bail, Check, Violation};

use super::{Graph, GraphError, Vertex};

/// An ordered partition `V_0, ..., V_t` of the vertices such that every edge
/// joins two vertices in the same or in consecutive layers.
///
/// Empty layers are tolerated in the middle; leading and trailing empty layers
/// are trimmed so that the first layer is always occupied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    layers: Vec<Vec<Vertex>>,
    layer_of: Vec<usize>,
}

impl Layering {
    /// Builds a layering of `g` from explicit parts, validating it.
    pub fn from_layers(g: &Graph, layers: Vec<Vec<Vertex>>) -> Result<Self, Violation> {
        is_layering(g, &layers)?;
        Ok(Self::from_parts_unchecked(g.n(), layers))
    }

    /// Builds a layering from a per-vertex layer index, validating it.
    pub fn from_assignment(g: &Graph, layer_of: &[usize]) -> Result<Self, Violation> {
        if layer_of.len() != g.n() {
            bail!(
                "assignment covers {} vertices, graph has {}",
                layer_of.len(),
                g.n()
            );
        }
        let t = layer_of.iter().copied().max().map_or(0, |t| t + 1);
        let mut layers = vec![Vec::new(); t];
        for (v, &i) in layer_of.iter().enumerate() {
            layers[i].push(v);
        }
        Self::from_layers(g, layers)
    }

    /// All vertices in one layer. Always valid.
    pub fn single_layer(g: &Graph) -> Self {
        Self::from_parts_unchecked(g.n(), vec![g.vertices().collect()])
    }

    pub(crate) fn from_parts_unchecked(n: usize, mut layers: Vec<Vec<Vertex>>) -> Self {
        while layers.last().is_some_and(Vec::is_empty) {
            layers.pop();
        }
        let lead = layers.iter().take_while(|l| l.is_empty()).count();
        layers.drain(..lead);
        let mut layer_of = vec![usize::MAX; n];
        for (i, layer) in layers.iter_mut().enumerate() {
            layer.sort_unstable();
            for &v in layer.iter() {
                layer_of[v] = i;
            }
        }
        Layering { layers, layer_of }
    }

    pub fn layers(&self) -> &[Vec<Vertex>] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Layer index of `v`, or `None` if `v` is not covered.
    pub fn layer_of(&self, v: Vertex) -> Option<usize> {
        self.layer_of.get(v).copied().filter(|&i| i != usize::MAX)
    }
}

/// Layering by exact distance from `root`.
pub fn bfs_layering(g: &Graph, root: Vertex) -> Result<Layering, GraphError> {
    if root >= g.n() {
        return Err(GraphError::VertexOutOfRange {
            vertex: root,
            n: g.n(),
        });
    }
    let dist = g.distances(root);
    let mut layers: Vec<Vec<Vertex>> = Vec::new();
    for (v, d) in dist.iter().enumerate() {
        let Some(d) = *d else {
            return Err(GraphError::Disconnected {
                root,
                unreachable: v,
            });
        };
        if layers.len() <= d {
            layers.resize(d + 1, Vec::new());
        }
        layers[d].push(v);
    }
    Ok(Layering::from_parts_unchecked(g.n(), layers))
}

/// Checks that `parts` partitions `V(g)` and that every edge spans at most one
/// layer step. Empty parts are allowed.
pub fn is_layering(g: &Graph, parts: &[Vec<Vertex>]) -> Check {
    let mut layer_of = vec![usize::MAX; g.n()];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            if v >= g.n() {
                bail!("layer {i} contains vertex {v}, which is not in the graph");
            }
            if layer_of[v] != usize::MAX {
                bail!("vertex {v} appears in layers {} and {i}", layer_of[v]);
            }
            layer_of[v] = i;
        }
    }
    if let Some(v) = layer_of.iter().position(|&i| i == usize::MAX) {
        bail!("vertex {v} is in no layer");
    }
    for (u, v) in g.edges() {
        let (a, b) = (layer_of[u], layer_of[v]);
        if a.abs_diff(b) > 1 {
            bail!("edge {u}-{v} joins layers {a} and {b}");
        }
    }
    Ok(())
}
