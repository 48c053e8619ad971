use super::{Graph, Vertex};

/// Block / cut-vertex structure of a graph.
///
/// A block is a maximal 2-connected subgraph, a bridge edge, or an isolated
/// vertex; all three kinds appear in `blocks` as sorted vertex lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForest {
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: Vec<Vertex>,
    pub isolated: Vec<Vertex>,
}

impl BlockForest {
    /// Indices of the blocks containing `v`.
    pub fn blocks_of(&self, v: Vertex) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.binary_search(&v).is_ok())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Hopcroft-Tarjan biconnected components, iterative.
pub fn blocks(g: &Graph) -> BlockForest {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut parent = vec![usize::MAX; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    let mut isolated = Vec::new();

    for s in g.vertices() {
        if disc[s] != usize::MAX {
            continue;
        }
        if g.degree(s) == 0 {
            isolated.push(s);
            blocks.push(vec![s]);
            disc[s] = timer;
            timer += 1;
            continue;
        }
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        let mut stack: Vec<(Vertex, usize)> = vec![(s, 0)];
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < g.degree(v) {
                let w = g.neighbors(v)[top.1];
                top.1 += 1;
                if disc[w] == usize::MAX {
                    parent[w] = v;
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, 0));
                } else if w != parent[v] && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            let Some(&(p, _)) = stack.last() else {
                continue;
            };
            low[p] = low[p].min(low[v]);
            if low[v] >= disc[p] {
                let mut block = Vec::new();
                while let Some((a, b)) = edge_stack.pop() {
                    block.push(a);
                    block.push(b);
                    if (a, b) == (p, v) {
                        break;
                    }
                }
                block.sort_unstable();
                block.dedup();
                blocks.push(block);
            }
        }
    }

    blocks.sort();
    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in b {
            count[v] += 1;
        }
    }
    let cut_vertices = (0..n).filter(|&v| count[v] >= 2).collect();
    BlockForest {
        blocks,
        cut_vertices,
        isolated,
    }
}
