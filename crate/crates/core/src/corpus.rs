//! The deterministic fixture corpus.
//!
//! Graphs are named `<family>-<parameters>` and are identical on every run:
//! all randomness comes from fixed seeds.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{generators, write_edge_list, Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
}

impl Fixture {
    fn new(name: impl Into<String>, graph: Result<Graph, GraphError>) -> Self {
        Fixture {
            name: name.into(),
            graph: graph.expect("corpus parameters are valid"),
        }
    }
}

/// Connected graph built from `blocks` random pieces (trees, cycles,
/// outerplanar and series-parallel graphs, single edges), each glued by one
/// of its vertices onto a random vertex of the graph built so far.
pub fn random_block_graph(blocks: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(1);
    for _ in 0..blocks {
        let piece_seed = rng.gen();
        let piece = match rng.gen_range(0..5) {
            0 => generators::random_tree(rng.gen_range(2..8), piece_seed),
            1 => generators::cycle(rng.gen_range(3..9)),
            2 => generators::random_outerplanar(rng.gen_range(3..11), piece_seed),
            3 => generators::random_series_parallel(rng.gen_range(3..11), piece_seed),
            _ => generators::path(2),
        }
        .expect("piece parameters are valid");
        let anchor = rng.gen_range(0..g.n());
        let glue = rng.gen_range(0..piece.n());
        let offset = g.n();
        let host = |v: Vertex| match v.cmp(&glue) {
            std::cmp::Ordering::Equal => anchor,
            std::cmp::Ordering::Less => offset + v,
            std::cmp::Ordering::Greater => offset + v - 1,
        };
        for _ in 1..piece.n() {
            g.add_vertex();
        }
        for (u, v) in piece.edges() {
            g.add_edge(host(u), host(v)).expect("pieces are simple");
        }
    }
    g
}

/// The corpus: trees, cycles, outerplanar, series-parallel and Halin graphs,
/// grids, `Q_k`, `T_k^+` and glued block graphs, up to about 200 vertices.
pub fn fixture_corpus() -> Vec<Fixture> {
    let mut out = Vec::new();
    for n in [1, 2, 10, 50, 200] {
        out.push(Fixture::new(format!("path-{n}"), generators::path(n)));
    }
    for n in [3, 4, 5, 12, 50, 100, 200] {
        out.push(Fixture::new(format!("cycle-{n}"), generators::cycle(n)));
    }
    for h in 0..=6 {
        out.push(Fixture::new(format!("cbt-{h}"), generators::complete_binary_tree(h)));
    }
    for (n, seed) in [(10, 1), (25, 2), (50, 3), (100, 4), (150, 5), (200, 6)] {
        out.push(Fixture::new(format!("tree-{n}-s{seed}"), generators::random_tree(n, seed)));
    }
    for (n, seed) in [(6, 1), (12, 2), (30, 3), (60, 4), (100, 5), (200, 6)] {
        out.push(Fixture::new(
            format!("outerplanar-{n}-s{seed}"),
            generators::random_outerplanar(n, seed),
        ));
    }
    for (n, seed) in [(6, 1), (12, 2), (30, 3), (60, 4), (100, 5), (200, 6)] {
        out.push(Fixture::new(
            format!("sp-{n}-s{seed}"),
            generators::random_series_parallel(n, seed),
        ));
    }
    for (n, seed) in [(4, 1), (8, 2), (16, 3), (30, 4), (60, 5), (120, 6), (200, 7)] {
        out.push(Fixture::new(format!("halin-{n}-s{seed}"), generators::halin(seed, n)));
    }
    for (r, c) in [(2, 2), (3, 3), (4, 6), (8, 8), (10, 20), (14, 14)] {
        out.push(Fixture::new(format!("grid-{r}x{c}"), generators::grid(r, c)));
    }
    for k in 0..=5 {
        out.push(Fixture::new(format!("qk-{k}"), generators::q_graph(k)));
    }
    for k in 1..=6 {
        out.push(Fixture::new(format!("tplus-{k}"), generators::t_plus(k)));
    }
    for n in [4, 5] {
        out.push(Fixture::new(format!("complete-{n}"), generators::complete(n)));
    }
    for (blocks, seed) in [(3, 1), (8, 2), (15, 3), (25, 4), (40, 5)] {
        out.push(Fixture::new(
            format!("blocks-{blocks}-s{seed}"),
            Ok(random_block_graph(blocks, seed)),
        ));
    }
    out
}

/// Connected graphs on at most 7 vertices, small enough for every oracle.
pub fn small_graphs() -> Vec<Fixture> {
    let mut out = Vec::new();
    for n in 1..=7 {
        out.push(Fixture::new(format!("path-{n}"), generators::path(n)));
    }
    for n in 3..=7 {
        out.push(Fixture::new(format!("cycle-{n}"), generators::cycle(n)));
    }
    for n in 4..=6 {
        out.push(Fixture::new(format!("complete-{n}"), generators::complete(n)));
    }
    for h in 1..=2 {
        out.push(Fixture::new(format!("cbt-{h}"), generators::complete_binary_tree(h)));
    }
    out.push(Fixture::new("qk-1", generators::q_graph(1)));
    out.push(Fixture::new("tplus-1", generators::t_plus(1)));
    out.push(Fixture::new("grid-2x3", generators::grid(2, 3)));
    out.push(Fixture::new(
        "k33",
        Graph::from_edges(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))),
    ));
    out.push(Fixture::new(
        "wheel-6",
        Graph::from_edges(6, (1..6).flat_map(|i| [(0, i), (i, i % 5 + 1)])),
    ));
    for seed in 0..6 {
        let n = 4 + (seed as usize % 4);
        out.push(Fixture::new(format!("tree-{n}-s{seed}"), generators::random_tree(n, seed)));
        out.push(Fixture::new(
            format!("outerplanar-{n}-s{seed}"),
            generators::random_outerplanar(n, seed),
        ));
        out.push(Fixture::new(
            format!("sp-{n}-s{seed}"),
            generators::random_series_parallel(n, seed),
        ));
    }
    for (n, seed) in [(4, 0), (6, 1), (7, 2)] {
        out.push(Fixture::new(format!("halin-{n}-s{seed}"), generators::halin(seed, n)));
    }
    for seed in 0..4 {
        let g = random_block_graph(3, seed);
        if g.n() <= 7 {
            out.push(Fixture::new(format!("blocks-3-s{seed}"), Ok(g)));
        }
    }
    out
}

/// Writes every fixture of [`fixture_corpus`] as `<name>.edges` under `dir`.
pub fn write_fixtures(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for f in fixture_corpus() {
        let path = dir.join(format!("{}.edges", f.name));
        std::fs::write(&path, write_edge_list(&f.graph))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{blocks, parse_edge_list};
    use std::collections::HashSet;

    #[test]
    fn corpus_is_deterministic_and_uniquely_named() {
        let a = fixture_corpus();
        assert_eq!(a, fixture_corpus());
        let names: HashSet<_> = a.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names.len(), a.len());
        assert!(a.iter().all(|f| f.graph.n() <= 256));
        assert!(a.iter().any(|f| f.graph.n() >= 190));
    }

    #[test]
    fn small_graphs_are_connected_and_small() {
        let s = small_graphs();
        assert!(s.len() >= 30);
        for f in &s {
            assert!(f.graph.n() <= 7, "{}", f.name);
            assert!(f.graph.is_connected(), "{}", f.name);
        }
    }

    #[test]
    fn block_graphs_have_several_blocks() {
        let g = random_block_graph(15, 3);
        assert!(g.is_connected());
        assert!(blocks(&g).blocks.len() >= 15);
        assert_eq!(g, random_block_graph(15, 3));
    }

    #[test]
    fn fixtures_round_trip_through_files() {
        let dir = std::env::temp_dir().join(format!("corpus-test-{}", std::process::id()));
        let paths = write_fixtures(&dir).unwrap();
        assert_eq!(paths.len(), fixture_corpus().len());
        let text = std::fs::read_to_string(&paths[3]).unwrap();
        assert_eq!(parse_edge_list(&text).unwrap(), fixture_corpus()[3].graph);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
