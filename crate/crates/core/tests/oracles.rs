mod common;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use layered_decomp::corpus::{fixture_corpus, small_graphs};
use layered_decomp::decomposition::tree_pathwidth;
use layered_decomp::graph::{generators, verify_minor_model};
use layered_decomp::oracles::{exact_layered_pathwidth, exact_pathwidth, minor_contains, OracleLimits};
use layered_decomp::Graph;

fn limits() -> OracleLimits {
    OracleLimits::default()
}

/// Width of the vertex-separation decomposition along `order`.
fn ordering_width(g: &Graph, order: &[usize]) -> usize {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    (0..order.len())
        .map(|i| {
            order[..i]
                .iter()
                .filter(|&&u| g.neighbors(u).iter().any(|&w| pos[w] >= i))
                .count()
        })
        .max()
        .unwrap_or(0)
}

#[test]
fn random_orderings_never_beat_the_optimum() {
    let graphs = [
        generators::q_graph(2).unwrap(),
        generators::grid(3, 5).unwrap(),
        generators::halin(2, 14).unwrap(),
        generators::random_outerplanar(16, 9).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(10_000);
    for g in &graphs {
        let (pw, pd) = exact_pathwidth(g, &limits()).unwrap();
        common::check_path(g, &pd.bags, None).unwrap();
        assert_eq!(common::max_bag(&pd.bags), pw + 1);
        let mut order: Vec<usize> = g.vertices().collect();
        for _ in 0..10_000 {
            order.shuffle(&mut rng);
            assert!(ordering_width(g, &order) >= pw);
        }
    }
}

#[test]
fn tree_pathwidth_matches_the_oracle_on_corpus_trees() {
    for f in fixture_corpus() {
        if f.graph.n() <= 15 && f.graph.is_tree() {
            let (fast, _) = tree_pathwidth(&f.graph).unwrap();
            let (exact, _) = exact_pathwidth(&f.graph, &limits()).unwrap();
            assert_eq!(fast, exact, "{}", f.name);
        }
    }
}

#[test]
fn layered_pathwidth_is_at_most_pathwidth_plus_one() {
    for f in small_graphs() {
        let (lpw, pd, layering) = exact_layered_pathwidth(&f.graph, &limits()).unwrap();
        common::check_path(&f.graph, &pd.bags, None).unwrap();
        common::check_layering(&f.graph, layering.layers()).unwrap();
        assert_eq!(common::layered_width(&pd.bags, layering.layers()), lpw, "{}", f.name);
        let (pw, _) = exact_pathwidth(&f.graph, &limits()).unwrap();
        assert!(lpw <= pw + 1, "{}", f.name);
    }
}

#[test]
fn minor_containment_is_monotone_under_edge_addition() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let patterns = [generators::complete(3).unwrap(), generators::complete(4).unwrap(), generators::cycle(4).unwrap()];
    for _ in 0..30 {
        let n = rng.gen_range(4..=9);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.3) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let h = patterns.choose(&mut rng).unwrap();
        let before = minor_contains(&g, h, &limits()).unwrap();
        if let Some(model) = &before {
            verify_minor_model(&g, h, model).unwrap();
        }
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            g.ensure_edge(u, v).unwrap();
        }
        let after = minor_contains(&g, h, &limits()).unwrap();
        assert!(before.is_none() || after.is_some());
    }
}

#[test]
fn oracles_refuse_oversized_inputs() {
    let big = generators::grid(5, 5).unwrap();
    assert!(exact_pathwidth(&big, &limits()).is_err());
    assert!(exact_layered_pathwidth(&generators::path(8).unwrap(), &limits()).is_err());
    assert!(minor_contains(&big, &generators::complete(3).unwrap(), &limits()).is_err());
}
