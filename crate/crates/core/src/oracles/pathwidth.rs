//! Pathwidth and layered pathwidth by dynamic programming over vertex
//! orderings.
//!
//! An ordering `v_1, ..., v_n` yields the boundary decomposition whose bag
//! for `v_i` is `{v_i}` together with the earlier vertices that still have a
//! neighbour among `v_i, ..., v_n`. This is exact for both measures. Take any
//! path decomposition and order the vertices by the first bag containing
//! them. Every boundary vertex `u` placed before `v` has a neighbour placed
//! no earlier than `v`; they share a bag at or after the first bag `B` of
//! `v`, while `u` already occurs at or before `B`, so `u` lies in `B`. Each
//! boundary bag is therefore contained in a bag of the original
//! decomposition, and no bag gains vertices in any layer.

use super::{within, OracleError, OracleLimits};
use crate::decomposition::PathDecomposition;
use crate::graph::{Graph, Layering, Vertex};

fn neighbour_masks(g: &Graph) -> Vec<u64> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn boundary(nb: &[u64], placed: u64) -> u64 {
    let mut out = 0;
    let mut rest = placed;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if nb[u] & !placed != 0 {
            out |= 1 << u;
        }
    }
    out
}

fn bits(mut mask: u64) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Minimizes, over orderings, the largest `cost(boundary, v)` paid when `v`
/// is placed. Returns the optimum and the boundary bags of the
/// lexicographically smallest optimal ordering.
fn best_ordering(nb: &[u64], cost: impl Fn(u64, usize) -> u8) -> (u8, Vec<Vec<Vertex>>) {
    let n = nb.len();
    if n == 0 {
        return (0, Vec::new());
    }
    let full: u64 = (1u64 << n) - 1;
    let mut h = vec![0u8; 1usize << n];
    for placed in (0..full).rev() {
        let b = boundary(nb, placed);
        let mut best = u8::MAX;
        let mut free = full & !placed;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= free - 1;
            let c = cost(b | 1 << v, v).max(h[(placed | 1 << v) as usize]);
            best = best.min(c);
        }
        h[placed as usize] = best;
    }
    let mut bags = Vec::with_capacity(n);
    let mut placed = 0u64;
    while placed != full {
        let b = boundary(nb, placed);
        let target = h[placed as usize];
        let v = (0..n)
            .find(|&v| {
                placed & 1 << v == 0 && cost(b | 1 << v, v).max(h[(placed | 1 << v) as usize]) == target
            })
            .expect("some vertex attains the optimum");
        bags.push(bits(b | 1 << v));
        placed |= 1 << v;
    }
    (h[0], bags)
}

/// Exact pathwidth with a witness decomposition.
pub fn exact_pathwidth(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<(usize, PathDecomposition), OracleError> {
    within("pathwidth oracle", g.n(), limits.max_pw_vertices)?;
    let nb = neighbour_masks(g);
    let (size, bags) = best_ordering(&nb, |bag, _| bag.count_ones() as u8);
    Ok((usize::from(size).saturating_sub(1), PathDecomposition::new(bags)))
}

/// Exact layered pathwidth of a connected graph, with a witness
/// decomposition and layering.
///
/// Layerings are enumerated as layer assignments with minimum 0 along a BFS
/// order from vertex 0; of each assignment and its mirror image only the
/// lexicographically smaller is evaluated. Ties keep the first optimum found.
pub fn exact_layered_pathwidth(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<(usize, PathDecomposition, Layering), OracleError> {
    within("layered pathwidth oracle", g.n(), limits.max_lpw_vertices)?;
    let n = g.n();
    if n == 0 {
        return Ok((0, PathDecomposition::default(), Layering::single_layer(g)));
    }
    if let Some(v) = g.distances(0).iter().position(Option::is_none) {
        return Err(OracleError::Disconnected {
            oracle: "layered pathwidth oracle",
            vertex: v,
        });
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[0] = true;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        for &w in g.neighbors(order[head]) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        head += 1;
    }

    let nb = neighbour_masks(g);
    let mut best: Option<(u8, Vec<Vec<Vertex>>, Vec<usize>)> = None;
    let mut layer = vec![usize::MAX; n];
    enumerate(g, &order, 0, &mut layer, &mut |assignment| {
        let top = *assignment.iter().max().unwrap();
        if assignment.iter().min() != Some(&0) {
            return;
        }
        let mirror: Vec<usize> = assignment.iter().map(|&i| top - i).collect();
        if mirror.as_slice() < assignment {
            return;
        }
        let masks: Vec<u64> = (0..=top)
            .map(|i| (0..n).filter(|&v| assignment[v] == i).fold(0, |m, v| m | 1 << v))
            .collect();
        let (value, bags) = best_ordering(&nb, |bag, _| {
            masks.iter().map(|&m| (bag & m).count_ones() as u8).max().unwrap_or(0)
        });
        if best.as_ref().is_none_or(|b| value < b.0) {
            best = Some((value, bags, assignment.to_vec()));
        }
    });
    let (value, bags, assignment) = best.expect("a connected graph has a layering");
    let layering = Layering::from_assignment(g, &assignment).expect("enumerated layerings are valid");
    Ok((usize::from(value), PathDecomposition::new(bags), layering))
}

fn enumerate(
    g: &Graph,
    order: &[Vertex],
    i: usize,
    layer: &mut [usize],
    visit: &mut impl FnMut(&[usize]),
) {
    if i == order.len() {
        visit(layer);
        return;
    }
    let v = order[i];
    let n = g.n();
    let candidates: Vec<usize> = if i == 0 {
        (0..n).collect()
    } else {
        let p = g
            .neighbors(v)
            .iter()
            .map(|&w| layer[w])
            .find(|&l| l != usize::MAX)
            .expect("BFS order places a neighbour first");
        (p.saturating_sub(1)..=(p + 1).min(n - 1)).collect()
    };
    for c in candidates {
        let fits = g
            .neighbors(v)
            .iter()
            .all(|&w| layer[w] == usize::MAX || layer[w].abs_diff(c) <= 1);
        if fits {
            layer[v] = c;
            enumerate(g, order, i + 1, layer, visit);
            layer[v] = usize::MAX;
        }
    }
}

/// Boundary decomposition of a greedy ordering: after a forced first
/// vertex, repeatedly place the vertex that leaves the smallest boundary,
/// ties broken by more placed neighbours and then the smaller id. Several
/// first vertices are tried and the narrowest result is kept. An upper bound
/// for graphs beyond the exact oracle's reach.
pub(crate) fn greedy_path_decomposition(g: &Graph) -> PathDecomposition {
    let n = g.n();
    let starts: Vec<Vertex> = if n <= GREEDY_STARTS {
        g.vertices().collect()
    } else {
        (0..GREEDY_STARTS).map(|i| i * n / GREEDY_STARTS).collect()
    };
    let mut best: Option<Vec<Vec<Vertex>>> = None;
    for start in starts {
        let bags = greedy_from(g, start);
        let width = bags.iter().map(Vec::len).max();
        if best.as_ref().map_or(true, |b| width < b.iter().map(Vec::len).max()) {
            best = Some(bags);
        }
    }
    PathDecomposition::new(best.unwrap_or_default())
}

const GREEDY_STARTS: usize = 64;

fn greedy_from(g: &Graph, start: Vertex) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut placed = vec![false; n];
    // Unplaced neighbours of each vertex.
    let mut open: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut frontier: Vec<Vertex> = Vec::new();
    let mut bags = Vec::with_capacity(n);
    for step in 0..n {
        let size = frontier.len();
        let v = if step == 0 {
            start
        } else {
            g.vertices()
                .filter(|&v| !placed[v])
                .min_by_key(|&v| {
                    let placed_nb = g.neighbors(v).iter().filter(|&&u| placed[u]);
                    let closing = placed_nb.clone().filter(|&&u| open[u] == 1).count();
                    let stays = usize::from(open[v] > placed_nb.clone().count());
                    (size + stays - closing, std::cmp::Reverse(placed_nb.count()), v)
                })
                .expect("an unplaced vertex remains")
        };
        let mut bag = frontier.clone();
        bag.push(v);
        bags.push(bag);
        placed[v] = true;
        for &u in g.neighbors(v) {
            open[u] -= 1;
        }
        frontier.push(v);
        frontier.retain(|&u| open[u] > 0);
    }
    bags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{layered_width, verify_path_decomposition};
    use crate::graph::generators;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Width of the boundary decomposition of a fixed ordering.
    fn ordering_width(g: &Graph, order: &[Vertex]) -> usize {
        let mut placed = vec![false; g.n()];
        let mut worst = 0;
        for &v in order {
            let b = g
                .vertices()
                .filter(|&u| placed[u] && g.neighbors(u).iter().any(|&w| !placed[w]))
                .count();
            worst = worst.max(b);
            placed[v] = true;
        }
        worst
    }

    #[test]
    fn complete_graphs_and_cycles() {
        for n in 1..=8 {
            let (pw, pd) = exact_pathwidth(&generators::complete(n).unwrap(), &limits()).unwrap();
            assert_eq!(pw, n - 1);
            assert_eq!(pd.width(), pw);
        }
        for n in 4..=12 {
            let g = generators::cycle(n).unwrap();
            let (pw, pd) = exact_pathwidth(&g, &limits()).unwrap();
            assert_eq!(pw, 2, "C_{n}");
            verify_path_decomposition(&g, &pd).unwrap();
        }
    }

    #[test]
    fn q_graphs() {
        for k in 1..=3u32 {
            let g = generators::q_graph(k).unwrap();
            let (pw, pd) = exact_pathwidth(&g, &limits()).unwrap();
            assert_eq!(pw, k.div_ceil(2) as usize + 1, "Q_{k}");
            verify_path_decomposition(&g, &pd).unwrap();
        }
    }

    #[test]
    fn limits_are_enforced() {
        let g = generators::path(19).unwrap();
        assert!(matches!(
            exact_pathwidth(&g, &limits()),
            Err(OracleError::TooLarge { size: 19, limit: 18, .. })
        ));
        let g = generators::path(8).unwrap();
        assert!(exact_layered_pathwidth(&g, &limits()).is_err());
        let g = Graph::new(2);
        assert!(matches!(
            exact_layered_pathwidth(&g, &limits()),
            Err(OracleError::Disconnected { .. })
        ));
    }

    #[test]
    fn layered_small_cases() {
        let p3 = generators::path(3).unwrap();
        assert_eq!(exact_layered_pathwidth(&p3, &limits()).unwrap().0, 1);
        let c4 = generators::cycle(4).unwrap();
        let (ell, pd, layering) = exact_layered_pathwidth(&c4, &limits()).unwrap();
        assert_eq!(ell, 1);
        verify_path_decomposition(&c4, &pd).unwrap();
        assert_eq!(layered_width(&pd, &layering).unwrap(), 1);
        let k4 = generators::complete(4).unwrap();
        assert_eq!(exact_layered_pathwidth(&k4, &limits()).unwrap().0, 2);
        let single = Graph::new(1);
        assert_eq!(exact_layered_pathwidth(&single, &limits()).unwrap().0, 1);
    }

    #[test]
    fn greedy_is_valid_and_exact_on_easy_inputs() {
        let g = generators::grid(5, 7).unwrap();
        let pd = greedy_path_decomposition(&g);
        verify_path_decomposition(&g, &pd).unwrap();
        assert_eq!(pd.width(), 5);
        let c = generators::cycle(30).unwrap();
        assert_eq!(greedy_path_decomposition(&c).width(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn no_random_ordering_beats_the_optimum(n in 1usize..11, p in 0.1f64..0.8, seed in any::<u64>()) {
            let g = random_graph(n, p, seed);
            let (pw, pd) = exact_pathwidth(&g, &limits()).unwrap();
            prop_assert!(verify_path_decomposition(&g, &pd).is_ok());
            prop_assert_eq!(pd.width(), pw);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut order: Vec<Vertex> = g.vertices().collect();
            for _ in 0..200 {
                order.shuffle(&mut rng);
                prop_assert!(ordering_width(&g, &order) >= pw);
            }
        }

        #[test]
        fn layered_witnesses_are_consistent(n in 1usize..7, p in 0.2f64..0.9, seed in any::<u64>()) {
            let g = random_graph(n, p, seed);
            prop_assume!(g.is_connected());
            let (ell, pd, layering) = exact_layered_pathwidth(&g, &limits()).unwrap();
            prop_assert!(verify_path_decomposition(&g, &pd).is_ok());
            prop_assert!(crate::graph::is_layering(&g, layering.layers()).is_ok());
            prop_assert_eq!(layered_width(&pd, &layering).unwrap(), ell);
            let (pw, _) = exact_pathwidth(&g, &limits()).unwrap();
            prop_assert!(ell <= pw + 1);
        }

        #[test]
        fn greedy_upper_bounds_the_optimum(n in 1usize..12, p in 0.1f64..0.7, seed in any::<u64>()) {
            let g = random_graph(n, p, seed);
            let pd = greedy_path_decomposition(&g);
            prop_assert!(verify_path_decomposition(&g, &pd).is_ok());
            prop_assert!(pd.width() >= exact_pathwidth(&g, &limits()).unwrap().0);
        }
    }
}
