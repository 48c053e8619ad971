//! Minor containment by branch-set backtracking.
//!
//! Host vertices are visited in a fixed order and each is either left out or
//! assigned to a pattern vertex. Once every neighbour of a part of a branch
//! set has been visited that part can no longer grow, which prunes
//! disconnected branch sets and pattern edges that can no longer be
//! realized.
//!
//! The future of a partial assignment depends only on the labels of visited
//! vertices that still have unvisited neighbours, how those vertices are
//! connected within their branch sets, which branch sets are open, and which
//! pattern edges are realized. Failed states are remembered under that key,
//! which bounds the search by the vertex separation of the visit order.

use std::collections::HashSet;

use super::{within, OracleError, OracleLimits};
use crate::graph::{Graph, MinorModel, Vertex};

/// Searches for a model of `h` in `g`. Returns `None` when `h` is not a
/// minor of `g`.
pub fn minor_contains(
    g: &Graph,
    h: &Graph,
    limits: &OracleLimits,
) -> Result<Option<MinorModel>, OracleError> {
    within("minor oracle (host)", g.n(), limits.max_minor_host)?;
    within("minor oracle (pattern)", h.n(), limits.max_minor_pattern)?;
    if h.n() > g.n() || h.m() > g.m() || cycle_rank(h) > cycle_rank(g) {
        return Ok(None);
    }
    let order = visit_order(g);
    let mut search = Search {
        nb: g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect(),
        pattern_edges: h.edges().collect(),
        sets: vec![0; h.n()],
        order,
        failed: HashSet::new(),
    };
    let unvisited = search.order.iter().fold(0u64, |m, &v| m | 1 << v);
    if !search.run(0, unvisited) {
        return Ok(None);
    }
    let branch_sets = search
        .sets
        .iter()
        .map(|&m| (0..g.n()).filter(|&v| m & 1 << v != 0).collect())
        .collect();
    Ok(Some(MinorModel { branch_sets }))
}

/// `m - n + c`, which no minor operation increases.
fn cycle_rank(g: &Graph) -> usize {
    g.m() + g.components().len() - g.n()
}

/// Largest number of visited vertices with an unvisited neighbour.
fn separation(g: &Graph, order: &[Vertex]) -> usize {
    let mut placed = vec![false; g.n()];
    let mut open: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut boundary = 0usize;
    let mut worst = 0;
    for &v in order {
        placed[v] = true;
        boundary += usize::from(open[v] > 0);
        for &u in g.neighbors(v) {
            open[u] -= 1;
            if open[u] == 0 && placed[u] {
                boundary -= 1;
            }
        }
        worst = worst.max(boundary);
    }
    worst
}

/// A visit order with small vertex separation, so that branch sets become
/// finished, and prunable, early and few visited vertices matter for the
/// future. Greedy low-boundary orders and depth-first orders are tried from
/// every start vertex and the best is kept.
fn visit_order(g: &Graph) -> Vec<Vertex> {
    let mut best: Option<(usize, Vec<Vertex>)> = None;
    for s in g.vertices() {
        for order in [greedy_order(g, s), depth_first_order(g, s)] {
            let w = separation(g, &order);
            if best.as_ref().is_none_or(|b| w < b.0) {
                best = Some((w, order));
            }
        }
    }
    best.map(|b| b.1).unwrap_or_default()
}

fn greedy_order(g: &Graph, start: Vertex) -> Vec<Vertex> {
    let mut placed = vec![false; g.n()];
    let mut open: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut order = Vec::with_capacity(g.n());
    for _ in 0..g.n() {
        let v = if order.is_empty() {
            start
        } else {
            g.vertices()
                .filter(|&v| !placed[v])
                .min_by_key(|&v| {
                    let closing = g
                        .neighbors(v)
                        .iter()
                        .filter(|&&u| placed[u] && open[u] == 1)
                        .count();
                    let touches = g.neighbors(v).iter().any(|&u| placed[u]);
                    (!touches, open[v] as isize - closing as isize, v)
                })
                .expect("an unplaced vertex remains")
        };
        placed[v] = true;
        for &u in g.neighbors(v) {
            open[u] -= 1;
        }
        order.push(v);
    }
    order
}

fn depth_first_order(g: &Graph, start: Vertex) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for s in std::iter::once(start).chain(g.vertices()) {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            order.push(v);
            stack.extend(g.neighbors(v).iter().rev().filter(|&&w| !seen[w]));
        }
    }
    order
}

struct Search {
    nb: Vec<u64>,
    pattern_edges: Vec<(Vertex, Vertex)>,
    sets: Vec<u64>,
    order: Vec<Vertex>,
    failed: HashSet<Vec<u8>>,
}

impl Search {
    fn reach(&self, set: u64) -> u64 {
        let mut out = 0;
        let mut rest = set;
        while rest != 0 {
            out |= self.nb[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out
    }

    /// Whether unvisited vertices can still link `a` to `b`.
    fn joinable(&self, a: u64, b: u64, unvisited: u64) -> bool {
        let mut region = self.reach(a) & unvisited;
        loop {
            let touch = self.reach(region);
            if touch & b != 0 {
                return true;
            }
            let grown = region | (touch & unvisited);
            if grown == region {
                return false;
            }
            region = grown;
        }
    }

    /// False if the partial assignment can no longer be completed.
    fn viable(&self, unvisited: u64) -> bool {
        let empty = self.sets.iter().filter(|&&s| s == 0).count();
        if empty > unvisited.count_ones() as usize {
            return false;
        }
        for &set in &self.sets {
            if set == 0 {
                continue;
            }
            // A finished part of a branch set must be all of it.
            let mut rest = set;
            while rest != 0 {
                let mut part = rest & rest.wrapping_neg();
                loop {
                    let grown = part | (self.reach(part) & set);
                    if grown == part {
                        break;
                    }
                    part = grown;
                }
                if part != set && self.reach(part) & unvisited == 0 {
                    return false;
                }
                rest &= !part;
            }
        }
        for &(a, b) in &self.pattern_edges {
            let (sa, sb) = (self.sets[a], self.sets[b]);
            if sa != 0 && sb != 0 && self.reach(sa) & sb != 0 {
                continue;
            }
            let closed = |s: u64| s != 0 && self.reach(s) & unvisited == 0;
            if closed(sa) || closed(sb) {
                return false;
            }
            if sa != 0 && sb != 0 && !self.joinable(sa, sb, unvisited) {
                return false;
            }
        }
        true
    }

    /// Parts of `set` as connected vertex masks.
    fn parts(&self, set: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut rest = set;
        while rest != 0 {
            let mut part = rest & rest.wrapping_neg();
            loop {
                let grown = part | (self.reach(part) & set);
                if grown == part {
                    break;
                }
                part = grown;
            }
            out.push(part);
            rest &= !part;
        }
        out
    }

    fn key(&self, i: usize, unvisited: u64) -> Vec<u8> {
        let visited = !unvisited & self.order.iter().fold(0u64, |m, &v| m | 1 << v);
        let mut key = (i as u32).to_le_bytes().to_vec();
        let mut frontier: Vec<Vertex> = Vec::new();
        let mut rest = visited;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.nb[v] & unvisited != 0 {
                frontier.push(v);
            }
        }
        let mut part_of = vec![u8::MAX; self.nb.len()];
        for &set in &self.sets {
            for (j, part) in self.parts(set).into_iter().enumerate() {
                let mut rest = part;
                while rest != 0 {
                    part_of[rest.trailing_zeros() as usize] = j as u8;
                    rest &= rest - 1;
                }
            }
        }
        for &v in &frontier {
            let label = self
                .sets
                .iter()
                .position(|&s| s & 1 << v != 0)
                .map_or(u8::MAX, |p| p as u8);
            key.push(label);
            key.push(part_of[v]);
        }
        key.push(u8::MAX);
        key.extend(self.sets.iter().map(|&set| u8::from(set != 0)));
        for &(a, b) in &self.pattern_edges {
            let (sa, sb) = (self.sets[a], self.sets[b]);
            key.push(u8::from(sa != 0 && self.reach(sa) & sb != 0));
        }
        key
    }

    fn run(&mut self, i: usize, unvisited: u64) -> bool {
        if i == self.order.len() {
            return true;
        }
        let key = self.key(i, unvisited);
        if self.failed.contains(&key) {
            return false;
        }
        if self.explore(i, unvisited) {
            return true;
        }
        self.failed.insert(key);
        false
    }

    fn explore(&mut self, i: usize, unvisited: u64) -> bool {
        let x = self.order[i];
        let bit = 1u64 << x;
        let rest = unvisited & !bit;
        let k = self.sets.len();
        // Grow a neighbouring branch set first, then open a new one, and
        // leave `x` out last.
        let mut labels: Vec<usize> = (0..k)
            .filter(|&p| self.sets[p] != 0 && self.nb[x] & self.sets[p] != 0)
            .collect();
        labels.extend((0..k).filter(|&p| self.sets[p] == 0));
        labels.extend((0..k).filter(|&p| self.sets[p] != 0 && self.nb[x] & self.sets[p] == 0));
        for p in labels {
            self.sets[p] |= bit;
            if self.viable(rest) && self.run(i + 1, rest) {
                return true;
            }
            self.sets[p] &= !bit;
        }
        self.viable(rest) && self.run(i + 1, rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generators, verify_minor_model};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
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

    /// Every assignment of host vertices to pattern vertices or to nothing.
    fn brute_force(g: &Graph, h: &Graph) -> bool {
        let k = h.n();
        let mut label = vec![0usize; g.n()];
        loop {
            let sets: Vec<Vec<Vertex>> = (0..k)
                .map(|p| g.vertices().filter(|&v| label[v] == p + 1).collect())
                .collect();
            let model = MinorModel { branch_sets: sets };
            if verify_minor_model(g, h, &model).is_ok() {
                return true;
            }
            let mut i = 0;
            loop {
                if i == g.n() {
                    return false;
                }
                label[i] += 1;
                if label[i] <= k {
                    break;
                }
                label[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn small_positive_and_negative_cases() {
        let k4 = generators::complete(4).unwrap();
        let k3 = generators::complete(3).unwrap();
        let model = minor_contains(&k4, &k3, &limits()).unwrap().unwrap();
        verify_minor_model(&k4, &k3, &model).unwrap();
        for seed in 0..5 {
            let t = generators::random_tree(14, seed).unwrap();
            assert_eq!(minor_contains(&t, &k3, &limits()).unwrap(), None);
        }
        let c6 = generators::cycle(6).unwrap();
        assert!(minor_contains(&c6, &k3, &limits()).unwrap().is_some());
        assert_eq!(minor_contains(&c6, &k4, &limits()).unwrap(), None);
        let empty = Graph::new(0);
        assert!(minor_contains(&c6, &empty, &limits()).unwrap().is_some());
    }

    #[test]
    fn q_graph_inside_t_plus() {
        let host = generators::t_plus(2).unwrap();
        let pattern = generators::q_graph(1).unwrap();
        let model = minor_contains(&host, &pattern, &limits()).unwrap().unwrap();
        verify_minor_model(&host, &pattern, &model).unwrap();

        let host = generators::t_plus(4).unwrap();
        let pattern = generators::q_graph(2).unwrap();
        assert!(minor_contains(&host, &pattern, &limits()).is_err());
        let wide = OracleLimits {
            max_minor_host: 32,
            max_minor_pattern: 8,
            ..limits()
        };
        let model = minor_contains(&host, &pattern, &wide).unwrap().unwrap();
        verify_minor_model(&host, &pattern, &model).unwrap();
    }

    #[test]
    fn grid_minors() {
        let grid = generators::grid(3, 4).unwrap();
        let k4 = generators::complete(4).unwrap();
        let model = minor_contains(&grid, &k4, &limits()).unwrap().unwrap();
        verify_minor_model(&grid, &k4, &model).unwrap();
        let k5 = generators::complete(5).unwrap();
        assert_eq!(minor_contains(&grid, &k5, &limits()).unwrap(), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn agrees_with_brute_force(gn in 1usize..7, hn in 1usize..5, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(gn, 0.5, &mut rng);
            let h = random_graph(hn, 0.5, &mut rng);
            let found = minor_contains(&g, &h, &limits()).unwrap();
            if let Some(model) = &found {
                prop_assert!(verify_minor_model(&g, &h, model).is_ok());
            }
            prop_assert_eq!(found.is_some(), brute_force(&g, &h));
        }

        #[test]
        fn adding_edges_keeps_minors(gn in 2usize..9, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(gn, 0.4, &mut rng);
            let h = random_graph(rng.gen_range(1..5), 0.5, &mut rng);
            let mut bigger = g.clone();
            let u = rng.gen_range(0..gn);
            let v = rng.gen_range(0..gn);
            if u != v {
                bigger.ensure_edge(u, v).unwrap();
            }
            if minor_contains(&g, &h, &limits()).unwrap().is_some() {
                prop_assert!(minor_contains(&bigger, &h, &limits()).unwrap().is_some());
            }
        }
    }
}
