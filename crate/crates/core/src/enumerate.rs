//! Exhaustive and random generation of small labeled graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;

/// Every labeled graph on `n` vertices, simple ones only unless `with_loops`.
/// Ordered by the bitmask over the sorted pair list.
pub fn all_graphs(n: usize, with_loops: bool) -> Vec<Graph> {
    let pairs = vertex_pairs(n, with_loops);
    assert!(pairs.len() < 24, "too many labeled graphs on {n} vertices");
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).expect("pairs are distinct and in range")
        })
        .collect()
}

/// All simple graphs with at most `max_n` vertices, by increasing order.
pub fn all_simple_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (0..=max_n).flat_map(|n| all_graphs(n, false)).collect()
}

fn vertex_pairs(n: usize, with_loops: bool) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..n {
        let start = if with_loops { u } else { u + 1 };
        for v in start..n {
            pairs.push((u, v));
        }
    }
    pairs
}

/// Erdős–Rényi `G(n, p)` without loops.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = vertex_pairs(n, false)
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, &edges).expect("pairs are distinct and in range")
}

/// Random simple graph with a uniformly chosen order in `1..=max_n` and edge
/// probability 1/2.
pub fn random_small_graph<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    random_graph(rng, n, 0.5)
}

/// A uniformly random relabeling of `g`.
pub fn random_relabel<R: Rng + ?Sized>(rng: &mut R, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts_match_powers_of_two() {
        assert_eq!(all_graphs(0, false).len(), 1);
        assert_eq!(all_graphs(3, false).len(), 8);
        assert_eq!(all_graphs(3, true).len(), 64);
        assert_eq!(all_graphs(4, false).len(), 64);
        assert_eq!(all_simple_graphs_up_to(3).len(), 1 + 1 + 2 + 8);
    }

    #[test]
    fn random_graphs_are_simple_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_small_graph(&mut a, 6);
            assert!(g.is_simple());
            assert!((1..=6).contains(&g.n()));
            assert_eq!(g, random_small_graph(&mut b, 6));
        }
    }
}
