//! Proptest strategies shared by unit tests.

use proptest::prelude::*;

use crate::graph::Graph;

/// Simple graphs with `0..=max_n` vertices.
pub fn arb_simple_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Simple graphs with `1..=max_n` vertices.
pub fn arb_nonempty_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_simple_graph(max_n).prop_filter("at least one vertex", |g| g.n() > 0)
}
