//! Exact homomorphism counts.
//!
//! `hom(F, G)` factors over the components of `F`; a connected component
//! maps into exactly one component of `G`, so each connected pair is counted
//! separately by backtracking.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::graph::Graph;

/// Number of homomorphisms `F -> G`. Loops of `F` must land on loops of `G`.
pub fn hom(f: &Graph, g: &Graph) -> BigUint {
    let targets = Targets::new(g);
    let mut total = BigUint::one();
    for part in f.component_vertex_sets() {
        let c = Pattern::new(f, &part);
        let count: BigUint = targets.iter().map(|d| BigUint::from(c.count(d))).sum();
        if count.is_zero() {
            return count;
        }
        total *= count;
    }
    total
}

/// `hom(F, G)` for each `F` in `fs`.
pub fn hom_vector(fs: &[Graph], g: &Graph) -> Vec<BigUint> {
    let targets = Targets::new(g);
    fs.iter()
        .map(|f| {
            let mut total = BigUint::one();
            for part in f.component_vertex_sets() {
                let c = Pattern::new(f, &part);
                total *= targets.iter().map(|d| BigUint::from(c.count(d))).sum::<BigUint>();
            }
            total
        })
        .collect()
}

/// True iff some homomorphism `F -> K` exists; stops at the first one.
pub fn is_colourable(f: &Graph, k: &Graph) -> bool {
    let targets = Targets::new(k);
    f.component_vertex_sets().iter().all(|part| {
        let c = Pattern::new(f, part);
        targets.iter().any(|d| c.exists(d))
    })
}

/// Homomorphisms exist in both directions.
pub fn homomorphically_equivalent(f: &Graph, k: &Graph) -> bool {
    is_colourable(f, k) && is_colourable(k, f)
}

/// Connected components of the target with a dense adjacency matrix.
struct Targets {
    parts: Vec<Dense>,
}

struct Dense {
    n: usize,
    adj: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
    all: Vec<usize>,
}

impl Dense {
    fn edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b]
    }
}

impl Targets {
    fn new(g: &Graph) -> Self {
        let parts = g
            .component_vertex_sets()
            .iter()
            .map(|set| {
                let d = g.induced(set);
                let n = d.n();
                let mut adj = vec![false; n * n];
                for (a, b) in d.edges() {
                    adj[a * n + b] = true;
                    adj[b * n + a] = true;
                }
                Dense {
                    n,
                    adj,
                    neighbors: (0..n).map(|v| d.neighbors(v).to_vec()).collect(),
                    all: (0..n).collect(),
                }
            })
            .collect();
        Targets { parts }
    }

    fn iter(&self) -> impl Iterator<Item = &Dense> {
        self.parts.iter()
    }
}

/// A connected pattern graph with a fixed search order: the max-degree vertex
/// first, then breadth-first with higher degrees earlier.
struct Pattern {
    looped: Vec<bool>,
    // back[i]: earlier positions adjacent to position i
    back: Vec<Vec<usize>>,
}

impl Pattern {
    fn new(f: &Graph, vertices: &[usize]) -> Self {
        let c = f.induced(vertices);
        let n = c.n();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        if let Some(start) = (0..n).max_by_key(|&v| (c.degree(v), std::cmp::Reverse(v))) {
            seen[start] = true;
            order.push(start);
            let mut head = 0;
            while head < order.len() {
                let v = order[head];
                head += 1;
                let mut next: Vec<usize> =
                    c.neighbors(v).iter().copied().filter(|&w| !seen[w]).collect();
                next.sort_by_key(|&w| (std::cmp::Reverse(c.degree(w)), w));
                for w in next {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut b: Vec<usize> = c
                    .neighbors(v)
                    .iter()
                    .map(|&w| pos[w])
                    .filter(|&j| j < i)
                    .collect();
                b.sort_unstable();
                b
            })
            .collect();
        Pattern {
            looped: order.iter().map(|&v| c.has_loop(v)).collect(),
            back,
        }
    }

    fn len(&self) -> usize {
        self.looped.len()
    }

    fn count(&self, d: &Dense) -> u128 {
        let mut image = vec![0; self.len()];
        let mut total = 0u128;
        self.search(d, 0, &mut image, &mut || {
            total += 1;
            false
        });
        total
    }

    fn exists(&self, d: &Dense) -> bool {
        let mut image = vec![0; self.len()];
        self.search(d, 0, &mut image, &mut || true)
    }

    fn candidates<'a>(&self, d: &'a Dense, i: usize, image: &[usize]) -> &'a [usize] {
        match self.back[i].first() {
            Some(&j) => &d.neighbors[image[j]],
            None => &d.all,
        }
    }

    fn fits(&self, d: &Dense, i: usize, x: usize, image: &[usize]) -> bool {
        (!self.looped[i] || d.edge(x, x)) && self.back[i][1..].iter().all(|&j| d.edge(x, image[j]))
    }

    /// Calls `found` once per homomorphism until it returns true.
    fn search(
        &self,
        d: &Dense,
        i: usize,
        image: &mut [usize],
        found: &mut dyn FnMut() -> bool,
    ) -> bool {
        let n = self.len();
        let cands = self.candidates(d, i, image);
        let first_back = self.back[i].is_empty();
        let ok = |x: usize, image: &[usize]| {
            if first_back {
                !self.looped[i] || d.edge(x, x)
            } else {
                self.fits(d, i, x, image)
            }
        };
        if i + 1 == n {
            for &x in cands {
                if ok(x, image) && found() {
                    return true;
                }
            }
            return false;
        }
        for &x in cands {
            if ok(x, image) {
                image[i] = x;
                if self.search(d, i + 1, image, found) {
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_graphs;
    use crate::graph::{categorical_product, disjoint_union, parse_graph};
    use crate::testutil::arb_simple_graph;
    use proptest::prelude::*;

    /// Tries every map `V(F) -> V(G)`.
    fn naive_hom(f: &Graph, g: &Graph) -> u64 {
        let (n, m) = (f.n(), g.n());
        if n == 0 {
            return 1;
        }
        if m == 0 {
            return 0;
        }
        let edges = f.edge_list();
        let mut map = vec![0; n];
        let mut count = 0;
        loop {
            if edges.iter().all(|&(u, v)| g.has_edge(map[u], map[v])) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                map[k] += 1;
                if map[k] < m {
                    break;
                }
                map[k] = 0;
                k += 1;
            }
        }
    }

    fn g(text: &str) -> Graph {
        parse_graph(text).unwrap()
    }

    fn h(f: &Graph, g: &Graph) -> u64 {
        u64::try_from(hom(f, g)).unwrap()
    }

    #[test]
    fn spec_examples() {
        let k1 = Graph::empty(1);
        let k2 = Graph::complete(2);
        let k3 = Graph::complete(3);
        for x in [g("5 0-1 1-2 3-4"), Graph::cycle(5), Graph::empty(3), Graph::looped_vertex()] {
            assert_eq!(h(&k1, &x), x.n() as u64);
        }
        assert_eq!(h(&k2, &Graph::cycle(5)), 10);
        assert_eq!(h(&k3, &k3), 6);
        assert_eq!(h(&Graph::cycle(4), &k2), 2);
        assert_eq!(
            hom_vector(&[k1.clone(), k2.clone()], &k3),
            vec![BigUint::from(3u8), BigUint::from(6u8)]
        );
        assert!(hom_vector(&[], &k3).is_empty());
        assert_eq!(h(&k3, &k2), 0);
    }

    #[test]
    fn empty_conventions() {
        assert_eq!(h(&Graph::empty(0), &Graph::empty(0)), 1);
        assert_eq!(h(&Graph::empty(0), &Graph::complete(3)), 1);
        assert_eq!(h(&Graph::empty(1), &Graph::empty(0)), 0);
        assert!(is_colourable(&Graph::empty(0), &Graph::empty(0)));
        assert!(!is_colourable(&Graph::empty(2), &Graph::empty(0)));
    }

    #[test]
    fn loops_must_map_to_loops() {
        let looped = Graph::looped_vertex();
        assert_eq!(h(&looped, &Graph::complete(3)), 0);
        assert_eq!(h(&looped, &g("3 0-0 1-2 2-2")), 2);
        // everything maps onto a looped vertex
        assert_eq!(h(&Graph::complete(4), &looped), 1);
        assert_eq!(h(&g("2 0-1 1-1"), &g("2 0-1 1-1")), 2);
        assert_eq!(h(&g("3 0-1 1-1"), &g("2 0-1 1-1")), 4);
    }

    #[test]
    fn colourability_examples() {
        let k2 = Graph::complete(2);
        assert!(!is_colourable(&Graph::cycle(5), &k2));
        assert!(is_colourable(&Graph::cycle(6), &k2));
        assert!(homomorphically_equivalent(&Graph::path(3), &k2));
        assert!(!homomorphically_equivalent(&Graph::complete(3), &k2));
        for x in all_graphs(4, false) {
            assert!(is_colourable(&x, &x));
            assert!(homomorphically_equivalent(&x, &x));
        }
    }

    #[test]
    fn matches_naive_oracle_on_small_graphs() {
        let simple: Vec<Graph> = (0..=4).flat_map(|n| all_graphs(n, false)).collect();
        for f in &simple {
            for x in &simple {
                assert_eq!(h(f, x), naive_hom(f, x), "hom({f}, {x})");
                assert_eq!(is_colourable(f, x), naive_hom(f, x) > 0);
            }
        }
        let looped: Vec<Graph> = (0..=3).flat_map(|n| all_graphs(n, true)).collect();
        for f in &looped {
            for x in &looped {
                assert_eq!(h(f, x), naive_hom(f, x), "hom({f}, {x})");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn multiplicative_over_left_unions(
            f1 in arb_simple_graph(4), f2 in arb_simple_graph(4), x in arb_simple_graph(6)
        ) {
            prop_assert_eq!(hom(&disjoint_union(&f1, &f2), &x), hom(&f1, &x) * hom(&f2, &x));
        }

        #[test]
        fn multiplicative_over_right_products(
            f in arb_simple_graph(5), g1 in arb_simple_graph(4), g2 in arb_simple_graph(4)
        ) {
            prop_assert_eq!(hom(&f, &categorical_product(&g1, &g2)), hom(&f, &g1) * hom(&f, &g2));
        }

        #[test]
        fn additive_over_right_unions_for_connected(
            f in arb_simple_graph(5), g1 in arb_simple_graph(6), g2 in arb_simple_graph(6)
        ) {
            prop_assume!(f.is_connected());
            prop_assert_eq!(hom(&f, &disjoint_union(&g1, &g2)), hom(&f, &g1) + hom(&f, &g2));
        }
    }
}
