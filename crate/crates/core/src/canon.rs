//! Canonical forms for small graphs.
//!
//! A labeling is scored by its sequence of per-position blocks
//! `(loop, degree, adjacency to earlier positions)`; the canonical labeling is
//! the one with the lexicographically largest sequence. The search only
//! branches on vertices achieving the maximal block at each position and
//! skips all but one vertex of each twin class, since swapping twins is an
//! automorphism fixing everything placed so far.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex bound used by [`canonical_form`].
pub const DEFAULT_SIZE_BOUND: usize = 12;

/// Largest bound accepted by [`canonical_form_with_bound`].
pub const MAX_SIZE_BOUND: usize = 64;

/// Isomorphism-invariant representative of a graph. Ordered by vertex count,
/// then edge count, then the sorted canonical edge list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    edge_count: usize,
    edges: Vec<(usize, usize)>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted edge list of the canonical labeling.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The canonically labeled graph.
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n, &self.edges).expect("canonical edges are valid")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)?;
        for (u, v) in &self.edges {
            write!(f, " {u}-{v}")?;
        }
        Ok(())
    }
}

/// Canonical form with the default vertex bound.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_bound(g, DEFAULT_SIZE_BOUND)
}

pub fn canonical_form_with_bound(g: &Graph, bound: usize) -> Result<CanonicalForm> {
    if bound > MAX_SIZE_BOUND {
        return Err(Error::InvalidBound(format!(
            "canonical form bound {bound} exceeds {MAX_SIZE_BOUND}"
        )));
    }
    if g.n() > bound {
        return Err(Error::SizeBound { n: g.n(), bound });
    }
    let order = canonical_order(g);
    let mut label = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        label[v] = pos;
    }
    let mut edges: Vec<_> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (label[u], label[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    Ok(CanonicalForm {
        n: g.n(),
        edge_count: edges.len(),
        edges,
    })
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        // still enforce the bound so both paths fail alike
        for x in [g, h] {
            if x.n() > DEFAULT_SIZE_BOUND {
                return Err(Error::SizeBound {
                    n: x.n(),
                    bound: DEFAULT_SIZE_BOUND,
                });
            }
        }
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

type Block = (bool, usize, u64);

struct Search<'a> {
    g: &'a Graph,
    placed: Vec<usize>,
    is_placed: Vec<bool>,
    blocks: Vec<Block>,
    best_blocks: Vec<Block>,
    best_order: Vec<usize>,
}

/// Vertex order (position -> vertex) of the canonical labeling.
fn canonical_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut s = Search {
        g,
        placed: Vec::with_capacity(n),
        is_placed: vec![false; n],
        blocks: Vec::with_capacity(n),
        best_blocks: Vec::new(),
        best_order: Vec::new(),
    };
    s.extend();
    s.best_order
}

impl Search<'_> {
    fn block(&self, v: usize) -> Block {
        let mut bits = 0u64;
        for (j, &w) in self.placed.iter().enumerate() {
            if self.g.has_edge(v, w) {
                bits |= 1 << (63 - j);
            }
        }
        (self.g.has_loop(v), self.g.degree(v), bits)
    }

    fn extend(&mut self) {
        let n = self.g.n();
        let i = self.placed.len();
        if i == n {
            if self.best_order.len() != n || self.blocks > self.best_blocks {
                self.best_blocks = self.blocks.clone();
                self.best_order = self.placed.clone();
            }
            return;
        }
        let candidates: Vec<(usize, Block)> = (0..n)
            .filter(|&v| !self.is_placed[v])
            .map(|v| (v, self.block(v)))
            .collect();
        let top = candidates.iter().map(|c| c.1).max().expect("a vertex remains");
        let mut tried: Vec<usize> = Vec::new();
        for &(v, b) in &candidates {
            if b != top || tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            self.blocks.push(b);
            if self.best_order.len() == n && self.blocks[..] < self.best_blocks[..=i] {
                self.blocks.pop();
                return;
            }
            self.placed.push(v);
            self.is_placed[v] = true;
            self.extend();
            self.is_placed[v] = false;
            self.placed.pop();
            self.blocks.pop();
        }
    }

    /// Same loop status and same neighbourhood outside `{u, v}`.
    fn twins(&self, u: usize, v: usize) -> bool {
        if self.g.has_loop(u) != self.g.has_loop(v) {
            return false;
        }
        let outside = |x: usize, other: usize| {
            self.g
                .neighbors(x)
                .iter()
                .copied()
                .filter(move |&w| w != x && w != other)
        };
        outside(u, v).eq(outside(v, u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{all_graphs, random_graph, random_relabel};
    use crate::graph::{categorical_product, disjoint_union, parse_graph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    fn g(text: &str) -> Graph {
        parse_graph(text).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Oracle key: the smallest sorted edge list over all relabelings.
    fn brute_key(g: &Graph, perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
        perms
            .iter()
            .map(|p| g.relabel(p).edge_list())
            .min()
            .unwrap()
    }

    #[test]
    fn spec_examples() {
        let p3a = g("3 0-1 1-2");
        let p3b = g("3 0-2 1-2");
        assert_eq!(canonical_form(&p3a), canonical_form(&p3b));
        assert_ne!(canonical_form(&Graph::complete(3)), canonical_form(&p3a));
        let two_k3 = disjoint_union(&Graph::complete(3), &Graph::complete(3));
        assert_ne!(canonical_form(&Graph::cycle(6)), canonical_form(&two_k3));
        assert!(are_isomorphic(&Graph::complete(3), &g("3 0-2 1-2 0-1")).unwrap());
        assert!(!are_isomorphic(&Graph::looped_vertex(), &Graph::empty(1)).unwrap());
        let k3k2 = categorical_product(&Graph::complete(3), &Graph::complete(2));
        assert!(are_isomorphic(&k3k2, &Graph::cycle(6)).unwrap());
    }

    #[test]
    fn rendered_form_is_a_relabeling() {
        let c = canonical_form(&g("4 0-1 1-2 2-3 0-3")).unwrap();
        let back = parse_graph(&c.to_string()).unwrap();
        assert_eq!(back, c.to_graph());
        assert_eq!(canonical_form(&back).unwrap(), c);
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(
            canonical_form(&Graph::empty(13)),
            Err(Error::SizeBound { n: 13, bound: 12 })
        );
        assert!(canonical_form_with_bound(&Graph::empty(13), 13).is_ok());
        assert!(canonical_form_with_bound(&Graph::empty(1), 65).is_err());
    }

    #[test]
    fn invariant_under_random_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.gen_range(0..=8);
            let p = rng.gen_range(0.1..0.9);
            let a = random_graph(&mut rng, n, p);
            let b = random_relabel(&mut rng, &a);
            assert!(are_isomorphic(&a, &b).unwrap(), "{a} vs {b}");
        }
    }

    #[test]
    fn agrees_with_exhaustive_oracle_up_to_five_vertices() {
        for (n, loops) in [(0, false), (1, true), (2, true), (3, true), (4, true), (5, false)] {
            let perms = permutations(n);
            let mut by_oracle: HashMap<Vec<(usize, usize)>, CanonicalForm> = HashMap::new();
            let mut by_canon: HashMap<CanonicalForm, Vec<(usize, usize)>> = HashMap::new();
            for gr in all_graphs(n, loops) {
                let key = brute_key(&gr, &perms);
                let c = canonical_form(&gr).unwrap();
                assert_eq!(by_oracle.entry(key.clone()).or_insert_with(|| c.clone()), &c);
                assert_eq!(by_canon.entry(c).or_insert_with(|| key.clone()), &key);
            }
            if n == 5 && !loops {
                // 34 simple graphs on five vertices up to isomorphism
                assert_eq!(by_canon.len(), 34);
            }
        }
    }

    #[test]
    fn order_is_total_and_consistent() {
        let forms: Vec<_> = all_graphs(4, false)
            .iter()
            .map(|x| canonical_form(x).unwrap())
            .collect();
        for a in &forms {
            for b in &forms {
                assert_eq!(a.cmp(b) == std::cmp::Ordering::Equal, a == b);
                assert_eq!(a.cmp(b), b.cmp(a).reverse());
            }
        }
        let mut sorted = forms.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 11);
        assert!(sorted.windows(2).all(|w| (w[0].n, w[0].edge_count) <= (w[1].n, w[1].edge_count)));
    }
}
