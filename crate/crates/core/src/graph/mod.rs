//! Finite undirected graphs with optional loops and the constructions used by
//! the hom-count identities: unions, products, complements, quotients.
//!
//! Vertices are `0..n`. Every construction produces a deterministic labeling so
//! results can be compared as labeled graphs, not only up to isomorphism.

mod ops;
mod partition;
mod text;

pub use ops::*;
pub use partition::{connected_partitions, ConnectedPartitions, VertexPartition};
pub use text::parse_graph;

use crate::error::{Error, Result};

/// A finite undirected graph without multi-edges. A loop at `v` is stored as
/// `v` appearing in its own neighbour list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices, `nK1`.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Pairs may be given in either order;
    /// `(v, v)` is a loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if self.has_edge(u, v) {
            let (a, b) = (u.min(v), u.max(v));
            return Err(Error::DuplicateEdge(a, b));
        }
        self.insert_unchecked(u, v);
        Ok(())
    }

    /// Inserts an edge, ignoring it if already present.
    pub(crate) fn add_edge_idempotent(&mut self, u: usize, v: usize) {
        if !self.has_edge(u, v) {
            self.insert_unchecked(u, v);
        }
    }

    fn insert_unchecked(&mut self, u: usize, v: usize) {
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        if u != v {
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        self.edge_count += 1;
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// Path on `n` vertices (`path(3)` is `P3` with two edges).
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.insert_unchecked(v - 1, v);
        }
        g
    }

    /// Cycle `C_n` for `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut g = Graph::path(n);
        g.insert_unchecked(0, n - 1);
        g
    }

    /// Star `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Self {
        let mut g = Graph::empty(k + 1);
        for v in 1..=k {
            g.insert_unchecked(0, v);
        }
        g
    }

    /// `K1°`, a single vertex carrying a loop.
    pub fn looped_vertex() -> Self {
        let mut g = Graph::empty(1);
        g.insert_unchecked(0, 0);
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges, loops included.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n()).filter(|&v| self.has_loop(v)).count()
    }

    pub fn is_simple(&self) -> bool {
        (0..self.n()).all(|v| !self.has_loop(v))
    }

    /// Sorted neighbours of `v`, including `v` itself when looped.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Number of non-loop neighbours.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len() - usize::from(self.has_loop(v))
    }

    /// Edges as `(u, v)` with `u <= v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v >= u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    pub(crate) fn require_simple(&self) -> Result<()> {
        match (0..self.n()).find(|&v| self.has_loop(v)) {
            Some(v) => Err(Error::LoopsNotAllowed(v)),
            None => Ok(()),
        }
    }

    /// Applies a vertex relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.insert_unchecked(perm[u], perm[v]);
        }
        g
    }

    /// The subgraph induced by `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && j >= i {
                    g.insert_unchecked(i, j);
                }
            }
        }
        g
    }

    /// The spanning subgraph keeping only the listed edges.
    pub(crate) fn spanning(&self, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::empty(self.n());
        for &(u, v) in edges {
            g.insert_unchecked(u, v);
        }
        g
    }

    /// True if the subgraph induced by `vertices` is connected (and nonempty).
    pub fn induces_connected(&self, vertices: &[usize]) -> bool {
        let Some(&start) = vertices.first() else {
            return false;
        };
        let mut inside = vec![false; self.n()];
        for &v in vertices {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == vertices.len()
    }

    /// Vertex sets of the connected components, each sorted, ordered by least vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut sets = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = sets.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            sets.push(members);
        }
        sets
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.component_vertex_sets().len() == 1
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({self})")
    }
}
