use super::{Graph, VertexPartition};
use crate::error::{Error, Result};

/// `G + H`: the vertices of `h` are shifted by `|V(g)|`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let shift = g.n();
    let mut out = Graph::empty(g.n() + h.n());
    for (u, v) in g.edges() {
        out.add_edge_idempotent(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge_idempotent(u + shift, v + shift);
    }
    out
}

/// Disjoint union of a sequence, left to right. The empty sequence gives the
/// graph with no vertices.
pub fn disjoint_union_all<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> Graph {
    graphs
        .into_iter()
        .fold(Graph::empty(0), |acc, g| disjoint_union(&acc, g))
}

/// `G × H` with vertex `(g, h)` at index `g * |V(H)| + h`.
pub fn categorical_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.n();
    let mut out = Graph::empty(g.n() * m);
    for (g1, g2) in g.edges() {
        for (h1, h2) in h.edges() {
            out.add_edge_idempotent(g1 * m + h1, g2 * m + h2);
            out.add_edge_idempotent(g1 * m + h2, g2 * m + h1);
        }
    }
    out
}

/// `G · H` for simple graphs: `(g,h) ~ (g',h')` iff `gg' ∈ E(G)`, or `g = g'`
/// and `hh' ∈ E(H)`. Row-major indexing as for the categorical product.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Result<Graph> {
    g.require_simple()?;
    h.require_simple()?;
    let m = h.n();
    let mut out = Graph::empty(g.n() * m);
    for x in 0..g.n() {
        for (h1, h2) in h.edges() {
            out.add_edge_idempotent(x * m + h1, x * m + h2);
        }
    }
    for (g1, g2) in g.edges() {
        for h1 in 0..m {
            for h2 in 0..m {
                out.add_edge_idempotent(g1 * m + h1, g2 * m + h2);
            }
        }
    }
    Ok(out)
}

/// Complement of a simple graph.
pub fn complement(g: &Graph) -> Result<Graph> {
    g.require_simple()?;
    let n = g.n();
    let mut out = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                out.add_edge_idempotent(u, v);
            }
        }
    }
    Ok(out)
}

/// Full complement: flips every pair `{u, v}` including `u = v`.
pub fn full_complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut out = Graph::empty(n);
    for u in 0..n {
        for v in u..n {
            if !g.has_edge(u, v) {
                out.add_edge_idempotent(u, v);
            }
        }
    }
    out
}

/// `G°`: a loop added at every vertex of a simple graph.
pub fn add_loops(g: &Graph) -> Result<Graph> {
    g.require_simple()?;
    let mut out = g.clone();
    for v in 0..g.n() {
        out.add_edge_idempotent(v, v);
    }
    Ok(out)
}

/// `F/P`: the simple graph on the blocks of `p` (in block order), with `PQ`
/// an edge for `P != Q` iff some edge of `f` joins them. Edges inside a block
/// are dropped.
pub fn quotient(f: &Graph, p: &VertexPartition) -> Result<Graph> {
    f.require_simple()?;
    if p.ground_size() != f.n() {
        return Err(Error::MalformedPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.ground_size(),
            f.n()
        )));
    }
    let block = p.block_index();
    let mut out = Graph::empty(p.len());
    for (u, v) in f.edges() {
        let (a, b) = (block[u], block[v]);
        if a != b {
            out.add_edge_idempotent(a, b);
        }
    }
    Ok(out)
}

/// `F ⊘ L`: contracts the components of the spanning subgraph with edge set
/// `contracted` and keeps every other edge, so an uncontracted edge inside a
/// class becomes a loop. Classes are numbered by their least vertex.
pub fn contraction_quotient(f: &Graph, contracted: &[(usize, usize)]) -> Result<Graph> {
    f.require_simple()?;
    let n = f.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut in_l = Vec::with_capacity(contracted.len());
    for &(u, v) in contracted {
        if !f.has_edge(u, v) {
            return Err(Error::NotAnEdge(u.min(v), u.max(v)));
        }
        in_l.push((u.min(v), u.max(v)));
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            // keep the smaller vertex as root so roots are class minima
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut class_of_root = vec![usize::MAX; n];
    let mut class = vec![0; n];
    let mut classes = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes;
            classes += 1;
        }
        class[v] = class_of_root[r];
    }
    let mut out = Graph::empty(classes);
    for (u, v) in f.edges() {
        if !in_l.contains(&(u, v)) {
            out.add_edge_idempotent(class[u], class[v]);
        }
    }
    Ok(out)
}

/// Connected components in order of their least vertex, each relabeled to `0..k`
/// preserving relative vertex order.
pub fn connected_components(g: &Graph) -> Vec<Graph> {
    g.component_vertex_sets()
        .iter()
        .map(|set| g.induced(set))
        .collect()
}

/// `Δ_F(uv)`: vertices forming a triangle with the edge `uv`, sorted.
pub fn triangle_set(f: &Graph, u: usize, v: usize) -> Result<Vec<usize>> {
    f.require_simple()?;
    if !f.has_edge(u, v) {
        return Err(Error::NotAnEdge(u.min(v), u.max(v)));
    }
    Ok(f
        .neighbors(u)
        .iter()
        .copied()
        .filter(|&w| w != v && f.has_edge(v, w))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::enumerate::all_graphs;
    use crate::graph::parse_graph;

    fn g(text: &str) -> Graph {
        parse_graph(text).unwrap()
    }

    #[test]
    fn disjoint_union_examples() {
        let k1 = Graph::complete(1);
        assert_eq!(disjoint_union(&k1, &k1), Graph::empty(2));
        let k2 = Graph::complete(2);
        assert_eq!(disjoint_union(&k2, &k2), g("4 0-1 2-3"));
        assert_eq!(
            disjoint_union(&Graph::complete(3), &Graph::looped_vertex()),
            g("4 0-1 0-2 1-2 3-3")
        );
        assert_eq!(disjoint_union_all([]), Graph::empty(0));
    }

    #[test]
    fn categorical_product_examples() {
        let k2 = Graph::complete(2);
        // (0,0)-(1,1) and (0,1)-(1,0)
        assert_eq!(categorical_product(&k2, &k2), g("4 0-3 1-2"));
        let c5 = Graph::cycle(5);
        assert_eq!(categorical_product(&c5, &Graph::looped_vertex()), c5);
        let k3k2 = categorical_product(&Graph::complete(3), &k2);
        assert_eq!(k3k2.n(), 6);
        assert!(are_isomorphic(&k3k2, &Graph::cycle(6)).unwrap());
        // loops arise only from looped factors
        let looped = categorical_product(&Graph::looped_vertex(), &Graph::looped_vertex());
        assert_eq!(looped, Graph::looped_vertex());
    }

    #[test]
    fn lexicographic_product_examples() {
        let k2 = Graph::complete(2);
        let k1 = Graph::complete(1);
        assert_eq!(lexicographic_product(&k2, &k1).unwrap(), k2);
        let p4 = Graph::path(4);
        assert_eq!(lexicographic_product(&k1, &p4).unwrap(), p4);
        let c4 = lexicographic_product(&k2, &Graph::empty(2)).unwrap();
        assert_eq!(c4, g("4 0-2 0-3 1-2 1-3"));
        assert!(are_isomorphic(&c4, &Graph::cycle(4)).unwrap());
        assert_eq!(
            lexicographic_product(&Graph::looped_vertex(), &k1),
            Err(Error::LoopsNotAllowed(0))
        );
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&Graph::complete(3)).unwrap(), Graph::empty(3));
        assert_eq!(complement(&Graph::empty(2)).unwrap(), Graph::complete(2));
        assert_eq!(complement(&Graph::path(3)).unwrap(), g("3 0-2"));
        assert_eq!(
            complement(&Graph::looped_vertex()),
            Err(Error::LoopsNotAllowed(0))
        );
    }

    #[test]
    fn full_complement_examples() {
        assert_eq!(full_complement(&Graph::complete(1)), Graph::looped_vertex());
        assert_eq!(full_complement(&Graph::looped_vertex()), Graph::complete(1));
        assert_eq!(full_complement(&Graph::complete(2)), g("2 0-0 1-1"));
    }

    #[test]
    fn add_loops_examples() {
        assert_eq!(add_loops(&Graph::complete(1)).unwrap(), Graph::looped_vertex());
        assert_eq!(add_loops(&Graph::empty(2)).unwrap(), g("2 0-0 1-1"));
        let k3 = Graph::complete(3);
        assert_eq!(
            full_complement(&add_loops(&k3).unwrap()),
            complement(&k3).unwrap()
        );
        assert_eq!(full_complement(&add_loops(&k3).unwrap()), Graph::empty(3));
    }

    #[test]
    fn quotient_examples() {
        let f = g("4 0-1 1-2 2-3 0-3");
        assert_eq!(quotient(&f, &VertexPartition::discrete(4)).unwrap(), f);
        let p = VertexPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(quotient(&Graph::complete(3), &p).unwrap(), Graph::complete(2));
        let p = VertexPartition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(quotient(&g("4 0-1 2-3"), &p).unwrap(), Graph::complete(2));
        let bad = VertexPartition::new(2, vec![vec![0, 1]]).unwrap();
        assert!(matches!(
            quotient(&Graph::complete(3), &bad),
            Err(Error::MalformedPartition(_))
        ));
    }

    #[test]
    fn contraction_quotient_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(contraction_quotient(&k3, &[]).unwrap(), k3);
        assert_eq!(
            contraction_quotient(&k3, &[(0, 1)]).unwrap(),
            Graph::complete(2)
        );
        assert_eq!(
            contraction_quotient(&k3, &[(0, 1), (1, 2)]).unwrap(),
            Graph::looped_vertex()
        );
        assert_eq!(
            contraction_quotient(&k3, &[(0, 1), (1, 2), (0, 2)]).unwrap(),
            Graph::complete(1)
        );
        assert_eq!(
            contraction_quotient(&Graph::path(3), &[(0, 2)]),
            Err(Error::NotAnEdge(0, 2))
        );
    }

    #[test]
    fn contraction_names_classes_by_minimum() {
        // contract 2-3 in P4 = 0-1-2-3: classes {0},{1},{2,3}
        let out = contraction_quotient(&Graph::path(4), &[(2, 3)]).unwrap();
        assert_eq!(out, g("3 0-1 1-2"));
        // contract 0-3 in C4: classes {0,3},{1},{2}
        let out = contraction_quotient(&Graph::cycle(4), &[(0, 3)]).unwrap();
        assert_eq!(out, g("3 0-1 0-2 1-2"));
    }

    #[test]
    fn components_examples() {
        let k3k2 = disjoint_union(&Graph::complete(3), &Graph::complete(2));
        assert_eq!(
            connected_components(&k3k2),
            vec![Graph::complete(3), Graph::complete(2)]
        );
        assert_eq!(connected_components(&Graph::empty(3)), vec![Graph::complete(1); 3]);
        assert_eq!(connected_components(&Graph::cycle(6)), vec![Graph::cycle(6)]);
    }

    #[test]
    fn triangle_set_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(triangle_set(&k3, 0, 1).unwrap(), vec![2]);
        assert_eq!(triangle_set(&Graph::complete(2), 0, 1).unwrap(), Vec::<usize>::new());
        let k4 = Graph::complete(4);
        assert_eq!(triangle_set(&k4, 0, 1).unwrap(), vec![2, 3]);
        let contracted = contraction_quotient(&k4, &[(0, 1)]).unwrap();
        assert_eq!((contracted.n(), contracted.edge_count()), (3, 3));
        assert_eq!(triangle_set(&k4, 0, 1).unwrap().len(), 6 - 3 - 1);
        assert_eq!(triangle_set(&Graph::path(3), 0, 2), Err(Error::NotAnEdge(0, 2)));
    }

    #[test]
    fn involutions_on_small_graphs() {
        for n in 0..=5 {
            for g in all_graphs(n, true) {
                assert_eq!(full_complement(&full_complement(&g)), g);
                if g.is_simple() {
                    let c = complement(&g).unwrap();
                    assert_eq!(complement(&c).unwrap(), g);
                    assert_eq!(full_complement(&add_loops(&g).unwrap()), c);
                }
            }
        }
    }

    #[test]
    fn contraction_by_nothing_is_identity() {
        for n in 0..=5 {
            for g in all_graphs(n, false) {
                assert_eq!(contraction_quotient(&g, &[]).unwrap(), g);
            }
        }
    }

    #[test]
    fn components_reassemble() {
        for n in 0..=6 {
            for g in all_graphs(n, false).into_iter().step_by(7) {
                let parts = connected_components(&g);
                assert!(parts.iter().all(Graph::is_connected));
                assert!(are_isomorphic(&disjoint_union_all(&parts), &g).unwrap());
            }
        }
    }
}
