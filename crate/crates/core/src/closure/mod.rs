//! Essentially finite graph classes: component bases, class vectors, closure
//! membership, closedness checks, finite generating subclasses, witness pairs
//! and cancellation.
//!
//! A class is given by finitely many generators, either as a finite class or
//! closed under finite disjoint unions. Everything is computed on component
//! multiplicity vectors, so only components need to fit the canonical-form
//! bound, not whole graphs.

mod cancel;
mod hdcheck;
mod span;
mod subclass;
mod witness;

use std::collections::BTreeMap;
use std::fmt;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{connected_components, disjoint_union_all, parse_graph, Graph};
use crate::hom::is_colourable;

pub use cancel::{cancellation_admits, cancellation_probe, CancellationReport};
pub use hdcheck::{hd_closed_check, HdVerdict, MAX_CANDIDATES};
pub use span::{in_closure, span_membership, ClosureVerdict, SpanCertificate};
pub use subclass::{finite_generating_subclass, homind_decide, HomIndVerdict};
pub use witness::{witness_pair, WitnessGraph, WitnessOptions, WitnessPair};

/// Largest number of component types accepted by procedures that range over
/// all subsets of `Γ(F)`.
pub const MAX_COMPONENT_TYPES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClassSpec {
    generators: Vec<Graph>,
    union_closed: bool,
}

impl GraphClassSpec {
    /// Validates that generators are simple and drops isomorphic repeats,
    /// keeping the first occurrence.
    pub fn new(generators: Vec<Graph>, union_closed: bool) -> Result<Self> {
        let mut seen: Vec<ClassKey> = Vec::new();
        let mut kept = Vec::new();
        for g in generators {
            g.require_simple()?;
            let key = class_key(&g)?;
            if !seen.contains(&key) {
                seen.push(key);
                kept.push(g);
            }
        }
        Ok(GraphClassSpec {
            generators: kept,
            union_closed,
        })
    }

    pub fn generators(&self) -> &[Graph] {
        &self.generators
    }

    pub fn union_closed(&self) -> bool {
        self.union_closed
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn with_generators(&self, generators: Vec<Graph>) -> Self {
        GraphClassSpec {
            generators,
            union_closed: self.union_closed,
        }
    }
}

/// Isomorphism key of a possibly large graph: sorted canonical forms of its
/// components with multiplicity.
type ClassKey = Vec<CanonicalForm>;

fn class_key(g: &Graph) -> Result<ClassKey> {
    let mut key = connected_components(g)
        .iter()
        .map(canonical_form)
        .collect::<Result<Vec<_>>>()?;
    key.sort();
    Ok(key)
}

/// Sorted, duplicate-free list of connected component types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentBasis {
    forms: Vec<CanonicalForm>,
    components: Vec<Graph>,
}

impl ComponentBasis {
    /// Component types of all `graphs`, each represented by its canonically
    /// labeled graph.
    pub fn of<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> Result<Self> {
        let mut types = BTreeMap::new();
        for g in graphs {
            for c in connected_components(g) {
                let form = canonical_form(&c)?;
                types.entry(form).or_insert(());
            }
        }
        let forms: Vec<CanonicalForm> = types.into_keys().collect();
        let components = forms.iter().map(CanonicalForm::to_graph).collect();
        Ok(ComponentBasis { forms, components })
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn components(&self) -> &[Graph] {
        &self.components
    }

    pub fn index_of(&self, form: &CanonicalForm) -> Option<usize> {
        self.forms.binary_search(form).ok()
    }

    /// The disjoint union with the given multiplicities, in basis order.
    pub fn materialize(&self, v: &ClassVector) -> Graph {
        assert_eq!(v.len(), self.len(), "vector over a different basis");
        let parts: Vec<&Graph> = self
            .components
            .iter()
            .zip(v.entries())
            .flat_map(|(c, &k)| std::iter::repeat(c).take(k))
            .collect();
        disjoint_union_all(parts)
    }
}

/// `C = Γ(F ∪ extra)` for the generators `F` of `spec`.
pub fn component_basis(spec: &GraphClassSpec, extra: &[Graph]) -> Result<ComponentBasis> {
    ComponentBasis::of(spec.generators.iter().chain(extra))
}

/// Component multiplicities over a [`ComponentBasis`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassVector(Vec<usize>);

impl ClassVector {
    pub fn new(entries: Vec<usize>) -> Self {
        ClassVector(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn vectorize(f: &Graph, basis: &ComponentBasis) -> Result<ClassVector> {
    let mut v = vec![0; basis.len()];
    for c in connected_components(f) {
        let form = canonical_form(&c)?;
        match basis.index_of(&form) {
            Some(i) => v[i] += 1,
            None => return Err(Error::ComponentOutsideBasis(c.to_string())),
        }
    }
    Ok(ClassVector(v))
}

/// `F_K`: the generators admitting a homomorphism into `K`. A disjoint union is
/// `K`-colourable iff every summand is, so the union-closure flag carries over.
pub fn restrict_to_colourable(spec: &GraphClassSpec, k: &Graph) -> GraphClassSpec {
    spec.with_generators(
        spec.generators
            .iter()
            .filter(|f| is_colourable(f, k))
            .cloned()
            .collect(),
    )
}

/// Whether `K` itself belongs to the class: isomorphic to a generator, or for
/// union-closed specs a disjoint union of one or more generators.
pub fn class_membership(spec: &GraphClassSpec, k: &Graph) -> Result<bool> {
    k.require_simple()?;
    let target = class_key(k)?;
    if !spec.union_closed {
        for g in &spec.generators {
            if class_key(g)? == target {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let basis = ComponentBasis::of(spec.generators.iter())?;
    let kv = match vectorize(k, &basis) {
        Ok(v) => v,
        Err(Error::ComponentOutsideBasis(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    if kv.is_zero() {
        // only the empty generator (if present) yields the empty graph
        return Ok(spec.generators.iter().any(|g| g.n() == 0));
    }
    let gens: Vec<ClassVector> = spec
        .generators
        .iter()
        .map(|g| vectorize(g, &basis))
        .collect::<Result<_>>()?;
    let gens: Vec<&ClassVector> = gens.iter().filter(|g| !g.is_zero()).collect();
    let mut rest = kv.0.clone();
    Ok(nonnegative_combination(&gens, 0, &mut rest))
}

/// Bounded search for `rest = Σ c_i gens[i]` with `c_i >= 0`; each coefficient
/// is capped by the first coordinate it would overshoot.
fn nonnegative_combination(gens: &[&ClassVector], i: usize, rest: &mut [usize]) -> bool {
    if rest.iter().all(|&x| x == 0) {
        return true;
    }
    if i == gens.len() {
        return false;
    }
    let g = gens[i].entries();
    let max = g
        .iter()
        .zip(rest.iter())
        .filter(|(&a, _)| a > 0)
        .map(|(&a, &r)| r / a)
        .min()
        .unwrap_or(0);
    for c in (0..=max).rev() {
        for (r, &a) in rest.iter_mut().zip(g) {
            *r -= c * a;
        }
        let found = nonnegative_combination(gens, i + 1, rest);
        for (r, &a) in rest.iter_mut().zip(g) {
            *r += c * a;
        }
        if found {
            return true;
        }
    }
    false
}

/// Parses a class file: `union-closed` or `finite` on the first line, then one
/// graph per line. Blank lines are ignored.
pub fn parse_class(text: &str) -> Result<GraphClassSpec> {
    let mut lines = text
        .split_inclusive('\n')
        .scan(0usize, |offset, line| {
            let start = *offset;
            *offset += line.len();
            Some((start, line.trim_end_matches(['\n', '\r'])))
        })
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::Syntax {
        pos: 0,
        msg: "expected `union-closed` or `finite`".into(),
    })?;
    let union_closed = match header.trim() {
        "union-closed" => true,
        "finite" => false,
        other => {
            return Err(Error::Syntax {
                pos: 0,
                msg: format!("expected `union-closed` or `finite`, found `{other}`"),
            })
        }
    };
    let mut generators = Vec::new();
    for (start, line) in lines {
        let g = parse_graph(line).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax {
                pos: start + pos,
                msg,
            },
            other => other,
        })?;
        generators.push(g);
    }
    if generators.is_empty() {
        return Err(Error::Syntax {
            pos: text.len(),
            msg: "a class needs at least one generator".into(),
        });
    }
    GraphClassSpec::new(generators, union_closed)
}

pub fn render_class(spec: &GraphClassSpec) -> String {
    let mut out = String::from(if spec.union_closed { "union-closed\n" } else { "finite\n" });
    for g in &spec.generators {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;

    pub(super) fn g(text: &str) -> Graph {
        parse_graph(text).unwrap()
    }

    pub(super) fn k2() -> Graph {
        Graph::complete(2)
    }

    pub(super) fn p3() -> Graph {
        Graph::path(3)
    }

    pub(super) fn k2p3() -> Graph {
        disjoint_union(&k2(), &p3())
    }

    pub(super) fn times(k: usize, x: &Graph) -> Graph {
        disjoint_union_all(std::iter::repeat(x).take(k))
    }

    pub(super) fn union_closed(gens: &[Graph]) -> GraphClassSpec {
        GraphClassSpec::new(gens.to_vec(), true).unwrap()
    }

    #[test]
    fn basis_examples() {
        let b = component_basis(&union_closed(&[k2p3()]), &[]).unwrap();
        assert_eq!(b.components(), &[k2(), g("3 0-1 0-2")]);
        let k3 = Graph::complete(3);
        let b = component_basis(&union_closed(&[k3.clone(), times(2, &k3)]), &[Graph::empty(1)]).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.components()[0], Graph::empty(1));
        let cliques: Vec<Graph> = (1..=3).map(Graph::complete).collect();
        let b = component_basis(&union_closed(&cliques), &[]).unwrap();
        assert_eq!(b.components(), &cliques[..]);
    }

    #[test]
    fn vectorize_examples() {
        let b = component_basis(&union_closed(&[k2p3()]), &[]).unwrap();
        let x = disjoint_union(&times(2, &k2()), &g("3 0-2 1-2"));
        assert_eq!(vectorize(&x, &b).unwrap(), ClassVector::new(vec![2, 1]));
        assert_eq!(vectorize(&k2(), &b).unwrap(), ClassVector::new(vec![1, 0]));
        assert_eq!(
            vectorize(&Graph::cycle(5), &b),
            Err(Error::ComponentOutsideBasis("5 0-1 0-4 1-2 2-3 3-4".into()))
        );
        assert_eq!(b.materialize(&ClassVector::new(vec![2, 1])).n(), 7);
    }

    #[test]
    fn restriction_examples() {
        let k3 = Graph::complete(3);
        let r = restrict_to_colourable(&union_closed(&[k2(), k3.clone()]), &k2());
        assert_eq!(r.generators(), &[k2()]);
        assert!(r.union_closed());
        let c5 = GraphClassSpec::new(vec![Graph::cycle(5)], false).unwrap();
        assert!(restrict_to_colourable(&c5, &k2()).is_empty());
        let r = restrict_to_colourable(&union_closed(&[k2p3()]), &k2());
        assert_eq!(r.generators(), &[k2p3()]);
    }

    #[test]
    fn membership_examples() {
        let spec = union_closed(&[k2p3()]);
        assert!(class_membership(&spec, &times(2, &k2p3())).unwrap());
        assert!(!class_membership(&spec, &k2()).unwrap());
        let finite = GraphClassSpec::new(vec![k2(), p3()], false).unwrap();
        assert!(!class_membership(&finite, &k2p3()).unwrap());
        assert!(class_membership(&finite, &g("3 0-2 1-2")).unwrap());
        let two = union_closed(&[times(2, &k2()), times(3, &k2())]);
        assert!(class_membership(&two, &times(5, &k2())).unwrap());
        assert!(!class_membership(&two, &k2()).unwrap());
        assert!(!class_membership(&spec, &Graph::empty(0)).unwrap());
    }

    #[test]
    fn generators_are_deduplicated() {
        let spec = GraphClassSpec::new(vec![p3(), g("3 0-2 1-2"), k2()], false).unwrap();
        assert_eq!(spec.generators(), &[p3(), k2()]);
        assert!(GraphClassSpec::new(vec![Graph::looped_vertex()], true).is_err());
    }

    #[test]
    fn class_file_round_trip() {
        let text = "union-closed\n5 0-1 2-3 3-4\n2 0-1\n";
        let spec = parse_class(text).unwrap();
        assert!(spec.union_closed());
        assert_eq!(spec.generators(), &[k2p3(), k2()]);
        assert_eq!(render_class(&spec), text);
        assert!(matches!(parse_class("closed\n2 0-1"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_class("finite\n2 0-1\n3 0-x\n"), Err(Error::Syntax { pos: 17, .. })));
        assert!(parse_class("finite\n").is_err());
    }
}
