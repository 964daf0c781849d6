//! Symbolic expansions of `hom(F, -)` evaluated on constructed graphs into
//! linear combinations of homomorphism counts, plus grouping by isomorphism
//! type and brute-force verification.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{
    add_loops, complement, connected_components, connected_partitions, contraction_quotient,
    disjoint_union, disjoint_union_all, full_complement, lexicographic_product, quotient, Graph,
};
use crate::hom::hom;

/// Largest edge count accepted by the subset expansions.
pub const MAX_EXPANSION_EDGES: usize = 16;

/// Largest component count accepted by [`expand_disjoint_union`].
pub const MAX_EXPANSION_COMPONENTS: usize = 20;

/// `Σ coeff · hom(graph, -)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinComb {
    terms: Vec<(Graph, BigRational)>,
}

/// `Σ coeff · hom(left, G) · hom(right, H)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PairLinComb {
    terms: Vec<(Graph, Graph, BigRational)>,
}

impl LinComb {
    pub fn new(terms: Vec<(Graph, BigRational)>) -> Self {
        LinComb { terms }
    }

    pub fn terms(&self) -> &[(Graph, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, g: &Graph) -> BigRational {
        self.terms
            .iter()
            .map(|(f, c)| c * BigRational::from_integer(BigInt::from(hom(f, g))))
            .sum()
    }

    /// Coefficient of the isomorphism type of `g`, summed over all terms.
    pub fn coefficient_of(&self, g: &Graph) -> Result<BigRational> {
        let key = canonical_form(g)?;
        let mut total = BigRational::zero();
        for (f, c) in &self.terms {
            if canonical_form(f)? == key {
                total += c;
            }
        }
        Ok(total)
    }
}

impl PairLinComb {
    pub fn new(terms: Vec<(Graph, Graph, BigRational)>) -> Self {
        PairLinComb { terms }
    }

    pub fn terms(&self) -> &[(Graph, Graph, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, g: &Graph, h: &Graph) -> BigRational {
        self.terms
            .iter()
            .map(|(l, r, c)| {
                let prod = BigInt::from(hom(l, g) * hom(r, h));
                c * BigRational::from_integer(prod)
            })
            .sum()
    }
}

impl fmt::Display for LinComb {
    /// One term per line: `coeff<TAB>graph`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, c) in &self.terms {
            writeln!(f, "{c}\t{g}")?;
        }
        Ok(())
    }
}

impl fmt::Display for PairLinComb {
    /// One term per line: `coeff<TAB>left<TAB>right`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, r, c) in &self.terms {
            writeln!(f, "{c}\t{l}\t{r}")?;
        }
        Ok(())
    }
}

fn sign(k: usize) -> BigRational {
    if k % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn check_edges(f: &Graph) -> Result<Vec<(usize, usize)>> {
    f.require_simple()?;
    let edges = f.edge_list();
    if edges.len() > MAX_EXPANSION_EDGES {
        return Err(Error::TooManyEdges {
            found: edges.len(),
            limit: MAX_EXPANSION_EDGES,
        });
    }
    Ok(edges)
}

/// Edge subsets in bitmask order.
fn subsets(edges: &[(usize, usize)]) -> impl Iterator<Item = Vec<(usize, usize)>> + '_ {
    (0u32..1 << edges.len()).map(move |mask| {
        edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    })
}

/// `hom(F, G + H) = Σ_I hom(⊔_{i∈I} C_i, G) · hom(⊔_{i∉I} C_i, H)` over the
/// components `C_1..C_r` of `F`.
pub fn expand_disjoint_union(f: &Graph) -> Result<PairLinComb> {
    f.require_simple()?;
    let comps = connected_components(f);
    if comps.len() > MAX_EXPANSION_COMPONENTS {
        return Err(Error::TooManyComponents {
            found: comps.len(),
            limit: MAX_EXPANSION_COMPONENTS,
        });
    }
    let terms = (0u32..1 << comps.len())
        .map(|mask| {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (i, c) in comps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.push(c);
                } else {
                    right.push(c);
                }
            }
            (
                disjoint_union_all(left),
                disjoint_union_all(right),
                BigRational::one(),
            )
        })
        .collect();
    Ok(PairLinComb { terms })
}

/// `hom(F, full_complement(G)) = Σ_{F' spanning} (-1)^{|E(F')|} hom(F', G)`.
pub fn expand_full_complement(f: &Graph) -> Result<LinComb> {
    let edges = check_edges(f)?;
    let terms = subsets(&edges)
        .map(|sub| (f.spanning(&sub), sign(sub.len())))
        .collect();
    Ok(LinComb { terms })
}

/// `hom(F, G°) = Σ_{L ⊆ E(F)} hom(F ⊘ L, G)`.
pub fn expand_looped(f: &Graph) -> Result<LinComb> {
    let edges = check_edges(f)?;
    let terms = subsets(&edges)
        .map(|l| {
            let q = contraction_quotient(f, &l).expect("subsets of E(F)");
            (q, BigRational::one())
        })
        .collect();
    Ok(LinComb { terms })
}

/// `hom(F, complement(G)) = Σ_{F'} (-1)^{|E(F')|} Σ_{L ⊆ E(F')} hom(F' ⊘ L, G)`,
/// the full-complement expansion followed by the looped one on each term.
pub fn expand_complement(f: &Graph) -> Result<LinComb> {
    let edges = check_edges(f)?;
    let mut terms = Vec::new();
    for sub in subsets(&edges) {
        let fp = f.spanning(&sub);
        let s = sign(sub.len());
        for l in subsets(&sub) {
            let q = contraction_quotient(&fp, &l).expect("subsets of E(F')");
            terms.push((q, s.clone()));
        }
    }
    Ok(LinComb { terms })
}

/// `hom(F, G · H) = Σ_R hom(F/R, G) · hom(⊔_{B∈R} F[B], H)` over the
/// partitions `R` of `V(F)` into connected blocks.
pub fn expand_lexicographic(f: &Graph) -> Result<PairLinComb> {
    f.require_simple()?;
    let terms = connected_partitions(f)
        .map(|p| {
            let q = quotient(f, &p).expect("F is simple and P partitions V(F)");
            let parts: Vec<Graph> = p.blocks().iter().map(|b| f.induced(b)).collect();
            (q, disjoint_union_all(&parts), BigRational::one())
        })
        .collect();
    Ok(PairLinComb { terms })
}

/// Merges isomorphic terms, keeping the first representative of each type in
/// order of first appearance, and drops zero coefficients.
pub fn group_by_isomorphism(lc: &LinComb) -> Result<LinComb> {
    let mut index: HashMap<CanonicalForm, usize> = HashMap::new();
    let mut terms: Vec<(Graph, BigRational)> = Vec::new();
    for (g, c) in &lc.terms {
        let key = canonical_form(g)?;
        match index.get(&key) {
            Some(&i) => terms[i].1 += c,
            None => {
                index.insert(key, terms.len());
                terms.push((g.clone(), c.clone()));
            }
        }
    }
    terms.retain(|(_, c)| !c.is_zero());
    Ok(LinComb { terms })
}

/// Pair version of [`group_by_isomorphism`], keyed on both sides.
pub fn group_pairs_by_isomorphism(lc: &PairLinComb) -> Result<PairLinComb> {
    let mut index: HashMap<(CanonicalForm, CanonicalForm), usize> = HashMap::new();
    let mut terms: Vec<(Graph, Graph, BigRational)> = Vec::new();
    for (l, r, c) in &lc.terms {
        let key = (canonical_form(l)?, canonical_form(r)?);
        match index.get(&key) {
            Some(&i) => terms[i].2 += c,
            None => {
                index.insert(key, terms.len());
                terms.push((l.clone(), r.clone(), c.clone()));
            }
        }
    }
    terms.retain(|(_, _, c)| !c.is_zero());
    Ok(PairLinComb { terms })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityKind {
    DisjointUnion,
    FullComplement,
    Looped,
    Complement,
    Lexicographic,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 5] = [
        IdentityKind::DisjointUnion,
        IdentityKind::FullComplement,
        IdentityKind::Looped,
        IdentityKind::Complement,
        IdentityKind::Lexicographic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::DisjointUnion => "disjoint_union",
            IdentityKind::FullComplement => "full_complement",
            IdentityKind::Looped => "looped",
            IdentityKind::Complement => "complement",
            IdentityKind::Lexicographic => "lexicographic",
        }
    }

    /// Whether the identity is evaluated on a pair `(G, H)`.
    pub fn is_pair(self) -> bool {
        matches!(self, IdentityKind::DisjointUnion | IdentityKind::Lexicographic)
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// Symbolic expansion of either kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Expansion {
    Single(LinComb),
    Pair(PairLinComb),
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expansion::Single(lc) => lc.fmt(f),
            Expansion::Pair(lc) => lc.fmt(f),
        }
    }
}

pub fn expand(kind: IdentityKind, f: &Graph) -> Result<Expansion> {
    Ok(match kind {
        IdentityKind::DisjointUnion => Expansion::Pair(expand_disjoint_union(f)?),
        IdentityKind::FullComplement => Expansion::Single(expand_full_complement(f)?),
        IdentityKind::Looped => Expansion::Single(expand_looped(f)?),
        IdentityKind::Complement => Expansion::Single(expand_complement(f)?),
        IdentityKind::Lexicographic => Expansion::Pair(expand_lexicographic(f)?),
    })
}

pub fn group(e: &Expansion) -> Result<Expansion> {
    Ok(match e {
        Expansion::Single(lc) => Expansion::Single(group_by_isomorphism(lc)?),
        Expansion::Pair(lc) => Expansion::Pair(group_pairs_by_isomorphism(lc)?),
    })
}

/// Both sides of an identity at a concrete input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    /// Direct count on the constructed graph.
    pub lhs: BigInt,
    /// Evaluation of the expansion.
    pub rhs: BigRational,
    pub holds: bool,
}

/// Compares the expansion of `hom(F, -)` with a direct count on the
/// constructed right-hand graph.
pub fn verify_identity(
    kind: IdentityKind,
    f: &Graph,
    g: &Graph,
    h: Option<&Graph>,
) -> Result<IdentityCheck> {
    let (lhs, rhs) = match kind {
        IdentityKind::DisjointUnion | IdentityKind::Lexicographic => {
            let h = h.ok_or(Error::MissingRightGraph(kind.name()))?;
            let (target, lc) = if kind == IdentityKind::DisjointUnion {
                (disjoint_union(g, h), expand_disjoint_union(f)?)
            } else {
                (lexicographic_product(g, h)?, expand_lexicographic(f)?)
            };
            (hom(f, &target), lc.evaluate(g, h))
        }
        IdentityKind::FullComplement => (hom(f, &full_complement(g)), expand_full_complement(f)?.evaluate(g)),
        IdentityKind::Looped => (hom(f, &add_loops(g)?), expand_looped(f)?.evaluate(g)),
        IdentityKind::Complement => (hom(f, &complement(g)?), expand_complement(f)?.evaluate(g)),
    };
    let lhs = BigInt::from(lhs);
    let holds = BigRational::from_integer(lhs.clone()) == rhs;
    Ok(IdentityCheck { lhs, rhs, holds })
}

/// `|S \ (A_1 ∪ ... ∪ A_k)|` for `S = {0..universe}`, computed by the
/// alternating sum over subfamilies. The direct count is compared in debug
/// builds.
pub fn inclusion_exclusion(sets: &[u64], universe: usize) -> u64 {
    assert!(universe <= 64, "universe larger than a bitmask");
    assert!(sets.len() < 32, "too many sets");
    let full = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
    for &s in sets {
        assert_eq!(s & !full, 0, "set outside the universe");
    }
    let mut total: i128 = 0;
    for mask in 0u32..1 << sets.len() {
        let inter = sets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(full, |acc, (_, &s)| acc & s);
        let size = i128::from(inter.count_ones());
        if mask.count_ones() % 2 == 0 {
            total += size;
        } else {
            total -= size;
        }
    }
    let direct = (full & !sets.iter().fold(0, |acc, &s| acc | s)).count_ones();
    debug_assert_eq!(total, i128::from(direct));
    total as u64
}
