use num_rational::BigRational;
use num_traits::Zero;

use super::{
    class_membership, component_basis, in_closure, vectorize, ClassVector, GraphClassSpec,
    MAX_COMPONENT_TYPES,
};
use crate::error::{Error, Result};
use crate::graph::disjoint_union_all;
use crate::hom::is_colourable;
use crate::linalg::RationalMatrix;

/// Largest number of candidate vectors `hd_closed_check` will enumerate.
pub const MAX_CANDIDATES: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HdVerdict {
    /// Closed for every graph, not only the enumerated ones. For each
    /// support `Λ ⊆ Γ(F)` the certificate lists `dim W_Λ`, where `W_Λ` is the
    /// span of the `⊔Λ`-colourable generators restricted to vectors supported
    /// in `Λ`.
    Closed { dimensions: Vec<(Vec<usize>, usize)> },
    /// `K` is in the closure but not in the class.
    Violation { k: crate::graph::Graph, vector: ClassVector },
    /// No violation among the enumerated candidates, but no certificate either.
    NoViolationUpTo(usize),
}

/// Semi-decides whether the class equals its homomorphism distinguishing
/// closure.
///
/// Candidates are the disjoint unions over `Γ(F)` with every multiplicity at
/// most `bound`, in order of total size and then lexicographically; graphs
/// with another component are never in the closure. The first candidate in
/// the closure but outside the class is reported.
///
/// Without a violation the answer is `Closed` only if for every support `Λ`
/// either `W_Λ = 0`, or the class is union-closed and the generators
/// supported in `Λ` form a basis of `W_Λ` in which each generator has a
/// private coordinate equal to 1 (zero in all other generators). Then the
/// coefficients of any integer vector of `W_Λ` are its private coordinates,
/// hence nonnegative integers, so the graph is a union of generators.
pub fn hd_closed_check(spec: &GraphClassSpec, bound: usize) -> Result<HdVerdict> {
    if bound == 0 {
        return Err(Error::InvalidBound("the multiplicity bound must be positive".into()));
    }
    let basis = component_basis(spec, &[])?;
    let d = basis.len();
    if d > MAX_COMPONENT_TYPES {
        return Err(Error::TooManyComponents {
            found: d,
            limit: MAX_COMPONENT_TYPES,
        });
    }
    let count = (bound + 1)
        .checked_pow(d as u32)
        .filter(|&c| c <= MAX_CANDIDATES)
        .ok_or_else(|| Error::SearchExhausted(format!("{} component types at bound {bound}", d)))?;
    let mut candidates: Vec<Vec<usize>> = (1..count)
        .map(|mut code| {
            let mut v = vec![0; d];
            for x in v.iter_mut().rev() {
                *x = code % (bound + 1);
                code /= bound + 1;
            }
            v
        })
        .collect();
    candidates.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    for v in candidates {
        let vector = ClassVector::new(v);
        let k = basis.materialize(&vector);
        if in_closure(spec, &k)?.member && !class_membership(spec, &k)? {
            return Ok(HdVerdict::Violation { k, vector });
        }
    }

    let gens: Vec<ClassVector> = spec
        .generators()
        .iter()
        .map(|f| vectorize(f, &basis))
        .collect::<Result<_>>()?;
    let mut dimensions = Vec::new();
    let mut certified = true;
    for mask in 1u32..1 << d {
        let lambda: Vec<usize> = (0..d).filter(|&i| mask >> i & 1 == 1).collect();
        let parts: Vec<&crate::graph::Graph> = lambda.iter().map(|&i| &basis.components()[i]).collect();
        let l = disjoint_union_all(parts);
        let colourable: Vec<&ClassVector> = spec
            .generators()
            .iter()
            .zip(&gens)
            .filter(|(f, _)| is_colourable(f, &l))
            .map(|(_, v)| v)
            .collect();
        let dim = restricted_span_dimension(&colourable, &lambda, d);
        dimensions.push((lambda.clone(), dim));
        if dim == 0 {
            continue;
        }
        if !spec.union_closed() {
            certified = false;
            continue;
        }
        let inside: Vec<&ClassVector> = gens
            .iter()
            .filter(|v| v.support().iter().all(|i| lambda.contains(i)) && !v.is_zero())
            .collect();
        if !(rank(&inside, d) == inside.len() && inside.len() == dim && has_private_units(&inside, &lambda)) {
            certified = false;
        }
    }
    Ok(if certified {
        HdVerdict::Closed { dimensions }
    } else {
        HdVerdict::NoViolationUpTo(bound)
    })
}

fn matrix(vectors: &[&ClassVector], d: usize) -> RationalMatrix {
    RationalMatrix::from_integer_rows(
        d,
        &vectors
            .iter()
            .map(|v| v.entries().iter().map(|&x| x as u64).collect())
            .collect::<Vec<Vec<u64>>>(),
    )
}

fn rank(vectors: &[&ClassVector], d: usize) -> usize {
    matrix(vectors, d).rank()
}

/// `dim(span(vectors) ∩ R^Λ)`: combinations vanishing outside `Λ`.
fn restricted_span_dimension(vectors: &[&ClassVector], lambda: &[usize], d: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    // columns of `a` are the vectors
    let a = matrix(vectors, d).transpose();
    let outside: Vec<usize> = (0..d).filter(|i| !lambda.contains(i)).collect();
    let out_rows: Vec<Vec<BigRational>> = outside.iter().map(|&i| a.row(i).to_vec()).collect();
    let kernel = RationalMatrix::from_rows(vectors.len(), out_rows).nullspace();
    if kernel.is_empty() {
        return 0;
    }
    let images: Vec<Vec<BigRational>> = kernel.iter().map(|x| a.mul_vec(x)).collect();
    let w = RationalMatrix::from_rows(d, images);
    debug_assert!(outside.iter().all(|&i| w.column(i).iter().all(Zero::is_zero)));
    w.rank()
}

/// Every vector has a coordinate in `Λ` where it is 1 and all others are 0.
fn has_private_units(vectors: &[&ClassVector], lambda: &[usize]) -> bool {
    vectors.iter().enumerate().all(|(i, v)| {
        lambda.iter().any(|&c| {
            v.entries()[c] == 1
                && vectors
                    .iter()
                    .enumerate()
                    .all(|(j, w)| j == i || w.entries()[c] == 0)
        })
    })
}
