use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{component_basis, restrict_to_colourable, vectorize, ClassVector, ComponentBasis, GraphClassSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{dot, primitive_integer_vector, RationalMatrix};

/// Outcome of a span test with an exact certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanCertificate {
    /// `Σ alpha_i v_i = target`.
    In { alpha: Vec<BigRational> },
    /// `<z, v_i> = 0` for all `i` and `<z, target> > 0`.
    Out { z: Vec<BigInt> },
}

impl SpanCertificate {
    pub fn is_in(&self) -> bool {
        matches!(self, SpanCertificate::In { .. })
    }

    /// Re-checks the certificate against the inputs.
    pub fn verify(&self, vectors: &[ClassVector], target: &ClassVector) -> bool {
        let t = to_rational(target);
        match self {
            SpanCertificate::In { alpha } => {
                if alpha.len() != vectors.len() {
                    return false;
                }
                let mut sum = vec![BigRational::zero(); t.len()];
                for (a, v) in alpha.iter().zip(vectors) {
                    for (s, &x) in sum.iter_mut().zip(v.entries()) {
                        *s += a * BigRational::from_integer(x.into());
                    }
                }
                sum == t
            }
            SpanCertificate::Out { z } => {
                if z.len() != t.len() {
                    return false;
                }
                let zq: Vec<BigRational> = z.iter().cloned().map(BigRational::from_integer).collect();
                vectors.iter().all(|v| dot(&zq, &to_rational(v)).is_zero())
                    && dot(&zq, &t).is_positive()
            }
        }
    }
}

fn to_rational(v: &ClassVector) -> Vec<BigRational> {
    v.entries()
        .iter()
        .map(|&x| BigRational::from_integer(x.into()))
        .collect()
}

/// Decides `target ∈ span(vectors)` exactly.
pub fn span_membership(vectors: &[ClassVector], target: &ClassVector) -> Result<SpanCertificate> {
    let dim = target.len();
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    let rows: Vec<Vec<BigRational>> = vectors.iter().map(to_rational).collect();
    // rows are the generators; solve A^T alpha = target
    let a = RationalMatrix::from_rows(dim, rows);
    let t = to_rational(target);
    if let Some(alpha) = a.transpose().solve(&t) {
        return Ok(SpanCertificate::In { alpha });
    }
    for z in a.nullspace() {
        let ip = dot(&z, &t);
        if ip.is_zero() {
            continue;
        }
        let mut z = primitive_integer_vector(&z);
        if ip.is_negative() {
            for x in &mut z {
                *x = -x.clone();
            }
        }
        return Ok(SpanCertificate::Out { z });
    }
    unreachable!("target outside the span has a separating nullspace vector")
}

/// Result of [`in_closure`] with everything needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureVerdict {
    pub member: bool,
    /// The `K`-colourable generators `F_K`.
    pub restricted: GraphClassSpec,
    /// `Γ(F_K ∪ {K})`.
    pub basis: ComponentBasis,
    pub generator_vectors: Vec<ClassVector>,
    pub target: ClassVector,
    pub certificate: SpanCertificate,
}

/// Decides whether `K` lies in the homomorphism distinguishing closure of the
/// class: `K ∈ cl(F)` iff `K ∈ cl(F_K)` iff the vector of `K` lies in the span
/// of the vectors of `F_K` over `Γ(F_K ∪ {K})`.
///
/// For union-closed specs only the generator vectors enter the span: every
/// member vector is a nonnegative integer combination of them.
pub fn in_closure(spec: &GraphClassSpec, k: &Graph) -> Result<ClosureVerdict> {
    k.require_simple()?;
    let restricted = restrict_to_colourable(spec, k);
    let basis = component_basis(&restricted, std::slice::from_ref(k))?;
    let generator_vectors: Vec<ClassVector> = restricted
        .generators()
        .iter()
        .map(|f| vectorize(f, &basis))
        .collect::<Result<_>>()?;
    let target = vectorize(k, &basis)?;
    let covered: Vec<bool> = (0..basis.len())
        .map(|i| generator_vectors.iter().any(|v| v.entries()[i] > 0))
        .collect();
    let certificate = match (0..basis.len()).find(|&i| target.entries()[i] > 0 && !covered[i]) {
        Some(i) => {
            // a component no generator has: the unit vector separates
            let mut z = vec![BigInt::zero(); basis.len()];
            z[i] = BigInt::one();
            SpanCertificate::Out { z }
        }
        None => span_membership(&generator_vectors, &target)?,
    };
    Ok(ClosureVerdict {
        member: certificate.is_in(),
        restricted,
        basis,
        generator_vectors,
        target,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{g, k2, k2p3, p3, times, union_closed};
    use super::*;
    use crate::enumerate::all_simple_graphs_up_to;
    use crate::graph::disjoint_union;
    use crate::hom::{hom, hom_vector};
    use std::collections::HashMap;

    fn cv(x: &[usize]) -> ClassVector {
        ClassVector::new(x.to_vec())
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn span_examples() {
        let c = span_membership(&[cv(&[1, 1])], &cv(&[2, 2])).unwrap();
        assert_eq!(c, SpanCertificate::In { alpha: vec![q(2)] });
        let c = span_membership(&[cv(&[1, 1])], &cv(&[1, 0])).unwrap();
        assert_eq!(c, SpanCertificate::Out { z: vec![BigInt::from(1), BigInt::from(-1)] });
        let c = span_membership(&[], &cv(&[0, 0])).unwrap();
        assert_eq!(c, SpanCertificate::In { alpha: vec![] });
        assert_eq!(
            span_membership(&[cv(&[1])], &cv(&[1, 0])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn certificates_reverify() {
        let vectors = [cv(&[1, 2, 0, 1]), cv(&[0, 1, 1, 3]), cv(&[2, 5, 1, 5])];
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let t = cv(&[a, b, c, d]);
                        let cert = span_membership(&vectors, &t).unwrap();
                        assert!(cert.verify(&vectors, &t), "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn closure_examples() {
        let spec = union_closed(&[k2p3()]);
        let v = in_closure(&spec, &k2()).unwrap();
        assert!(!v.member);
        assert_eq!(v.target, cv(&[1, 0]));
        assert!(v.certificate.verify(&v.generator_vectors, &v.target));
        let v = in_closure(&spec, &times(3, &k2p3())).unwrap();
        assert_eq!(v.certificate, SpanCertificate::In { alpha: vec![q(3)] });
        let spec = union_closed(&[k2(), p3()]);
        assert!(in_closure(&spec, &times(2, &p3())).unwrap().member);
    }

    #[test]
    fn components_outside_the_class_separate() {
        let spec = union_closed(&[k2()]);
        let v = in_closure(&spec, &disjoint_union(&k2(), &Graph::cycle(4))).unwrap();
        assert!(!v.member);
        assert!(v.certificate.verify(&v.generator_vectors, &v.target));
        // K3 is not K2-colourable, so it is dropped for K = K2
        let spec = union_closed(&[Graph::complete(3), k2()]);
        let v = in_closure(&spec, &k2()).unwrap();
        assert_eq!(v.restricted.generators(), &[k2()]);
        assert!(v.member);
    }

    /// Buckets all graphs on at most five vertices by their generator counts
    /// and checks that `hom(K, -)` is constant on every bucket.
    fn determined_on_small_graphs(spec: &GraphClassSpec, k: &Graph) -> bool {
        let mut buckets = HashMap::new();
        for x in all_simple_graphs_up_to(5) {
            let key = hom_vector(spec.generators(), &x);
            let value = hom(k, &x);
            if *buckets.entry(key).or_insert_with(|| value.clone()) != value {
                return false;
            }
        }
        true
    }

    #[test]
    fn closure_members_are_determined_semantically() {
        let specs = [
            union_closed(&[k2p3()]),
            union_closed(&[k2(), p3()]),
            union_closed(&[disjoint_union(&k2(), &g("3 0-1 0-2 1-2"))]),
            GraphClassSpec::new(vec![Graph::empty(1), Graph::complete(3)], false).unwrap(),
        ];
        let ks = [
            k2(),
            p3(),
            k2p3(),
            times(2, &k2()),
            disjoint_union(&p3(), &p3()),
            Graph::complete(3),
            Graph::empty(2),
        ];
        for spec in &specs {
            for k in &ks {
                let v = in_closure(spec, k).unwrap();
                assert!(v.certificate.verify(&v.generator_vectors, &v.target));
                if v.member {
                    assert!(determined_on_small_graphs(spec, k), "{k} in closure of {spec:?}");
                }
            }
        }
    }
}
