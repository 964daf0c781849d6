use num_bigint::BigUint;

use super::{component_basis, vectorize, ClassVector, GraphClassSpec, MAX_COMPONENT_TYPES};
use crate::error::{Error, Result};
use crate::graph::{disjoint_union_all, Graph};
use crate::hom::{hom, is_colourable};
use crate::linalg::RationalMatrix;

fn rank(vectors: &[&ClassVector], d: usize) -> usize {
    let rows: Vec<Vec<u64>> = vectors
        .iter()
        .map(|v| v.entries().iter().map(|&x| x as u64).collect())
        .collect();
    RationalMatrix::from_integer_rows(d, &rows).rank()
}

/// Finitely many generators `F'` with `G ≡_F H` iff `G ≡_F' H`.
///
/// For every `Λ ⊆ Γ(F)` with `L = ⊔Λ`, greedily keeps the `L`-colourable
/// generators that raise the rank, so the kept ones span the vectors of all
/// of `F_L`. The result is the union over all `Λ`, in generator order.
pub fn finite_generating_subclass(spec: &GraphClassSpec) -> Result<Vec<Graph>> {
    let basis = component_basis(spec, &[])?;
    let d = basis.len();
    if d > MAX_COMPONENT_TYPES {
        return Err(Error::TooManyComponents {
            found: d,
            limit: MAX_COMPONENT_TYPES,
        });
    }
    let gens = spec.generators();
    let vectors: Vec<ClassVector> = gens.iter().map(|f| vectorize(f, &basis)).collect::<Result<_>>()?;
    let mut keep = vec![false; gens.len()];
    let mut slices = Vec::new();
    for mask in 0u32..1 << d {
        let parts: Vec<&Graph> = (0..d)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| &basis.components()[i])
            .collect();
        let l = disjoint_union_all(parts);
        let colourable: Vec<usize> = (0..gens.len()).filter(|&i| is_colourable(&gens[i], &l)).collect();
        let mut chosen: Vec<usize> = Vec::new();
        for &i in &colourable {
            let mut trial: Vec<&ClassVector> = chosen.iter().map(|&j| &vectors[j]).collect();
            let before = rank(&trial, d);
            trial.push(&vectors[i]);
            if rank(&trial, d) > before {
                chosen.push(i);
            }
        }
        for &i in &chosen {
            keep[i] = true;
        }
        slices.push(colourable);
    }
    let kept: Vec<usize> = (0..gens.len()).filter(|&i| keep[i]).collect();
    // every slice is spanned by the kept generators inside it
    for colourable in &slices {
        let all: Vec<&ClassVector> = colourable.iter().map(|&i| &vectors[i]).collect();
        let sub: Vec<&ClassVector> = colourable
            .iter()
            .filter(|i| kept.contains(i))
            .map(|&i| &vectors[i])
            .collect();
        assert_eq!(rank(&all, d), rank(&sub, d), "subclass does not span a slice");
    }
    Ok(kept.into_iter().map(|i| gens[i].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomIndVerdict {
    Equivalent,
    Distinguisher {
        f: Graph,
        hom_g: BigUint,
        hom_h: BigUint,
    },
}

/// Decides `G ≡_F H` by comparing counts from the finite generating subclass.
pub fn homind_decide(spec: &GraphClassSpec, g: &Graph, h: &Graph) -> Result<HomIndVerdict> {
    for f in finite_generating_subclass(spec)? {
        let (hom_g, hom_h) = (hom(&f, g), hom(&f, h));
        if hom_g != hom_h {
            return Ok(HomIndVerdict::Distinguisher { f, hom_g, hom_h });
        }
    }
    Ok(HomIndVerdict::Equivalent)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{g, k2, k2p3, times, union_closed};
    use super::*;
    use crate::enumerate::random_small_graph;
    use crate::graph::disjoint_union;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cycles() -> GraphClassSpec {
        GraphClassSpec::new((3..=8).map(Graph::cycle).collect(), false).unwrap()
    }

    #[test]
    fn subclass_examples() {
        assert_eq!(finite_generating_subclass(&union_closed(&[k2p3()])).unwrap(), vec![k2p3()]);
        let k3 = Graph::complete(3);
        assert_eq!(
            finite_generating_subclass(&union_closed(&[k2(), k3.clone()])).unwrap(),
            vec![k2(), k3]
        );
        let spec = union_closed(&[times(2, &k2()), times(3, &k2())]);
        assert_eq!(finite_generating_subclass(&spec).unwrap(), vec![times(2, &k2())]);
    }

    #[test]
    fn decide_examples() {
        let star = Graph::star(4);
        let c4k1 = disjoint_union(&Graph::cycle(4), &Graph::empty(1));
        assert_eq!(homind_decide(&cycles(), &star, &c4k1).unwrap(), HomIndVerdict::Equivalent);
        let spec = union_closed(&[k2()]);
        assert_eq!(
            homind_decide(&spec, &Graph::complete(3), &Graph::path(3)).unwrap(),
            HomIndVerdict::Distinguisher {
                f: k2(),
                hom_g: 6u8.into(),
                hom_h: 4u8.into()
            }
        );
        let spec = union_closed(&[Graph::empty(1)]);
        let k3 = Graph::complete(3);
        assert!(matches!(
            homind_decide(&spec, &k3, &disjoint_union(&k3, &Graph::empty(1))).unwrap(),
            HomIndVerdict::Distinguisher { .. }
        ));
    }

    /// Members sampled as unions of at most three generators.
    fn sample_member(spec: &GraphClassSpec, rng: &mut ChaCha8Rng) -> Graph {
        let gens = spec.generators();
        if !spec.union_closed() {
            return gens[rng.gen_range(0..gens.len())].clone();
        }
        let k = rng.gen_range(1..=3);
        let parts: Vec<&Graph> = (0..k).map(|_| &gens[rng.gen_range(0..gens.len())]).collect();
        disjoint_union_all(parts)
    }

    #[test]
    fn equivalent_means_every_member_agrees() {
        let specs = [
            union_closed(&[k2p3(), k2(), g("4 0-1 1-2 2-3")]),
            union_closed(&[times(2, &k2()), Graph::complete(3)]),
            cycles(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for spec in &specs {
            let mut equivalent = 0;
            for _ in 0..300 {
                let a = random_small_graph(&mut rng, 6);
                let b = random_small_graph(&mut rng, 6);
                if homind_decide(spec, &a, &b).unwrap() != HomIndVerdict::Equivalent {
                    continue;
                }
                equivalent += 1;
                for _ in 0..50 {
                    let f = sample_member(spec, &mut rng);
                    assert_eq!(hom(&f, &a), hom(&f, &b), "{f} on {a} and {b}");
                }
            }
            assert!(equivalent > 0);
        }
    }
}
