use num_bigint::BigUint;
use rand::Rng;

use super::{restrict_to_colourable, GraphClassSpec};
use crate::enumerate::random_small_graph;
use crate::error::{Error, Result};
use crate::graph::{categorical_product, Graph};
use crate::hom::{hom, is_colourable};

/// `G × K ≡_F H × K` implies `G ≡_F H` for all `G, H` iff every generator is
/// `K`-colourable.
pub fn cancellation_admits(spec: &GraphClassSpec, k: &Graph) -> bool {
    spec.generators().iter().all(|f| is_colourable(f, k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationReport {
    pub pairs: usize,
    /// A pair where `G × K ≡_F H × K` and `G ≡_{F_K} H` disagree.
    pub lemma_violation: Option<(Graph, Graph)>,
    /// A pair with `G × K ≡_F H × K` but not `G ≡_F H`.
    pub counterexample: Option<(Graph, Graph)>,
    pub admits: bool,
    /// `admits` holds exactly when no counterexample was found, and the lemma
    /// held on every pair.
    pub agreement: bool,
}

impl CancellationReport {
    pub fn passes(&self) -> bool {
        self.lemma_violation.is_none()
    }
}

/// Samples `trials` random graphs on at most `size` vertices and checks every
/// pair. Counts into `G × K` are taken on the explicit product graph.
pub fn cancellation_probe<R: Rng + ?Sized>(
    spec: &GraphClassSpec,
    k: &Graph,
    trials: usize,
    size: usize,
    rng: &mut R,
) -> Result<CancellationReport> {
    if trials == 0 || size == 0 {
        return Err(Error::InvalidBound("trials and size must be positive".into()));
    }
    k.require_simple()?;
    let gens = spec.generators();
    let restricted = restrict_to_colourable(spec, k);
    struct Sample {
        g: Graph,
        times_k: Vec<BigUint>,
        plain: Vec<BigUint>,
        restricted: Vec<BigUint>,
    }
    let pool: Vec<Sample> = (0..trials)
        .map(|_| {
            let g = random_small_graph(rng, size);
            let product = categorical_product(&g, k);
            let times_k = gens.iter().map(|f| hom(f, &product)).collect();
            let plain: Vec<BigUint> = gens.iter().map(|f| hom(f, &g)).collect();
            let restricted = restricted.generators().iter().map(|f| hom(f, &g)).collect();
            Sample {
                g,
                times_k,
                plain,
                restricted,
            }
        })
        .collect();
    let mut pairs = 0;
    let mut lemma_violation = None;
    let mut counterexample = None;
    for (i, a) in pool.iter().enumerate() {
        for b in &pool[i + 1..] {
            pairs += 1;
            let product_equal = a.times_k == b.times_k;
            if product_equal != (a.restricted == b.restricted) && lemma_violation.is_none() {
                lemma_violation = Some((a.g.clone(), b.g.clone()));
            }
            if product_equal && a.plain != b.plain && counterexample.is_none() {
                counterexample = Some((a.g.clone(), b.g.clone()));
            }
        }
    }
    let admits = cancellation_admits(spec, k);
    Ok(CancellationReport {
        pairs,
        agreement: lemma_violation.is_none() && admits == counterexample.is_none(),
        lemma_violation,
        counterexample,
        admits,
    })
}
