use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{in_closure, GraphClassSpec, SpanCertificate};
use crate::error::{Error, Result};
use crate::enumerate::random_graph;
use crate::graph::{categorical_product, connected_components, disjoint_union_all, Graph};
use crate::hom::hom;
use crate::linalg::{bareiss_determinant, common_denominator, is_positive, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessOptions {
    pub seed: u64,
    /// Largest order of a sampled probe graph.
    pub max_probe_order: usize,
    /// Samples drawn per order before moving to the next one.
    pub samples_per_order: usize,
    /// Positive starting vectors tried before giving up.
    pub retries: usize,
}

impl WitnessOptions {
    pub fn with_seed(seed: u64) -> Self {
        WitnessOptions {
            seed,
            max_probe_order: 10,
            samples_per_order: 40,
            retries: 16,
        }
    }
}

/// `(⊔ a_G · G) × K`, kept symbolic because the multiplicities are large.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessGraph {
    pub parts: Vec<(BigUint, Graph)>,
    /// Categorical factor applied to the whole union, if any.
    pub times: Option<Graph>,
}

impl WitnessGraph {
    /// `hom(F, -)` via `hom(C, ⊔ a_G G) = Σ a_G hom(C, G)` for connected `C`,
    /// multiplicativity over the components of `F`, and
    /// `hom(F, X × K) = hom(F, X) hom(F, K)`.
    pub fn hom_from(&self, f: &Graph) -> BigUint {
        let mut total = BigUint::one();
        for c in connected_components(f) {
            total *= self
                .parts
                .iter()
                .map(|(a, g)| a * hom(&c, g))
                .sum::<BigUint>();
        }
        if let Some(k) = &self.times {
            total *= hom(f, k);
        }
        total
    }

    pub fn order(&self) -> BigUint {
        self.hom_from(&Graph::empty(1))
    }

    /// The explicit graph, if it has at most `max_vertices` vertices.
    pub fn materialize(&self, max_vertices: usize) -> Option<Graph> {
        if self.order() > BigUint::from(max_vertices) {
            return None;
        }
        let mut pieces = Vec::new();
        for (a, g) in &self.parts {
            let a = usize::try_from(a).ok()?;
            pieces.extend(std::iter::repeat(g).take(a));
        }
        let union = disjoint_union_all(pieces);
        Some(match &self.times {
            Some(k) => categorical_product(&union, k),
            None => union,
        })
    }
}

impl fmt::Display for WitnessGraph {
    /// `a*[graph] + b*[graph]`, followed by `x [K]` for a categorical factor.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(a, g)| format!("{a}*[{g}]")).collect();
        match &self.times {
            Some(k) => write!(f, "({}) x [{k}]", parts.join(" + ")),
            None => write!(f, "{}", parts.join(" + ")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub h: WitnessGraph,
    pub h_prime: WitnessGraph,
    /// Component basis `C` and the separating vector `z` over it.
    pub basis: Vec<Graph>,
    pub z: Vec<BigInt>,
    /// Probe graphs indexing the columns of `M = (hom(C, G))`.
    pub probes: Vec<Graph>,
    pub determinant: BigInt,
    pub t: BigRational,
    pub lambda: BigInt,
    pub hom_k: (BigUint, BigUint),
}

fn q(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn power(t: &BigRational, e: &BigInt) -> BigRational {
    let n: u32 = e.abs().try_into().expect("exponent fits in u32");
    let mut r = BigRational::one();
    for _ in 0..n {
        r *= t;
    }
    if e.is_negative() {
        r.recip()
    } else {
        r
    }
}

/// Builds `H, H'` with equal counts from every generator but different
/// `hom(K, -)`, for `K` outside the closure.
///
/// With `z` separating `K` from the generators of `F_K` over
/// `C = Γ(F_K ∪ {K})`, probe graphs `G` are sampled until
/// `M = (hom(C, G))_{C, G}` is invertible. For `p = M s` and
/// `s' = M^{-1}(t^{z_C} p_C)_C` with `s, s' > 0`, the graphs
/// `H = ⊔ (λs)_G G` and `H' = ⊔ (λs')_G G` satisfy
/// `hom(F, H') = t^{<z, F>} hom(F, H)`. Generators that are not
/// `K`-colourable are handled by multiplying both sides by `K`.
pub fn witness_pair(spec: &GraphClassSpec, k: &Graph, opts: &WitnessOptions) -> Result<WitnessPair> {
    let verdict = in_closure(spec, k)?;
    let z = match &verdict.certificate {
        SpanCertificate::In { .. } => return Err(Error::InClosure),
        SpanCertificate::Out { z } => z.clone(),
    };
    let basis = verdict.basis.components().to_vec();
    let c = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut probes: Vec<Graph> = Vec::new();
    let mut columns: Vec<Vec<BigRational>> = Vec::new();
    'search: for order in 1..=opts.max_probe_order {
        for _ in 0..opts.samples_per_order {
            let p = [0.3, 0.5, 0.7][rng.gen_range(0..3)];
            let g = random_graph(&mut rng, order, p);
            let col: Vec<BigRational> = basis.iter().map(|b| q(hom(b, &g))).collect();
            columns.push(col);
            if RationalMatrix::from_rows(c, columns.clone()).rank() == columns.len() {
                probes.push(g);
                if probes.len() == c {
                    break 'search;
                }
            } else {
                columns.pop();
            }
        }
    }
    if probes.len() < c {
        return Err(Error::SearchExhausted(format!(
            "found {} of {c} independent probe graphs up to order {}",
            probes.len(),
            opts.max_probe_order
        )));
    }
    let m = RationalMatrix::from_rows(c, columns).transpose();
    let int_rows: Vec<Vec<BigInt>> = (0..c)
        .map(|i| m.row(i).iter().map(|x| x.to_integer()).collect())
        .collect();
    let determinant = bareiss_determinant(&int_rows);
    debug_assert_eq!(q(determinant.clone()), m.determinant());
    let m_inv = m.inverse().expect("probe matrix has full rank");

    for attempt in 0..opts.retries {
        let s: Vec<BigRational> = (0..c)
            .map(|_| q(if attempt == 0 { 1 } else { rng.gen_range(1..=8) }))
            .collect();
        let p = m.mul_vec(&s);
        for i in 0..=64u32 {
            let t = BigRational::one() + BigRational::new(BigInt::one(), BigInt::one() << i);
            let shifted: Vec<BigRational> = p
                .iter()
                .zip(&z)
                .map(|(pc, zc)| pc * power(&t, zc))
                .collect();
            let s_prime = m_inv.mul_vec(&shifted);
            if !is_positive(&s_prime) {
                continue;
            }
            let lambda = common_denominator(&s_prime);
            let scale = |v: &[BigRational]| -> Vec<(BigUint, Graph)> {
                v.iter()
                    .zip(&probes)
                    .map(|(x, g)| {
                        let a = (x * q(lambda.clone())).to_integer();
                        (a.to_biguint().expect("positive"), g.clone())
                    })
                    .collect()
            };
            let times = (verdict.restricted.generators().len() != spec.generators().len()).then(|| k.clone());
            let h = WitnessGraph {
                parts: scale(&s),
                times: times.clone(),
            };
            let h_prime = WitnessGraph {
                parts: scale(&s_prime),
                times,
            };
            for f in spec.generators() {
                assert_eq!(h.hom_from(f), h_prime.hom_from(f), "generator {f} separates the witness pair");
            }
            let hom_k = (h.hom_from(k), h_prime.hom_from(k));
            assert_ne!(hom_k.0, hom_k.1, "witness pair does not separate K");
            return Ok(WitnessPair {
                h,
                h_prime,
                basis,
                z,
                probes,
                determinant,
                t,
                lambda,
                hom_k,
            });
        }
    }
    Err(Error::SearchExhausted(format!(
        "no positive solution after {} starting vectors",
        opts.retries
    )))
}
