//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use gkm_ktheory::algebra::{LaurentPoly, Weight};
use gkm_ktheory::gkm::{EquivariantClass, GkmGraph, Theory};
use gkm_ktheory::sampling::LaurentSampler;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

type Terms = BTreeMap<Vec<i64>, BigInt>;

fn terms_of(p: &LaurentPoly) -> Terms {
    p.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
}

fn add_shifted(acc: &mut Terms, p: &Terms, shift: &[i64], scale: &BigInt) {
    for (e, c) in p {
        let key: Vec<i64> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
        let slot = acc.entry(key.clone()).or_default();
        *slot += c * scale;
        if slot.is_zero() {
            acc.remove(&key);
        }
    }
}

/// Long division by `1 - z^alpha` on lex-leading terms, written without the
/// library's arithmetic. Returns the quotient when the division is exact.
///
/// If `P = Q (1 - z^alpha)` then in each coordinate the exponents of `Q` lie
/// in `[min P - min(0, a), max P - max(0, a)]`; a quotient term outside this
/// box proves that the division is not exact, and since the quotient terms
/// strictly decrease the loop terminates.
pub fn brute_force_divide(p: &LaurentPoly, alpha: &Weight) -> Option<LaurentPoly> {
    let n = alpha.rank();
    if p.is_zero() {
        return Some(LaurentPoly::zero(n));
    }
    let zero = vec![0; n];
    let a = alpha.coords().to_vec();
    let (lead, lead_coeff, tail, tail_coeff) =
        if a > zero { (a.clone(), BigInt::from(-1), zero.clone(), BigInt::from(1)) } else { (zero.clone(), BigInt::from(1), a.clone(), BigInt::from(-1)) };
    let mut divisor = Terms::new();
    divisor.insert(lead.clone(), lead_coeff.clone());
    divisor.insert(tail, tail_coeff);

    let mut rem = terms_of(p);
    let lo: Vec<i64> = (0..n).map(|i| rem.keys().map(|e| e[i]).min().unwrap() - a[i].min(0)).collect();
    let hi: Vec<i64> = (0..n).map(|i| rem.keys().map(|e| e[i]).max().unwrap() - a[i].max(0)).collect();
    let mut quotient = Terms::new();
    while let Some((top, c)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let shift: Vec<i64> = top.iter().zip(&lead).map(|(t, l)| t - l).collect();
        if (0..n).any(|i| shift[i] < lo[i] || shift[i] > hi[i]) {
            return None;
        }
        let q = &c / &lead_coeff;
        *quotient.entry(shift.clone()).or_default() += &q;
        add_shifted(&mut rem, &divisor, &shift, &-q);
    }
    Some(LaurentPoly::from_terms(n, quotient).unwrap())
}

pub fn random_weight(rng: &mut impl Rng, rank: usize, bound: i64) -> Weight {
    loop {
        let w = Weight::new((0..rank).map(|_| rng.gen_range(-bound..=bound)).collect());
        if !w.is_zero() {
            return w;
        }
    }
}

/// Whether two weights are linearly independent (all 2x2 minors vanish
/// exactly when they are parallel).
pub fn independent(a: &Weight, b: &Weight) -> bool {
    let (x, y) = (a.coords(), b.coords());
    (0..x.len()).any(|i| (0..x.len()).any(|j| x[i] * y[j] != x[j] * y[i]))
}

/// A random `R(T)`-linear combination of `terms` classes drawn from `blocks`.
pub fn random_combination(
    rng: &mut impl Rng,
    blocks: &[EquivariantClass],
    rank: usize,
    terms: usize,
) -> EquivariantClass {
    let sampler = LaurentSampler::new(rank);
    let mut acc = blocks[0].scale(&LaurentPoly::zero(rank)).unwrap();
    for _ in 0..terms {
        let b = &blocks[rng.gen_range(0..blocks.len())];
        acc = acc.add(&b.scale(&sampler.sample(rng)).unwrap()).unwrap();
    }
    acc
}

/// Direct check of the edge conditions with the oracle division.
pub fn is_k_class_by_oracle(graph: &GkmGraph, f: &EquivariantClass) -> bool {
    assert_eq!(f.theory(), Theory::K);
    graph.edges().iter().all(|e| {
        let diff = f.value(graph.vertex_name(e.src)).unwrap() - f.value(graph.vertex_name(e.dst)).unwrap();
        brute_force_divide(&diff, &e.alpha).is_some()
    })
}

/// Laurent polynomials of the given rank with up to `max_terms` terms,
/// exponents in `-2..=2` and coefficients in `-4..=4`.
pub fn laurent(rank: usize, max_terms: usize) -> impl proptest::strategy::Strategy<Value = LaurentPoly> {
    use proptest::prelude::*;
    proptest::collection::vec((proptest::collection::vec(-2i64..=2, rank), -4i64..=4), 0..=max_terms).prop_map(
        move |terms| LaurentPoly::from_terms(rank, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap(),
    )
}

/// Nonzero weights of the given rank with entries in `-3..=3`.
pub fn weight(rank: usize) -> impl proptest::strategy::Strategy<Value = Weight> {
    use proptest::prelude::*;
    proptest::collection::vec(-3i64..=3, rank).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0)).prop_map(Weight::new)
}
