//! Seeded random generation of ring elements for property checks.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::LaurentPoly;

/// The generator used throughout for reproducible samples.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random Laurent polynomials.
#[derive(Clone, Debug)]
pub struct LaurentSampler {
    pub rank: usize,
    pub max_terms: usize,
    pub exponents: RangeInclusive<i64>,
    pub coefficients: RangeInclusive<i64>,
}

impl LaurentSampler {
    pub fn new(rank: usize) -> Self {
        LaurentSampler { rank, max_terms: 3, exponents: -1..=2, coefficients: -3..=3 }
    }

    pub fn polynomial(rank: usize) -> Self {
        LaurentSampler { exponents: 0..=2, ..Self::new(rank) }
    }

    /// Up to `max_terms` random terms; may be zero.
    pub fn sample(&self, rng: &mut impl Rng) -> LaurentPoly {
        let terms = rng.gen_range(0..=self.max_terms);
        let mut p = LaurentPoly::zero(self.rank);
        for _ in 0..terms {
            let exp: Vec<i64> = (0..self.rank).map(|_| rng.gen_range(self.exponents.clone())).collect();
            let c = rng.gen_range(self.coefficients.clone());
            p.add_term(exp, BigInt::from(c));
        }
        p
    }

    /// A random exponent vector in the configured range.
    pub fn exponent(&self, rng: &mut impl Rng) -> Vec<i64> {
        (0..self.rank).map(|_| rng.gen_range(self.exponents.clone())).collect()
    }
}
