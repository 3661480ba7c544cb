//! Divisibility by `1 - z^α` in `R(T)` and by linear forms in `S`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{LaurentPoly, Poly, Weight};
use crate::{Error, Result};

/// Representative of the coset `m + Zα`: the unique element whose coordinate
/// at the first nonzero position `i` of `α` lies in `[0, |α_i|)`.
fn coset_key(m: &[i64], alpha: &[i64], pivot: usize) -> Vec<i64> {
    let k = m[pivot].div_euclid(alpha[pivot]);
    m.iter().zip(alpha).map(|(x, a)| x - k * a).collect()
}

/// Decides whether `1 - z^α` divides `p` using the group-ring quotient
/// `R(T) -> Z[Z^n / Zα]`: the kernel of this map is exactly the ideal
/// generated by `1 - z^α`, so `p` is divisible iff the coefficients in
/// every coset of `Zα` sum to zero.
pub fn is_divisible_by_binomial(p: &LaurentPoly, alpha: &Weight) -> Result<bool> {
    alpha.check_rank(p.rank())?;
    let a = alpha.coords();
    let pivot = a.iter().position(|&c| c != 0).ok_or(Error::ZeroWeight)?;
    let mut sums: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for (e, c) in p.terms() {
        *sums.entry(coset_key(e, a, pivot)).or_insert_with(BigInt::zero) += c;
    }
    Ok(sums.values().all(|s| s.is_zero()))
}

/// Returns `β` with `p = β (1 - z^α)` when such a `β ∈ R(T)` exists.
///
/// The quotient is extracted by cancelling the lexicographically largest
/// remaining term against a multiple `c z^m (1 - z^α)`. This only runs after
/// the coset-sum test has certified divisibility, which guarantees that the
/// loop terminates.
pub fn divides_binomial(p: &LaurentPoly, alpha: &Weight) -> Result<Option<LaurentPoly>> {
    if !is_divisible_by_binomial(p, alpha)? {
        return Ok(None);
    }
    let rank = p.rank();
    let a = alpha.coords();
    let alpha_positive = a.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0);
    let mut rest = p.clone();
    let mut beta = LaurentPoly::zero(rank);
    while let Some((top, c)) = rest.leading_term() {
        let (top, c) = (top.clone(), c.clone());
        // z^m (1 - z^α) has terms z^m and -z^{m+α}; pick m so the larger one is `top`
        let (m, coeff) = if alpha_positive {
            (top.iter().zip(a).map(|(x, y)| x - y).collect::<Vec<_>>(), -c)
        } else {
            (top, c)
        };
        let plus_alpha: Vec<i64> = m.iter().zip(a).map(|(x, y)| x + y).collect();
        rest.add_term(m.clone(), -coeff.clone());
        rest.add_term(plus_alpha, coeff.clone());
        beta.add_term(m, coeff);
    }
    Ok(Some(beta))
}

/// Divisibility of `p` by `y_j - y_k` in `S` (0-based indices). The test is
/// that `p` vanishes under `y_j := y_k`; the quotient is then computed by
/// exact division.
pub fn divides_linear(p: &Poly, j: usize, k: usize) -> Result<Option<Poly>> {
    let n = p.rank();
    if j == k {
        return Err(Error::InvalidArgument("divides_linear requires j != k".into()));
    }
    if j >= n || k >= n {
        return Err(Error::InvalidArgument(format!("variable index out of range for rank {n}")));
    }
    if !p.identify_variables(j, k).is_zero() {
        return Ok(None);
    }
    let form = Poly::linear_form(&Weight::difference(n, j, k));
    Ok(p.div_exact(&form))
}

/// Divisibility of `p` by the linear form `Σ α_i y_i` in `S`.
pub fn divides_linear_form(p: &Poly, alpha: &Weight) -> Result<Option<Poly>> {
    alpha.check_rank(p.rank())?;
    if alpha.is_zero() {
        return Err(Error::ZeroWeight);
    }
    Ok(p.div_exact(&Poly::linear_form(alpha)))
}

/// The elementary symmetric polynomial `s_j(y_1, ..., y_n)`.
pub fn elementary_symmetric(j: usize, n: usize) -> Result<Poly> {
    if j > n {
        return Err(Error::InvalidArgument(format!("elementary symmetric index {j} exceeds rank {n}")));
    }
    let vars: Vec<LaurentPoly> = (0..n).map(|i| LaurentPoly::var(n, i)).collect();
    Ok(Poly::new(elementary_symmetric_of(&vars, j, n)).expect("products of variables are polynomials"))
}

/// `e_j` evaluated at arbitrary ring elements.
pub fn elementary_symmetric_of(values: &[LaurentPoly], j: usize, rank: usize) -> LaurentPoly {
    // e_j via the recurrence over the generating polynomial Π (1 + v t)
    let mut e: Vec<LaurentPoly> = vec![LaurentPoly::one(rank)];
    for v in values {
        let mut next = e.clone();
        next.push(LaurentPoly::zero(rank));
        for k in 1..next.len() {
            next[k] = &e.get(k).cloned().unwrap_or_else(|| LaurentPoly::zero(rank)) + &(&e[k - 1] * v);
        }
        e = next;
    }
    e.get(j).cloned().unwrap_or_else(|| LaurentPoly::zero(rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::one_minus_character;

    fn z(exp: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(exp.to_vec(), 1)
    }

    #[test]
    fn binomial_difference_of_variables() {
        let p = &z(&[1, 0, 0]) - &z(&[0, 1, 0]);
        let beta = divides_binomial(&p, &Weight::new(vec![1, -1, 0])).unwrap().unwrap();
        assert_eq!(beta, -z(&[0, 1, 0]));
    }

    #[test]
    fn binomial_zero_polynomial() {
        let beta = divides_binomial(&LaurentPoly::zero(2), &Weight::new(vec![3, 1])).unwrap();
        assert_eq!(beta, Some(LaurentPoly::zero(2)));
    }

    #[test]
    fn binomial_difference_of_squares() {
        let p = &LaurentPoly::one(2) - &z(&[2, 2]);
        let beta = divides_binomial(&p, &Weight::new(vec![1, 1])).unwrap().unwrap();
        assert_eq!(beta, &LaurentPoly::one(2) + &z(&[1, 1]));
    }

    #[test]
    fn binomial_not_divisible() {
        assert_eq!(divides_binomial(&z(&[1, 0]), &Weight::new(vec![1, -1])).unwrap(), None);
    }

    #[test]
    fn binomial_rejects_zero_weight() {
        assert!(matches!(divides_binomial(&z(&[1, 0]), &Weight::zero(2)), Err(Error::ZeroWeight)));
    }

    #[test]
    fn binomial_with_negative_direction() {
        let alpha = Weight::new(vec![-2, 1]);
        let q = &z(&[3, -1]) + &z(&[-1, 4]).scale(&(-5).into());
        let p = &q * &one_minus_character(&alpha);
        assert_eq!(divides_binomial(&p, &alpha).unwrap().unwrap(), q);
    }

    #[test]
    fn multiple_weight_is_not_primitive_quotient() {
        // 1 - z1 is not divisible by 1 - z1^2
        let p = &LaurentPoly::one(1) - &z(&[1]);
        assert_eq!(divides_binomial(&p, &Weight::new(vec![2])).unwrap(), None);
        let p = &LaurentPoly::one(1) - &z(&[4]);
        assert_eq!(divides_binomial(&p, &Weight::new(vec![2])).unwrap().unwrap(), &LaurentPoly::one(1) + &z(&[2]));
    }

    #[test]
    fn linear_examples() {
        let y1 = Poly::var(3, 0);
        let y2 = Poly::var(3, 1);
        let p = &y1.pow(2) - &y2.pow(2);
        assert_eq!(divides_linear(&p, 0, 1).unwrap().unwrap(), &y1 + &y2);
        assert_eq!(divides_linear(&Poly::var(3, 2), 0, 1).unwrap(), None);
        assert_eq!(divides_linear(&Poly::zero(3), 0, 1).unwrap(), Some(Poly::zero(3)));
        assert!(divides_linear(&p, 1, 1).is_err());
    }

    #[test]
    fn elementary_symmetric_examples() {
        assert_eq!(elementary_symmetric(0, 3).unwrap(), Poly::one(3));
        let s1 = &(&Poly::var(3, 0) + &Poly::var(3, 1)) + &Poly::var(3, 2);
        assert_eq!(elementary_symmetric(1, 3).unwrap(), s1);
        let s3 = &(&Poly::var(3, 0) * &Poly::var(3, 1)) * &Poly::var(3, 2);
        assert_eq!(elementary_symmetric(3, 3).unwrap(), s3);
        assert_eq!(elementary_symmetric(2, 3).unwrap().num_terms(), 3);
        assert!(elementary_symmetric(4, 3).is_err());
    }
}
