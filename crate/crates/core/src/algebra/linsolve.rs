//! Exact linear algebra over `R(T)` and its fraction field.

use super::gcd::gcd;
use super::{elementary_symmetric_of, LatticeMap, LaurentPoly, RationalFunction};
use crate::{Error, Result};

/// Largest system size accepted by [`solve_system_over_fractions`].
pub const MAX_SYSTEM_SIZE: usize = 64;

/// Replaces every monomial `z^m` of `p` by `z^{w(m)}`.
pub fn substitute_lattice_map(w: &LatticeMap, p: &LaurentPoly) -> Result<LaurentPoly> {
    if w.dim() != p.rank() {
        return Err(Error::RankMismatch { expected: p.rank(), found: w.dim() });
    }
    if !w.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    Ok(p.substitute(w))
}

fn check_square(m: &[Vec<LaurentPoly>]) -> Result<usize> {
    let n = m.len();
    if n > MAX_SYSTEM_SIZE {
        return Err(Error::DimensionMismatch(format!("system of size {n} exceeds {MAX_SYSTEM_SIZE}")));
    }
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    Ok(n)
}

/// Fraction-free Gaussian elimination in place. Returns `None` when the
/// matrix is singular, otherwise the sign of the row permutation used.
fn bareiss(a: &mut [Vec<LaurentPoly>], n: usize) -> Option<i32> {
    let rank = a[0][0].rank();
    let mut sign = 1;
    let mut prev = LaurentPoly::one(rank);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        if pivot != k {
            a.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..a[i].len() {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero(rank);
        }
        prev = a[k][k].clone();
    }
    Some(sign)
}

/// Determinant of a square matrix over `R(T)`.
pub fn determinant(m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    let n = check_square(m)?;
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let rank = m[0][0].rank();
    let mut a = m.to_vec();
    Ok(match bareiss(&mut a, n) {
        None => LaurentPoly::zero(rank),
        Some(s) if s > 0 => a[n - 1][n - 1].clone(),
        Some(_) => -&a[n - 1][n - 1],
    })
}

/// Solves `M x = b` over the fraction field of `R(T)`. Returns `None` when
/// `det M = 0`; otherwise every entry of the unique solution in reduced form.
pub fn solve_system_over_fractions(m: &[Vec<LaurentPoly>], b: &[LaurentPoly]) -> Result<Option<Vec<RationalFunction>>> {
    let n = check_square(m)?;
    if b.len() != n {
        return Err(Error::DimensionMismatch(format!("right-hand side has length {}, expected {n}", b.len())));
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let rank = m[0][0].rank();
    let mut a: Vec<Vec<LaurentPoly>> =
        m.iter().zip(b).map(|(row, c)| row.iter().cloned().chain(std::iter::once(c.clone())).collect()).collect();
    if bareiss(&mut a, n).is_none() {
        return Ok(None);
    }
    // with D the last pivot, y_i = D x_i lies in the ring by Cramer's rule
    let d = a[n - 1][n - 1].clone();
    let mut y = vec![LaurentPoly::zero(rank); n];
    for i in (0..n).rev() {
        let mut acc = &d * &a[i][n];
        for j in i + 1..n {
            acc -= &(&a[i][j] * &y[j]);
        }
        y[i] = acc.div_exact(&a[i][i]).expect("back substitution is exact");
    }
    Ok(Some(y.into_iter().map(|yi| RationalFunction::new(yi, d.clone()).expect("nonzero pivot")).collect()))
}

/// `Σ_j a_j / Π_{i≠j} (ν_j - ν_i)` as a reduced rational function.
///
/// All terms are put over the common denominator `Π_{a<b} (ν_b - ν_a)`, and
/// its factors are divided out of the numerator one at a time whenever they
/// divide exactly; otherwise only their gcd with the numerator is cancelled.
/// Working factor by factor keeps every gcd computation small.
pub fn vandermonde_sum(nodes: &[LaurentPoly], values: &[LaurentPoly]) -> RationalFunction {
    assert_eq!(nodes.len(), values.len(), "one value per node");
    let n = nodes.len();
    assert!(n > 0, "at least one node");
    let rank = nodes[0].rank();
    let factor = |a: usize, b: usize| &nodes[b] - &nodes[a];
    let mut num = LaurentPoly::zero(rank);
    for j in 0..n {
        if values[j].is_zero() {
            continue;
        }
        let mut term = values[j].clone();
        for b in 0..n {
            for a in 0..b {
                if a != j && b != j {
                    term = &term * &factor(a, b);
                }
            }
        }
        if (n - 1 - j) % 2 == 1 {
            term = -term;
        }
        num += &term;
    }
    if num.is_zero() {
        return RationalFunction::zero(rank);
    }
    let negate = |e: Vec<i64>| e.into_iter().map(|x| -x).collect::<Vec<_>>();
    let num_shift = num.min_exponent();
    let mut num = num.shift(&negate(num_shift.clone()));
    let mut den = LaurentPoly::one(rank);
    let mut den_shift = vec![0; rank];
    for b in 0..n {
        for a in 0..b {
            let f = factor(a, b);
            let f_shift = f.min_exponent();
            let f = f.shift(&negate(f_shift.clone()));
            den_shift.iter_mut().zip(&f_shift).for_each(|(d, s)| *d += s);
            if let Some(q) = num.div_exact(&f) {
                num = q;
                continue;
            }
            let g = gcd(&num, &f);
            num = num.div_exact(&g).expect("gcd divides");
            den = &den * &f.div_exact(&g).expect("gcd divides");
        }
    }
    RationalFunction::from_coprime(num.shift(&num_shift), den.shift(&den_shift))
}

/// Coefficients `c_0..c_{N-1}` with `Σ_k c_k ν_j^k = a_j` for every node,
/// by Lagrange interpolation over the fraction field.
pub fn lagrange_coefficients(nodes: &[LaurentPoly], values: &[LaurentPoly]) -> Vec<RationalFunction> {
    assert_eq!(nodes.len(), values.len(), "one value per node");
    let n = nodes.len();
    let rank = nodes.first().map_or(0, LaurentPoly::rank);
    (0..n)
        .map(|k| {
            let weighted: Vec<LaurentPoly> = (0..n)
                .map(|j| {
                    let others: Vec<LaurentPoly> =
                        nodes.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, x)| x.clone()).collect();
                    let t = &values[j] * &elementary_symmetric_of(&others, n - 1 - k, rank);
                    if (n - 1 - k) % 2 == 1 {
                        -t
                    } else {
                        t
                    }
                })
                .collect();
            vandermonde_sum(nodes, &weighted)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(exp: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(exp.to_vec(), 1)
    }

    fn c(k: i64) -> LaurentPoly {
        LaurentPoly::constant(2, k)
    }

    fn check_solution(m: &[Vec<LaurentPoly>], b: &[LaurentPoly], x: &[RationalFunction]) {
        for (row, bi) in m.iter().zip(b) {
            let mut acc = RationalFunction::zero(bi.rank());
            for (mij, xj) in row.iter().zip(x) {
                acc = &acc + &(&RationalFunction::from_poly(mij.clone()) * xj);
            }
            assert_eq!(acc, RationalFunction::from_poly(bi.clone()));
        }
    }

    #[test]
    fn identity_system() {
        let m = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
        let b = vec![z(&[1, -1]), &z(&[0, 2]) + &c(3)];
        let x = solve_system_over_fractions(&m, &b).unwrap().unwrap();
        assert_eq!(x[0].to_laurent().unwrap(), b[0]);
        assert_eq!(x[1].to_laurent().unwrap(), b[1]);
    }

    #[test]
    fn vandermonde_two_by_two() {
        let m = vec![vec![c(1), z(&[1, 0])], vec![c(1), z(&[0, 1])]];
        let b = vec![c(1), c(0)];
        let x = solve_system_over_fractions(&m, &b).unwrap().unwrap();
        check_solution(&m, &b, &x);
        assert!(!x[0].is_polynomial());
    }

    #[test]
    fn singular_system() {
        let row = vec![c(1), z(&[1, 0])];
        let m = vec![row.clone(), row];
        assert!(solve_system_over_fractions(&m, &[c(1), c(2)]).unwrap().is_none());
        assert!(determinant(&m).unwrap().is_zero());
    }

    #[test]
    fn pivoting_needed() {
        let m = vec![vec![c(0), z(&[1, 0])], vec![z(&[0, 1]), c(2)]];
        let b = vec![c(5), z(&[1, 1])];
        let x = solve_system_over_fractions(&m, &b).unwrap().unwrap();
        check_solution(&m, &b, &x);
        assert_eq!(determinant(&m).unwrap(), -z(&[1, 1]));
    }

    #[test]
    fn dimension_mismatch() {
        let m = vec![vec![c(1), c(0)]];
        assert!(solve_system_over_fractions(&m, &[c(1)]).is_err());
        let m = vec![vec![c(1)]];
        assert!(solve_system_over_fractions(&m, &[c(1), c(2)]).is_err());
    }

    #[test]
    fn substitution_rules() {
        let swap = LatticeMap::permutation(&[1, 0]);
        assert_eq!(substitute_lattice_map(&swap, &z(&[1, 0])).unwrap(), z(&[0, 1]));
        let neg = LatticeMap::from_rows(vec![vec![-1]]).unwrap();
        assert_eq!(substitute_lattice_map(&neg, &z(&[1])).unwrap(), z(&[-1]));
        let bad = LatticeMap::from_rows(vec![vec![2, 0], vec![0, 1]]).unwrap();
        assert!(substitute_lattice_map(&bad, &z(&[1, 0])).is_err());
    }

    #[test]
    fn vandermonde_sum_of_powers() {
        // Σ ν_j^k / Π (ν_j - ν_i) is 0 for k < n-1 and 1 for k = n-1
        let nodes: Vec<LaurentPoly> = (0..3).map(|i| LaurentPoly::var(3, i)).collect();
        for k in 0..3u32 {
            let vals: Vec<LaurentPoly> = nodes.iter().map(|v| v.pow(k)).collect();
            let s = vandermonde_sum(&nodes, &vals);
            let expected = if k == 2 { 1 } else { 0 };
            assert_eq!(s, RationalFunction::from_poly(LaurentPoly::constant(3, expected)));
        }
    }
}
