use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gcd::{gcd, normalize_sign};
use super::laurent::poly_div_exact;
use super::{LaurentPoly, Poly};
use crate::{Error, Result};

/// An element of the fraction field `Frac(S) = Frac(R(T))`, kept in reduced
/// form: numerator and denominator are coprime polynomials and the
/// denominator's lexicographic leading coefficient is positive. Two equal
/// rational functions therefore compare equal structurally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    /// Builds `num / den`, clearing monomial denominators and reducing.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if num.rank() != den.rank() {
            return Err(Error::RankMismatch { expected: num.rank(), found: den.rank() });
        }
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let rank = num.rank();
        if num.is_zero() {
            return Ok(Self::from_poly(LaurentPoly::zero(rank)));
        }
        // move both into the polynomial ring
        let shift: Vec<i64> =
            num.min_exponent().iter().zip(den.min_exponent()).map(|(a, b)| -(*a).min(b)).collect();
        let num = num.shift(&shift);
        let den = den.shift(&shift);
        if let Some(q) = poly_div_exact(&num, &den) {
            return Ok(RationalFunction { num: q, den: LaurentPoly::one(rank) });
        }
        let g = gcd(&num, &den);
        let mut num = poly_div_exact(&num, &g).expect("gcd divides numerator");
        let mut den = poly_div_exact(&den, &g).expect("gcd divides denominator");
        if normalize_sign(den.clone()) != den {
            num = -num;
            den = -den;
        }
        Ok(RationalFunction { num, den })
    }

    /// `num / den` for arguments known to be coprime up to monomials; only
    /// monomial factors and the sign are normalized.
    pub(crate) fn from_coprime(num: LaurentPoly, den: LaurentPoly) -> Self {
        let rank = num.rank();
        if num.is_zero() {
            return Self::from_poly(LaurentPoly::zero(rank));
        }
        let shift: Vec<i64> =
            num.min_exponent().iter().zip(den.min_exponent()).map(|(a, b)| -(*a).min(b)).collect();
        let (mut num, mut den) = (num.shift(&shift), den.shift(&shift));
        if let Some((e, c)) = den.as_monomial() {
            if num_traits::One::is_one(c) {
                let inv: Vec<i64> = e.iter().map(|x| -x).collect();
                return Self::from_poly(num.shift(&inv));
            }
        }
        if normalize_sign(den.clone()) != den {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let rank = p.rank();
        if p.is_polynomial() {
            return RationalFunction { num: p, den: LaurentPoly::one(rank) };
        }
        Self::new(p, LaurentPoly::one(rank)).expect("nonzero denominator")
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::one(rank))
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this equals, if it lies in `S`.
    pub fn to_poly(&self) -> Option<Poly> {
        self.den.is_one().then(|| Poly::new(self.num.clone()).expect("reduced numerator is a polynomial"))
    }

    /// The Laurent polynomial this equals, if it lies in `R(T)`, i.e. if the
    /// reduced denominator is a monomial.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let (e, c) = self.den.as_monomial()?;
        if !num_traits::One::is_one(c) {
            return None;
        }
        let shift: Vec<i64> = e.iter().map(|x| -x).collect();
        Some(self.num.shift(&shift))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.display_with(var)
        } else {
            format!("({}) / ({})", self.num.display_with(var), self.den.display_with(var))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("z"))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("z"))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RationalFunction::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("nonzero")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Div for &RationalFunction {
    type Output = Result<RationalFunction>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction> {
        Ok(self * &rhs.inverse()?)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(exp: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(exp.to_vec(), 1)
    }

    #[test]
    fn reduces_common_factors() {
        let a = &z(&[1, 0]) - &z(&[0, 1]);
        let b = &z(&[1, 0]) + &z(&[0, 1]);
        let r = RationalFunction::new(&a * &b, &a * &a).unwrap();
        assert_eq!(r.numerator(), &b);
        assert_eq!(r.denominator(), &a);
    }

    #[test]
    fn denominator_sign_normalized() {
        let r = RationalFunction::new(LaurentPoly::one(1), -&z(&[1])).unwrap();
        assert_eq!(r.numerator(), &LaurentPoly::constant(1, -1));
        assert_eq!(r.denominator(), &z(&[1]));
    }

    #[test]
    fn monomial_denominator_is_laurent() {
        let r = RationalFunction::new(&z(&[1, 0]) + &LaurentPoly::one(2), z(&[0, 2])).unwrap();
        assert!(!r.is_polynomial());
        assert_eq!(r.to_laurent().unwrap(), &z(&[1, -2]) + &z(&[0, -2]));
        let r = RationalFunction::new(LaurentPoly::one(2), &z(&[0, 1]) - &z(&[1, 0])).unwrap();
        assert!(r.to_laurent().is_none());
    }

    #[test]
    fn product_with_inverse_is_one() {
        let a = RationalFunction::new(&z(&[2, 0]) - &z(&[0, 1]), &z(&[1, 1]) + &LaurentPoly::one(2)).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, RationalFunction::one(2));
    }

    #[test]
    fn reduction_is_idempotent() {
        let a = RationalFunction::new(&z(&[2]) - &LaurentPoly::one(1), &z(&[1]) - &LaurentPoly::one(1)).unwrap();
        let again = RationalFunction::new(a.numerator().clone(), a.denominator().clone()).unwrap();
        assert_eq!(a, again);
        assert_eq!(a.to_poly().unwrap().as_laurent(), &(&z(&[1]) + &LaurentPoly::one(1)));
    }
}
