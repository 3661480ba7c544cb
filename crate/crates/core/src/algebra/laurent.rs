use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Deref, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LatticeMap, Weight};
use crate::{Error, Result};

/// Exponent vector of a monomial. Negative entries are allowed.
pub type Exponent = Vec<i64>;

/// A Laurent polynomial with arbitrary-precision integer coefficients in the
/// variables `z_1, ..., z_n`, i.e. an element of the representation ring
/// `R(T) = Z[z_1^±1, ..., z_n^±1]`.
///
/// Terms are kept in a `BTreeMap`, so iteration is in lexicographic order of
/// exponents and no zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigInt::one())
    }

    pub fn constant(rank: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; rank], c)
    }

    pub fn monomial(exp: Exponent, c: impl Into<BigInt>) -> Self {
        let rank = exp.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { rank, terms }
    }

    /// The variable `z_i` (0-based).
    pub fn var(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    /// Sums duplicate exponents and drops zero coefficients.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            if e.len() != rank {
                return Err(Error::RankMismatch { expected: rank, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, c: BigInt) {
        debug_assert_eq!(exp.len(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Integer constant, if this polynomial is one.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `(exponent, coefficient)` if this is a single term.
    pub fn as_monomial(&self) -> Option<(&Exponent, &BigInt)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next()).flatten()
    }

    /// True for `±z^m`, the units of `R(T)`.
    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some_and(|(_, c)| c.abs().is_one())
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Componentwise minimum of exponents (zero vector for the zero polynomial).
    pub fn min_exponent(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.rank])
    }

    pub fn max_exponent(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.rank])
    }

    /// Multiplies by the monomial `z^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.rank);
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPoly { rank: self.rank, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at `z_1 = ... = z_n = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Replaces every monomial `z^m` by `z^{w(m)}`. Ring homomorphism when `w`
    /// is a lattice map of the right dimension.
    pub fn substitute(&self, w: &LatticeMap) -> Self {
        assert_eq!(w.dim(), self.rank, "lattice map dimension mismatch");
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(w.apply_exponent(e), c.clone());
        }
        out
    }

    /// Substitutes `z_from := z_to` (0-based).
    pub fn identify_variables(&self, from: usize, to: usize) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[to] += e[from];
            e[from] = 0;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Largest exponent of variable `var`, or `None` if zero.
    pub fn degree_in(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Exact division in `R(T)`. Returns `q` with `self = q * divisor`, or
    /// `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert_eq!(self.rank, divisor.rank, "rank mismatch");
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.rank));
        }
        // normalize both to polynomials without monomial factors
        let sa = self.min_exponent();
        let sb = divisor.min_exponent();
        let a = self.shift(&neg(&sa));
        let b = divisor.shift(&neg(&sb));
        let q = poly_div_exact(&a, &b)?;
        let total: Vec<i64> = sa.iter().zip(&sb).map(|(x, y)| x - y).collect();
        Some(q.shift(&total))
    }

    /// Renders using the given variable name, e.g. `z` or `y`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (k, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("{var}{}", k + 1)),
                    _ => factors.push(format!("{var}{}^{x}", k + 1)),
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

fn neg(e: &[i64]) -> Vec<i64> {
    e.iter().map(|x| -x).collect()
}

/// Exact division of polynomials (no negative exponents) by leading-term
/// reduction in lexicographic order.
pub(crate) fn poly_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let rank = a.rank;
    let (lb_exp, lb_coeff) = b.leading_term()?;
    let lb_exp = lb_exp.clone();
    let lb_coeff = lb_coeff.clone();
    let mut r = a.clone();
    let mut q = LaurentPoly::zero(rank);
    while let Some((le, lc)) = r.leading_term() {
        let d: Vec<i64> = le.iter().zip(&lb_exp).map(|(x, y)| x - y).collect();
        if d.iter().any(|&x| x < 0) {
            return None;
        }
        let (quo, rem) = lc.div_rem(&lb_coeff);
        if !rem.is_zero() {
            return None;
        }
        let t = LaurentPoly::monomial(d, quo);
        r -= &(&t * b);
        q += &t;
    }
    Some(q)
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("z"))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("z"))
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = LaurentPoly::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.iter().zip(eb).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { rank: self.rank, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(LaurentPoly, Add, add);
forward_owned!(LaurentPoly, Sub, sub);
forward_owned!(LaurentPoly, Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// `z^α`, the character of the weight `α`.
pub fn monomial_of_weight(alpha: &Weight) -> LaurentPoly {
    LaurentPoly::monomial(alpha.coords().to_vec(), 1)
}

/// Like [`monomial_of_weight`] but checks the weight against the ambient rank.
pub fn monomial_of_weight_checked(alpha: &Weight, rank: usize) -> Result<LaurentPoly> {
    alpha.check_rank(rank)?;
    Ok(monomial_of_weight(alpha))
}

/// `1 - z^α`.
pub fn one_minus_character(alpha: &Weight) -> LaurentPoly {
    &LaurentPoly::one(alpha.rank()) - &monomial_of_weight(alpha)
}

/// A polynomial in `y_1, ..., y_n` (no negative exponents): an element of
/// `S = Z[y_1, ..., y_n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly(LaurentPoly);

impl Poly {
    pub fn new(p: LaurentPoly) -> Result<Self> {
        if !p.is_polynomial() {
            return Err(Error::InvalidArgument(format!("negative exponent in polynomial {p}")));
        }
        Ok(Poly(p))
    }

    pub fn zero(rank: usize) -> Self {
        Poly(LaurentPoly::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Poly(LaurentPoly::one(rank))
    }

    pub fn constant(rank: usize, c: impl Into<BigInt>) -> Self {
        Poly(LaurentPoly::constant(rank, c))
    }

    /// The variable `y_i` (0-based).
    pub fn var(rank: usize, i: usize) -> Self {
        Poly(LaurentPoly::var(rank, i))
    }

    /// The linear form `Σ α_i y_i`.
    pub fn linear_form(alpha: &Weight) -> Self {
        let rank = alpha.rank();
        let mut p = LaurentPoly::zero(rank);
        for (i, &c) in alpha.coords().iter().enumerate() {
            let mut e = vec![0; rank];
            e[i] = 1;
            p.add_term(e, c.into());
        }
        Poly(p)
    }

    pub fn as_laurent(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_laurent(self) -> LaurentPoly {
        self.0
    }

    pub fn pow(&self, k: u32) -> Self {
        Poly(self.0.pow(k))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Poly(self.0.scale(k))
    }

    /// Exact division in `S`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        poly_div_exact(&self.0, &d.0).map(Poly)
    }
}

impl Deref for Poly {
    type Target = LaurentPoly;
    fn deref(&self) -> &LaurentPoly {
        &self.0
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.display_with("y"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.display_with("y"))
    }
}

impl TryFrom<LaurentPoly> for Poly {
    type Error = Error;
    fn try_from(p: LaurentPoly) -> Result<Self> {
        Poly::new(p)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly(&self.0 + &rhs.0)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly(&self.0 - &rhs.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly(&self.0 * &rhs.0)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(-&self.0)
    }
}

forward_owned!(Poly, Add, add);
forward_owned!(Poly, Sub, sub);
forward_owned!(Poly, Mul, mul);
