//! Integer lattice maps and the small amount of exact rational linear algebra
//! needed to derive them from data.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Weight;
use crate::{Error, Result};

/// A linear endomorphism of the weight lattice, stored as a row-major `n x n`
/// integer matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeMap {
    n: usize,
    entries: Vec<i64>,
}

impl LatticeMap {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        LatticeMap { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("lattice map must be square".into()));
        }
        Ok(LatticeMap { n, entries: rows.into_iter().flatten().collect() })
    }

    /// Like [`from_rows`](Self::from_rows) but rejects maps that are not
    /// lattice automorphisms.
    pub fn automorphism(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = Self::from_rows(rows)?;
        if !m.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        Ok(m)
    }

    /// The map sending `e_i` to `e_{perm[i]}` (0-based).
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut entries = vec![0; n * n];
        for (i, &j) in perm.iter().enumerate() {
            entries[j * n + i] = 1;
        }
        LatticeMap { n, entries }
    }

    /// The map sending `e_i` to `sign_i * e_{perm[i]}`.
    pub fn signed_permutation(perm: &[(usize, i64)]) -> Self {
        let n = perm.len();
        let mut entries = vec![0; n * n];
        for (i, &(j, s)) in perm.iter().enumerate() {
            entries[j * n + i] = s;
        }
        LatticeMap { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        assert_eq!(w.rank(), self.n, "lattice map dimension mismatch");
        let c = w.coords();
        Weight::new((0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * c[j]).sum()).collect())
    }

    pub fn apply_exponent(&self, e: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * e[j]).sum()).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeMap) -> LatticeMap {
        assert_eq!(self.n, other.n, "lattice map dimension mismatch");
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        LatticeMap { n, entries }
    }

    pub fn determinant(&self) -> BigInt {
        let m = QMatrix::from_fn(self.n, self.n, |i, j| BigRational::from_integer(self.get(i, j).into()));
        m.determinant().to_integer()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn inverse(&self) -> Result<LatticeMap> {
        let m = QMatrix::from_fn(self.n, self.n, |i, j| BigRational::from_integer(self.get(i, j).into()));
        let inv = m.inverse().ok_or(Error::NotUnimodular)?;
        inv.to_lattice_map().ok_or(Error::NotUnimodular)
    }
}

impl fmt::Display for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Dense matrix over the rationals. Only used at lattice scale (`n <= ~10`).
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    /// Columns are the given integer vectors.
    pub fn from_columns(n: usize, cols: &[Vec<i64>]) -> Self {
        Self::from_fn(n, cols.len(), |i, j| BigRational::from_integer(cols[j][i].into()))
    }

    fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        QMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(BigRational::zero(), |acc, k| acc + self.at(i, k) * other.at(k, j))
        })
    }

    /// Row echelon form in place; returns pivot columns and the sign of the
    /// row permutation.
    fn echelon(&mut self) -> (Vec<usize>, bool) {
        let mut pivots = Vec::new();
        let mut row = 0;
        let mut negated = false;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
                negated = !negated;
            }
            let pv = self.at(row, col).clone();
            for r in (row + 1)..self.rows {
                let factor = self.at(r, col) / &pv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = self.at(row, j) * &factor;
                    *self.at_mut(r, j) -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (pivots, negated)
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().0.len()
    }

    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let (pivots, negated) = m.echelon();
        if pivots.len() < self.rows {
            return BigRational::zero();
        }
        let mut d = BigRational::one();
        for i in 0..self.rows {
            d *= m.at(i, i);
        }
        if negated {
            -d
        } else {
            d
        }
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.at(i, j).clone()
            } else if j - n == i {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        for col in 0..n {
            let p = (col..n).find(|&r| !aug.at(r, col).is_zero())?;
            if p != col {
                for j in 0..2 * n {
                    aug.data.swap(p * 2 * n + j, col * 2 * n + j);
                }
            }
            let pv = aug.at(col, col).clone();
            for j in 0..2 * n {
                let v = aug.at(col, j) / &pv;
                *aug.at_mut(col, j) = v;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = aug.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..2 * n {
                    let v = aug.at(col, j) * &factor;
                    *aug.at_mut(r, j) -= v;
                }
            }
        }
        Some(QMatrix::from_fn(n, n, |i, j| aug.at(i, j + n).clone()))
    }

    /// Basis of the null space `{x : self * x = 0}`, scaled to primitive
    /// integer vectors.
    pub fn integer_kernel(&self) -> Vec<Vec<i64>> {
        let mut m = self.clone();
        let (pivots, _) = m.echelon();
        // back-substitute to reduced form
        for (r, &c) in pivots.iter().enumerate().rev() {
            let pv = m.at(r, c).clone();
            for j in 0..m.cols {
                let v = m.at(r, j) / &pv;
                *m.at_mut(r, j) = v;
            }
            for r2 in 0..r {
                let factor = m.at(r2, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.at(r, j) * &factor;
                    *m.at_mut(r2, j) -= v;
                }
            }
        }
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); m.cols];
                v[f] = BigRational::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -m.at(r, f).clone();
                }
                primitive_integer_vector(&v)
            })
            .collect()
    }

    pub fn to_lattice_map(&self) -> Option<LatticeMap> {
        if self.rows != self.cols {
            return None;
        }
        let mut entries = Vec::with_capacity(self.data.len());
        for v in &self.data {
            if !v.is_integer() {
                return None;
            }
            entries.push(v.to_integer().to_i64()?);
        }
        Some(LatticeMap { n: self.rows, entries })
    }
}

fn primitive_integer_vector(v: &[BigRational]) -> Vec<i64> {
    use num_integer::Integer;
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| if g.is_zero() { 0 } else { (x / &g).to_i64().expect("kernel vector overflow") })
        .collect()
}

/// Indices of a maximal linearly independent subfamily, chosen greedily in
/// order.
pub(crate) fn independent_subset(n: usize, vectors: &[Vec<i64>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for (i, _) in vectors.iter().enumerate() {
        let mut cols: Vec<Vec<i64>> = chosen.iter().map(|&c| vectors[c].clone()).collect();
        cols.push(vectors[i].clone());
        if QMatrix::from_columns(n, &cols).rank() == cols.len() {
            chosen.push(i);
        }
    }
    chosen
}

/// Coordinates of `x` in the linearly independent family `basis`, or `None`
/// if `x` is not in its rational span.
pub fn coordinates_in_basis(basis: &[Weight], x: &Weight) -> Option<Vec<BigRational>> {
    let k = basis.len();
    if k == 0 {
        return x.is_zero().then(Vec::new);
    }
    let q = |v: i64| BigRational::from_integer(v.into());
    let gram = QMatrix::from_fn(k, k, |i, j| q(basis[i].dot(&basis[j])));
    let rhs = QMatrix::from_fn(k, 1, |i, _| q(basis[i].dot(x)));
    let sol = gram.inverse()?.mul(&rhs);
    let coords: Vec<BigRational> = (0..k).map(|i| sol.at(i, 0).clone()).collect();
    for j in 0..x.rank() {
        let v = (0..k).fold(BigRational::zero(), |acc, i| acc + &coords[i] * q(basis[i].coords()[j]));
        if v != q(x.coords()[j]) {
            return None;
        }
    }
    Some(coords)
}

/// Solves for the linear map `L` with `L(sources[k]) = targets[k]` for every
/// `k`, acting as the identity on the orthogonal complement of the span of
/// `sources`. Returns `None` if the data is inconsistent or `L` is not an
/// integral matrix.
pub fn linear_map_from_data(n: usize, sources: &[Weight], targets: &[Weight]) -> Option<LatticeMap> {
    assert_eq!(sources.len(), targets.len());
    let src: Vec<Vec<i64>> = sources.iter().map(|w| w.coords().to_vec()).collect();
    let basis = independent_subset(n, &src);
    let span_rows = QMatrix::from_fn(basis.len(), n, |i, j| BigRational::from_integer(src[basis[i]][j].into()));
    let complement = if basis.is_empty() {
        (0..n).map(|i| Weight::unit(n, i).into_coords()).collect()
    } else {
        span_rows.integer_kernel()
    };
    let mut from_cols: Vec<Vec<i64>> = basis.iter().map(|&b| src[b].clone()).collect();
    let mut to_cols: Vec<Vec<i64>> = basis.iter().map(|&b| targets[b].coords().to_vec()).collect();
    for k in complement {
        from_cols.push(k.clone());
        to_cols.push(k);
    }
    let from = QMatrix::from_columns(n, &from_cols);
    let to = QMatrix::from_columns(n, &to_cols);
    let map = to.mul(&from.inverse()?).to_lattice_map()?;
    for (s, t) in sources.iter().zip(targets) {
        if map.apply(s) != *t {
            return None;
        }
    }
    Some(map)
}
