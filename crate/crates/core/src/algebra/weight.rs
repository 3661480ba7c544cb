use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::{Error, Result};

/// An element of the weight lattice, in coordinates with respect to the
/// fixed basis `y_1, ..., y_n` (equivalently `x_1, ..., x_n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The basis vector `e_i` (0-based).
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    /// `e_i - e_j` (0-based).
    pub fn difference(rank: usize, i: usize, j: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] += 1;
        v[j] -= 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, found: self.rank() });
        }
        Ok(())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn dot(&self, other: &Weight) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// True when the two vectors are linearly dependent (this includes the
    /// case where either one is zero).
    pub fn is_parallel(&self, other: &Weight) -> bool {
        let n = self.rank();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.0[i] as i128 * other.0[j] as i128 != self.0[j] as i128 * other.0[i] as i128 {
                    return false;
                }
            }
        }
        true
    }

    /// If `self = k * base` for an integer `k`, returns `k`.
    pub fn integer_multiple_of(&self, base: &Weight) -> Option<i64> {
        let pivot = base.0.iter().position(|&c| c != 0)?;
        if self.0[pivot] % base.0[pivot] != 0 {
            return None;
        }
        let k = self.0[pivot] / base.0[pivot];
        (base.scale(k) == *self).then_some(k)
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
