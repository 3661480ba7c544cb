use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::algebra::{coordinates_in_basis, LatticeMap, Weight};
use crate::{Error, Result};

/// Largest root system enumerated.
const MAX_ROOTS: usize = 100_000;

/// Cartan type of a root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    A,
    C,
    Custom,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootType::A => "A",
            RootType::C => "C",
            RootType::Custom => "custom",
        })
    }
}

/// The reflection `x ↦ x - 2 (x·α)/(α·α) α`, which must be integral.
pub fn reflection(alpha: &Weight) -> Result<LatticeMap> {
    if alpha.is_zero() {
        return Err(Error::ZeroWeight);
    }
    let n = alpha.rank();
    let a = alpha.coords();
    let norm = alpha.dot(alpha);
    let mut rows = vec![vec![0i64; n]; n];
    for (j, row) in rows.iter_mut().enumerate() {
        for (i, entry) in row.iter_mut().enumerate() {
            let (q, r) = (2 * a[i] * a[j]).div_rem(&norm);
            if r != 0 {
                return Err(Error::InvalidArgument(format!("the reflection in {alpha} is not integral")));
            }
            *entry = i64::from(i == j) - q;
        }
    }
    LatticeMap::from_rows(rows)
}

/// A reduced root system given by its simple roots, with positive roots
/// generated by the simple reflections.
#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: RootType,
    simple: Vec<Weight>,
    reflections: Vec<LatticeMap>,
    positive: Vec<Weight>,
    coordinates: HashMap<Weight, Vec<i64>>,
}

impl RootSystem {
    /// `A_n` in `ℤ^{n+1}`: `α_i = x_i - x_{i+1}`.
    pub fn type_a(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("type A needs rank at least 1".into()));
        }
        Self::build(RootType::A, (0..n).map(|i| Weight::difference(n + 1, i, i + 1)).collect())
    }

    /// `C_n` in `ℤ^n`: `α_i = x_i - x_{i+1}` for `i < n` and `α_n = 2x_n`.
    pub fn type_c(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("type C needs rank at least 1".into()));
        }
        let mut simple: Vec<Weight> = (0..n - 1).map(|i| Weight::difference(n, i, i + 1)).collect();
        simple.push(Weight::unit(n, n - 1).scale(2));
        Self::build(RootType::C, simple)
    }

    /// Any linearly independent family with integral reflections and a finite
    /// orbit.
    pub fn custom(simple: Vec<Weight>) -> Result<Self> {
        Self::build(RootType::Custom, simple)
    }

    pub fn new(kind: RootType, n: usize) -> Result<Self> {
        match kind {
            RootType::A => Self::type_a(n),
            RootType::C => Self::type_c(n),
            RootType::Custom => Err(Error::InvalidArgument("custom root systems need explicit simple roots".into())),
        }
    }

    fn build(kind: RootType, simple: Vec<Weight>) -> Result<Self> {
        let dim = simple.first().ok_or_else(|| Error::InvalidArgument("no simple roots".into()))?.rank();
        for a in &simple {
            a.check_rank(dim)?;
        }
        let reflections = simple.iter().map(reflection).collect::<Result<Vec<_>>>()?;
        let mut roots: BTreeSet<Weight> = simple.iter().cloned().collect();
        let mut frontier: Vec<Weight> = simple.clone();
        while let Some(r) = frontier.pop() {
            for s in &reflections {
                let image = s.apply(&r);
                if roots.insert(image.clone()) {
                    if roots.len() > MAX_ROOTS {
                        return Err(Error::CapExceeded(MAX_ROOTS));
                    }
                    frontier.push(image);
                }
            }
        }
        let mut coordinates = HashMap::new();
        let mut positive = Vec::new();
        for r in roots {
            let c = coordinates_in_basis(&simple, &r)
                .ok_or_else(|| Error::InvalidArgument("simple roots are linearly dependent".into()))?;
            let c: Vec<i64> = c
                .iter()
                .map(|x| x.is_integer().then(|| x.to_integer().to_i64()).flatten())
                .collect::<Option<_>>()
                .ok_or_else(|| Error::InvalidArgument(format!("root {r} is not an integral combination of simple roots")))?;
            let nonneg = c.iter().all(|&x| x >= 0);
            let nonpos = c.iter().all(|&x| x <= 0);
            if !nonneg && !nonpos {
                return Err(Error::InvalidArgument(format!("root {r} is neither positive nor negative")));
            }
            if nonneg {
                positive.push(r.clone());
            }
            coordinates.insert(r, c);
        }
        let height = |r: &Weight| coordinates[r].iter().sum::<i64>();
        positive.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| coordinates[b].cmp(&coordinates[a])));
        Ok(RootSystem { kind, simple, reflections, positive, coordinates })
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// Dimension of the ambient lattice.
    pub fn dim(&self) -> usize {
        self.simple[0].rank()
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple
    }

    pub fn simple_reflection(&self, i: usize) -> &LatticeMap {
        &self.reflections[i]
    }

    /// Positive roots ordered by height.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive
    }

    /// Coordinates of a root in the simple roots.
    pub fn simple_coordinates(&self, root: &Weight) -> Option<&[i64]> {
        self.coordinates.get(root).map(Vec::as_slice)
    }

    pub fn check_subset(&self, sigma: &[usize]) -> Result<()> {
        match sigma.iter().find(|&&i| i >= self.rank()) {
            Some(i) => Err(Error::InvalidArgument(format!("simple root index {} out of range 1..={}", i + 1, self.rank()))),
            None => Ok(()),
        }
    }

    /// `⟨Σ⟩`: the positive roots that are combinations of the simple roots in
    /// `sigma` (0-based indices).
    pub fn span_roots(&self, sigma: &[usize]) -> Vec<Weight> {
        self.positive
            .iter()
            .filter(|r| self.coordinates[*r].iter().enumerate().all(|(i, &c)| c == 0 || sigma.contains(&i)))
            .cloned()
            .collect()
    }

    /// `Δ⁺ ∖ ⟨Σ⟩`.
    pub fn complement_roots(&self, sigma: &[usize]) -> Vec<Weight> {
        let span = self.span_roots(sigma);
        self.positive.iter().filter(|r| !span.contains(r)).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        assert_eq!(RootSystem::type_a(2).unwrap().positive_roots().len(), 3);
        assert_eq!(RootSystem::type_a(3).unwrap().positive_roots().len(), 6);
        assert_eq!(RootSystem::type_c(2).unwrap().positive_roots().len(), 4);
        assert_eq!(RootSystem::type_c(3).unwrap().positive_roots().len(), 9);
    }

    #[test]
    fn long_root_reflection_flips_sign() {
        let r = RootSystem::type_c(2).unwrap();
        let s = r.simple_reflection(1);
        assert_eq!(s.apply(&Weight::new(vec![3, 5])), Weight::new(vec![3, -5]));
    }

    #[test]
    fn span_of_sigma() {
        let r = RootSystem::type_a(3).unwrap();
        assert_eq!(r.span_roots(&[1, 2]).len(), 3);
        assert_eq!(r.complement_roots(&[1, 2]), vec![
            Weight::new(vec![1, -1, 0, 0]),
            Weight::new(vec![1, 0, -1, 0]),
            Weight::new(vec![1, 0, 0, -1]),
        ]);
    }

    #[test]
    fn non_integral_reflection_rejected() {
        assert!(reflection(&Weight::new(vec![1, 2])).is_err());
        assert!(RootSystem::custom(vec![Weight::new(vec![1, 0]), Weight::new(vec![2, 0])]).is_err());
    }
}
