use rand::Rng;

use crate::algebra::{lagrange_coefficients, LatticeMap, LaurentPoly};
use crate::bundle::{expand_in_fiber_basis, GkmBundle};
use crate::gkm::{is_equivariant_class, EquivariantClass, Theory};
use crate::sampling::LaurentSampler;
use crate::{Error, Result};

use super::{build_flag_bundle, build_gp_graph, CosetGraph, FlagBundle, RootSystem, RootType};

/// The class `[v] ↦ v·z^I` on a coset graph. The monomial must be fixed by
/// `W(Σ)` so that the value does not depend on the representative.
pub fn c_class(graph: &CosetGraph, exponent: &[i64]) -> Result<EquivariantClass> {
    let dim = graph.root_system().dim();
    if exponent.len() != dim {
        return Err(Error::DimensionMismatch(format!("exponent of length {} in rank {dim}", exponent.len())));
    }
    for u in graph.subgroup().elements() {
        if u.apply_exponent(exponent) != exponent {
            return Err(Error::InvalidArgument("the monomial is not fixed by W(Σ)".into()));
        }
    }
    let group = graph.group();
    EquivariantClass::from_fn(graph.graph(), Theory::K, |v| {
        let w = group.element(graph.representative(v).expect("vertex of the graph"));
        LaurentPoly::monomial(w.apply_exponent(exponent), 1)
    })
}

/// `C_I` on the permutahedron of `S_{n+1}`: `σ ↦ σ·(z_1^{i_1} ⋯ z_n^{i_n})`.
pub fn c_invariant_class(n: usize, index: &[i64]) -> Result<EquivariantClass> {
    if index.len() != n {
        return Err(Error::DimensionMismatch(format!("multi-index of length {} for n = {n}", index.len())));
    }
    let graph = build_gp_graph(&RootSystem::type_a(n)?, &[])?;
    let mut exponent = index.to_vec();
    exponent.push(0);
    c_class(&graph, &exponent)
}

/// `(w·f)([v]) = w·f([w⁻¹v])` for `w` in the Weyl group of the graph.
pub fn weyl_action_on_class(graph: &CosetGraph, w: &LatticeMap, f: &EquivariantClass) -> Result<EquivariantClass> {
    let group = graph.group();
    let wi = group
        .index_of(w)
        .ok_or_else(|| Error::InvalidArgument("the lattice map is not an element of the Weyl group".into()))?;
    let winv = group.inverse(wi);
    if f.theory() != Theory::K {
        return Err(Error::InvalidArgument("the Weyl action is defined on K-classes".into()));
    }
    let mut values = std::collections::BTreeMap::new();
    for v in graph.graph().vertices() {
        let u = group.multiply(winv, graph.representative(v)?);
        let source = graph.vertex_of_element(u);
        let value = f.value(source).ok_or_else(|| Error::UnknownVertex(source.to_string()))?;
        values.insert(v.clone(), value.substitute(w));
    }
    EquivariantClass::new(Theory::K, f.rank(), values)
}

/// Whether `w·f = f` for every `w ∈ W`; on `G/B` this is `f(u) = u·f(id)`.
pub fn is_weyl_invariant(graph: &CosetGraph, f: &EquivariantClass) -> Result<bool> {
    for &g in graph.group().generators() {
        let s = graph.root_system().simple_reflection(g);
        if weyl_action_on_class(graph, s, f)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Upper bounds `b_k` of the multi-indices `0 ≤ i_k ≤ b_k`: `n + 1 - k` in
/// type A and `2(n - k) + 1` in type C.
fn index_bounds(kind: RootType, n: usize) -> Vec<i64> {
    (1..=n as i64)
        .map(|k| match kind {
            RootType::C => 2 * (n as i64 - k) + 1,
            _ => n as i64 + 1 - k,
        })
        .collect()
}

/// All multi-indices within the bounds, in lexicographic order.
pub fn multi_indices(kind: RootType, n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for b in index_bounds(kind, n) {
        out = out.into_iter().flat_map(|prefix| (0..=b).map(move |i| [prefix.clone(), vec![i]].concat())).collect();
    }
    out
}

/// The invariant basis `{C_I}` of the K-ring of the full flag graph of type
/// A or C, with the flag bundle over the first-letter projective space used
/// to compute coordinates.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    kind: RootType,
    n: usize,
    flag: FlagBundle,
    indices: Vec<Vec<i64>>,
    classes: Vec<EquivariantClass>,
}

/// Largest type-C rank for which a basis is produced.
pub const MAX_TYPE_C_RANK: usize = 3;

pub fn invariant_basis(kind: RootType, n: usize) -> Result<InvariantBasis> {
    let roots = match kind {
        RootType::A if n >= 1 => RootSystem::type_a(n)?,
        RootType::C if (1..=MAX_TYPE_C_RANK).contains(&n) => RootSystem::type_c(n)?,
        RootType::Custom => return Err(Error::InvalidArgument("invariant bases exist for types A and C only".into())),
        _ => return Err(Error::InvalidArgument(format!("no invariant basis for type {kind} and n = {n}"))),
    };
    let sigma: Vec<usize> = (1..n).collect();
    let flag = build_flag_bundle(&roots, &sigma)?;
    let indices = multi_indices(kind, n);
    let classes = indices
        .iter()
        .map(|i| c_class(&flag.total, &exponent_of(kind, n, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantBasis { kind, n, flag, indices, classes })
}

fn exponent_of(kind: RootType, n: usize, index: &[i64]) -> Vec<i64> {
    let mut e = index.to_vec();
    if kind == RootType::A {
        e.resize(n + 1, 0);
    }
    e
}

impl InvariantBasis {
    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn indices(&self) -> &[Vec<i64>] {
        &self.indices
    }

    pub fn classes(&self) -> &[EquivariantClass] {
        &self.classes
    }

    pub fn class(&self, index: &[i64]) -> Option<&EquivariantClass> {
        self.indices.iter().position(|i| i == index).map(|k| &self.classes[k])
    }

    /// The coset graph of the full flag manifold carrying the classes.
    pub fn graph(&self) -> &CosetGraph {
        &self.flag.total
    }

    pub fn flag_bundle(&self) -> &FlagBundle {
        &self.flag
    }

    pub fn bundle(&self) -> &GkmBundle {
        &self.flag.bundle
    }

    pub fn rank(&self) -> usize {
        self.flag.total.root_system().dim()
    }

    /// The classes `C_I` with `i_1 = 0`, which restrict to a basis of every
    /// fiber.
    pub fn fiber_classes(&self) -> Vec<EquivariantClass> {
        self.indices.iter().zip(&self.classes).filter(|(i, _)| i[0] == 0).map(|(_, c)| c.clone()).collect()
    }

    /// `Σ_I a_I C_I`.
    pub fn combine(&self, coeffs: &[LaurentPoly]) -> Result<EquivariantClass> {
        if coeffs.len() != self.len() {
            return Err(Error::DimensionMismatch(format!("{} coefficients for {} classes", coeffs.len(), self.len())));
        }
        let mut acc = EquivariantClass::constant(self.graph().graph(), Theory::K, &LaurentPoly::zero(self.rank()))?;
        for (a, c) in coeffs.iter().zip(&self.classes) {
            if !a.is_zero() {
                acc = acc.add(&c.scale(a)?)?;
            }
        }
        Ok(acc)
    }

    /// Coordinates `a_I ∈ R(T)` with `c = Σ_I a_I C_I`.
    ///
    /// `c` is first expanded over the base in the fiber classes `C_[0,I']`;
    /// each base coefficient is then expanded in powers of the base class
    /// `[v] ↦ v·z_1`, and `ν^k · C_[0,I'] = C_[k,I']`.
    pub fn coordinates(&self, c: &EquivariantClass) -> Result<Vec<LaurentPoly>> {
        let fiber_positions: Vec<usize> = (0..self.len()).filter(|&k| self.indices[k][0] == 0).collect();
        let betas = expand_in_fiber_basis(self.bundle(), c, &self.fiber_classes())?;
        let base = &self.flag.base;
        let mut e1 = vec![0i64; self.rank()];
        e1[0] = 1;
        let nodes: Vec<LaurentPoly> = base
            .graph()
            .vertices()
            .iter()
            .map(|v| Ok(LaurentPoly::monomial(base.group().element(base.representative(v)?).apply_exponent(&e1), 1)))
            .collect::<Result<_>>()?;
        let mut coords = vec![LaurentPoly::zero(self.rank()); self.len()];
        for (beta, &pos) in betas.iter().zip(&fiber_positions) {
            let values: Vec<LaurentPoly> = base.graph().vertices().iter().map(|v| beta.value(v).cloned().unwrap()).collect();
            for (k, a) in lagrange_coefficients(&nodes, &values).into_iter().enumerate() {
                let a = a.to_laurent().ok_or_else(|| Error::NotInRing(format!("ν-coefficient {a}")))?;
                let mut index = self.indices[pos].clone();
                index[0] = k as i64;
                let target = self
                    .indices
                    .iter()
                    .position(|i| *i == index)
                    .ok_or_else(|| Error::NotInRing(format!("index {index:?} outside the basis range")))?;
                coords[target] = a;
            }
        }
        if self.combine(&coords)? != *c {
            return Err(Error::NotInRing("coordinates do not reconstruct the class".into()));
        }
        Ok(coords)
    }

    /// A random K-class: a combination of classes `v ↦ v·z^J` for random
    /// exponents `J` (possibly negative, not restricted to the basis range)
    /// and one product of two such classes, with random Laurent coefficients.
    pub fn random_class(&self, rng: &mut impl Rng) -> Result<EquivariantClass> {
        let rank = self.rank();
        let coeff = LaurentSampler::new(rank);
        let exps = LaurentSampler { exponents: -1..=2, ..LaurentSampler::new(rank) };
        let random_c = |rng: &mut _| {
            let mut e = exps.exponent(rng);
            if self.kind == RootType::A {
                e[rank - 1] = 0;
            }
            c_class(self.graph(), &e)
        };
        let mut acc = random_c(rng)?.mul(&random_c(rng)?)?.scale(&coeff.sample(rng))?;
        for _ in 0..2 {
            acc = acc.add(&random_c(rng)?.scale(&coeff.sample(rng))?)?;
        }
        Ok(acc)
    }

    /// Checks that every `C_I` is a K-class and Weyl invariant, that the
    /// restrictions of the fiber classes form fiber bases, and that `samples`
    /// random classes are reconstructed from their coordinates.
    pub fn certify(&self, samples: usize, rng: &mut impl Rng) -> Result<()> {
        let graph = self.graph();
        for (i, c) in self.indices.iter().zip(&self.classes) {
            if let Some((a, b)) = is_equivariant_class(graph.graph(), c)?.failing_edge {
                return Err(Error::NotAClass(a, b));
            }
            if !is_weyl_invariant(graph, c)? {
                return Err(Error::InvalidArgument(format!("C_{i:?} is not invariant")));
            }
        }
        for c in &self.classes {
            self.coordinates(c)?;
        }
        for _ in 0..samples {
            self.coordinates(&self.random_class(rng)?)?;
        }
        Ok(())
    }
}

/// Certifies the invariant bases at every level `1..=n` of the tower
/// `Fl_1 ⊂ Fl_2 ⊂ …`, each level through its bundle over projective space.
pub fn certify_tower(kind: RootType, n: usize, samples: usize, rng: &mut impl Rng) -> Result<()> {
    for m in 1..=n {
        invariant_basis(kind, m)?.certify(samples, rng)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng;

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(RootType::A, 2).len(), 6);
        assert_eq!(multi_indices(RootType::A, 3).len(), 24);
        assert_eq!(multi_indices(RootType::C, 2).len(), 8);
        assert_eq!(multi_indices(RootType::C, 3).len(), 48);
        assert_eq!(
            multi_indices(RootType::A, 2),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 0], vec![2, 1]]
        );
    }

    #[test]
    fn small_c_classes() {
        let c00 = c_invariant_class(2, &[0, 0]).unwrap();
        assert!(c00.values().values().all(LaurentPoly::is_one));
        let c01 = c_invariant_class(2, &[0, 1]).unwrap();
        assert_eq!(c01.value("123").unwrap(), &LaurentPoly::var(3, 1));
        let c10 = c_invariant_class(2, &[1, 0]).unwrap();
        assert_eq!(c10.value("312").unwrap(), &LaurentPoly::var(3, 2));
        assert!(c_invariant_class(2, &[1]).is_err());
    }

    #[test]
    fn type_a_basis_coordinates() {
        let basis = invariant_basis(RootType::A, 2).unwrap();
        assert_eq!(basis.len(), 6);
        let coords = basis.coordinates(&basis.classes()[3]).unwrap();
        for (k, c) in coords.iter().enumerate() {
            assert_eq!(c.is_one(), k == 3);
            assert!(k == 3 || c.is_zero());
        }
        basis.certify(3, &mut rng(5)).unwrap();
    }

    #[test]
    fn type_c_rank_two_basis() {
        let basis = invariant_basis(RootType::C, 2).unwrap();
        assert_eq!(basis.len(), 8);
        basis.certify(2, &mut rng(9)).unwrap();
    }

    #[test]
    fn action_moves_a_bump() {
        let basis = invariant_basis(RootType::A, 2).unwrap();
        let g = basis.graph();
        let bump = EquivariantClass::from_fn(g.graph(), Theory::K, |v| {
            if v == "123" { LaurentPoly::one(3) } else { LaurentPoly::zero(3) }
        })
        .unwrap();
        assert!(!is_weyl_invariant(g, &bump).unwrap());
        let id = LatticeMap::identity(3);
        assert_eq!(weyl_action_on_class(g, &id, &bump).unwrap(), bump);
        for c in basis.classes() {
            assert!(is_weyl_invariant(g, c).unwrap());
        }
    }
}
