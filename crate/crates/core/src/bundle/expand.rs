use std::collections::BTreeMap;

use crate::algebra::{solve_system_over_fractions, LaurentPoly};
use crate::gkm::{is_equivariant_class, EquivariantClass, Theory};
use crate::{Error, Result};

use super::GkmBundle;

/// `Σ_k π*(β_k) · c_k`.
pub fn combine_fiber_basis(bundle: &GkmBundle, betas: &[EquivariantClass], basis: &[EquivariantClass]) -> Result<EquivariantClass> {
    if betas.len() != basis.len() || basis.is_empty() {
        return Err(Error::DimensionMismatch(format!("{} coefficients for {} basis classes", betas.len(), basis.len())));
    }
    let mut acc: Option<EquivariantClass> = None;
    for (beta, c) in betas.iter().zip(basis) {
        let term = bundle.pullback_map(beta)?.mul(c)?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.expect("basis is nonempty"))
}

/// Writes the class `c` on the total graph as `Σ_k π*(β_k) · c_k` and returns
/// the base classes `β_k`. Over each base vertex the restrictions of the
/// `c_k` to the fiber must form a basis; the system is solved over the
/// fraction field and each solution must lie in the coefficient ring.
pub fn expand_in_fiber_basis(bundle: &GkmBundle, c: &EquivariantClass, basis: &[EquivariantClass]) -> Result<Vec<EquivariantClass>> {
    let total = bundle.total();
    let base = bundle.base();
    let theory = c.theory();
    for f in std::iter::once(c).chain(basis) {
        if f.theory() != theory {
            return Err(Error::CarrierMismatch("classes of different theories".into()));
        }
        if f.rank() != bundle.rank() {
            return Err(Error::RankMismatch { expected: bundle.rank(), found: f.rank() });
        }
    }
    let report = is_equivariant_class(total, c)?;
    if let Some((a, b)) = report.failing_edge {
        return Err(Error::NotAClass(a, b));
    }
    for f in basis {
        is_equivariant_class(total, f)?;
    }
    let m = basis.len();
    let mut values: Vec<BTreeMap<String, LaurentPoly>> = vec![BTreeMap::new(); m];
    for p in 0..base.num_vertices() {
        let pname = base.vertex_name(p);
        let fiber = bundle.fiber_names(p);
        if fiber.len() != m {
            return Err(Error::NotABasis(pname.to_string()));
        }
        let value = |f: &EquivariantClass, v: &str| f.value(v).cloned().ok_or_else(|| Error::UnknownVertex(v.to_string()));
        let matrix = fiber
            .iter()
            .map(|v| basis.iter().map(|f| value(f, v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let rhs = fiber.iter().map(|v| value(c, v)).collect::<Result<Vec<_>>>()?;
        let solution = solve_system_over_fractions(&matrix, &rhs)?.ok_or_else(|| Error::NotABasis(pname.to_string()))?;
        for (k, x) in solution.iter().enumerate() {
            let y = match theory {
                Theory::K => x.to_laurent(),
                Theory::H => x.to_poly().map(|p| p.into_laurent()),
            };
            let y = y.ok_or_else(|| Error::NotInRing(format!("coefficient {} at `{pname}` is {}", k + 1, x.display_with("z"))))?;
            values[k].insert(pname.to_string(), y);
        }
    }
    let betas = values
        .into_iter()
        .map(|v| EquivariantClass::new(theory, c.rank(), v))
        .collect::<Result<Vec<_>>>()?;
    for (k, beta) in betas.iter().enumerate() {
        if let Some((a, b)) = is_equivariant_class(base, beta)?.failing_edge {
            return Err(Error::NotInRing(format!("coefficient {} fails the base class condition on ({a}, {b})", k + 1)));
        }
    }
    if combine_fiber_basis(bundle, &betas, basis)? != *c {
        return Err(Error::NotInRing("reconstruction differs from the input class".into()));
    }
    Ok(betas)
}

#[cfg(test)]
mod tests {
    use super::super::testing::product_bundle;
    use super::*;

    fn fiber_basis(b: &GkmBundle) -> Vec<EquivariantClass> {
        let one = EquivariantClass::constant(b.total(), Theory::K, &LaurentPoly::one(4)).unwrap();
        let z3 = EquivariantClass::from_fn(b.total(), Theory::K, |v| {
            LaurentPoly::var(4, if v.ends_with('1') { 2 } else { 3 })
        })
        .unwrap();
        vec![one, z3]
    }

    #[test]
    fn basis_element_expands_to_unit_vector() {
        let b = product_bundle();
        let basis = fiber_basis(&b);
        let betas = expand_in_fiber_basis(&b, &basis[1], &basis).unwrap();
        assert!(betas[0].is_zero());
        assert_eq!(betas[1], EquivariantClass::constant(b.base(), Theory::K, &LaurentPoly::one(4)).unwrap());
    }

    #[test]
    fn module_structure() {
        let b = product_bundle();
        let basis = fiber_basis(&b);
        let g = EquivariantClass::from_fn(b.base(), Theory::K, |v| LaurentPoly::var(4, if v == "a" { 0 } else { 1 })).unwrap();
        let c = b.pullback(&g).unwrap().mul(&basis[1]).unwrap();
        let betas = expand_in_fiber_basis(&b, &c, &basis).unwrap();
        assert_eq!(betas[1], g);
        assert!(betas[0].is_zero());
    }

    #[test]
    fn dependent_restrictions_rejected() {
        let b = product_bundle();
        let basis = fiber_basis(&b);
        let twice = vec![basis[0].clone(), basis[0].scale(&LaurentPoly::constant(4, 2)).unwrap()];
        assert!(matches!(expand_in_fiber_basis(&b, &basis[1], &twice), Err(Error::NotABasis(_))));
    }
}
