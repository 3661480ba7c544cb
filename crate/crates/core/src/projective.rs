//! The complete graph `K_n` as the GKM graph of `CP^{n-1}`: integration,
//! the dual bases `f_k`, `g_k` of the cohomology ring, the lift to K-theory
//! and the expansion of K-classes in powers of `ν`.

use crate::algebra::{
    elementary_symmetric, lagrange_coefficients, vandermonde_sum, LatticeMap, LaurentPoly, Poly, RationalFunction,
    Weight,
};
use crate::gkm::{is_equivariant_class, EquivariantClass, GkmGraph, Theory};
use crate::{Error, Result};

/// `K_n` with `α(i, j) = y_i - y_j`, together with the classes `φ(j) = y_j`
/// and `ν(j) = z_j`. Vertices are named `"1"` to `"n"`.
#[derive(Clone, Debug)]
pub struct ProjectiveModel {
    pub n: usize,
    pub graph: GkmGraph,
    pub phi: EquivariantClass,
    pub nu: EquivariantClass,
}

/// Builds the GKM model of `CP^{n-1}` with the connection
/// `∇_(i,j)(i,k) = (j,k)`.
pub fn build_complete_gkm(n: usize) -> Result<ProjectiveModel> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("complete graph needs n >= 2, got {n}")));
    }
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                edges.push((names[i].clone(), names[j].clone(), Weight::difference(n, i, j)));
            }
        }
    }
    let graph = GkmGraph::new(n, names, edges)?.with_connection_fn(|g, e, f| {
        if e == f {
            g.edge(e).reverse
        } else {
            g.edge_between(g.edge(e).dst, g.edge(f).dst).expect("complete graph")
        }
    })?;
    let phi = EquivariantClass::from_fn(&graph, Theory::H, |v| LaurentPoly::var(n, label(v)))?;
    let nu = EquivariantClass::from_fn(&graph, Theory::K, |v| LaurentPoly::var(n, label(v)))?;
    Ok(ProjectiveModel { n, graph, phi, nu })
}

/// 0-based index of the vertex named `"j"`.
fn label(v: &str) -> usize {
    v.parse::<usize>().expect("vertices of K_n are numbered") - 1
}

impl ProjectiveModel {
    fn value_at(&self, f: &EquivariantClass, j: usize) -> Result<LaurentPoly> {
        f.value(&(j + 1).to_string())
            .cloned()
            .ok_or_else(|| Error::CarrierMismatch(format!("class has no value at `{}`", j + 1)))
    }

    fn check_carrier(&self, f: &EquivariantClass) -> Result<()> {
        if f.rank() != self.n {
            return Err(Error::RankMismatch { expected: self.n, found: f.rank() });
        }
        if f.values().len() != self.n {
            return Err(Error::CarrierMismatch(format!("class must have exactly {} values", self.n)));
        }
        (0..self.n).try_for_each(|j| self.value_at(f, j).map(|_| ()))
    }

    /// `ν^k`.
    pub fn nu_power(&self, k: u32) -> EquivariantClass {
        self.nu.pow(k)
    }

    /// `φ^k`.
    pub fn phi_power(&self, k: u32) -> EquivariantClass {
        self.phi.pow(k)
    }

    /// The class `Σ c_k ν^k`.
    pub fn combine_nu(&self, coeffs: &[LaurentPoly]) -> Result<EquivariantClass> {
        let mut acc = EquivariantClass::constant(&self.graph, Theory::K, &LaurentPoly::zero(self.n))?;
        for (k, c) in coeffs.iter().enumerate() {
            acc = acc.add(&self.nu_power(k as u32).scale(c)?)?;
        }
        Ok(acc)
    }
}

/// The integral of an H-class together with whether it lies in `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integral {
    pub value: RationalFunction,
    pub is_polynomial: bool,
}

/// `∫ f = Σ_k f(k) / Π_{j≠k} (y_k - y_j)`, reduced.
pub fn integrate(model: &ProjectiveModel, f: &EquivariantClass) -> Result<Integral> {
    if f.theory() != Theory::H {
        return Err(Error::CarrierMismatch("integration takes a cohomology vertex map".into()));
    }
    model.check_carrier(f)?;
    let nodes: Vec<LaurentPoly> = (0..model.n).map(|j| LaurentPoly::var(model.n, j)).collect();
    let values = (0..model.n).map(|j| model.value_at(f, j)).collect::<Result<Vec<_>>>()?;
    let value = vandermonde_sum(&nodes, &values);
    Ok(Integral { is_polynomial: value.is_polynomial(), value })
}

/// `⟨u, v⟩ = ∫ uv`.
pub fn pairing(model: &ProjectiveModel, u: &EquivariantClass, v: &EquivariantClass) -> Result<RationalFunction> {
    Ok(integrate(model, &u.mul(v)?)?.value)
}

/// The bases `f_k = φ^{k-1}` and `g_k = Σ_{i<k} (-1)^i s_i f_{k-i}`, for
/// `k = 1..n` (returned 0-indexed).
pub fn dual_bases_fg(model: &ProjectiveModel) -> Result<(Vec<EquivariantClass>, Vec<EquivariantClass>)> {
    let n = model.n;
    let f: Vec<EquivariantClass> = (0..n).map(|k| model.phi_power(k as u32)).collect();
    let s: Vec<Poly> = (0..n).map(|j| elementary_symmetric(j, n)).collect::<Result<_>>()?;
    let mut g = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = EquivariantClass::constant(&model.graph, Theory::H, &LaurentPoly::zero(n))?;
        for i in 0..=k {
            let term = f[k - i].scale(s[i].as_laurent())?;
            acc = if i % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        g.push(acc);
    }
    Ok((f, g))
}

/// Coordinates `a`, `b` of an H-class `h` with `h = Σ a_k f_k = Σ b_k g_k`,
/// given by `a_k = ⟨g_{n-k+1}, h⟩` and `b_k = ⟨f_{n-k+1}, h⟩`.
pub fn coordinates_in_fg(model: &ProjectiveModel, h: &EquivariantClass) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let report = is_equivariant_class(&model.graph, h)?;
    if h.theory() != Theory::H || !report.is_class {
        let (p, q) = report.failing_edge.unwrap_or_default();
        return Err(Error::NotAClass(p, q));
    }
    let (f, g) = dual_bases_fg(model)?;
    let n = model.n;
    let coord = |basis: &[EquivariantClass], k: usize| -> Result<Poly> {
        let r = pairing(model, &basis[n - 1 - k], h)?;
        r.to_poly().ok_or_else(|| Error::NotInRing(r.to_string()))
    };
    let a: Vec<Poly> = (0..n).map(|k| coord(&g, k)).collect::<Result<_>>()?;
    let b: Vec<Poly> = (0..n).map(|k| coord(&f, k)).collect::<Result<_>>()?;
    for (coeffs, basis) in [(&a, &f), (&b, &g)] {
        let mut acc = EquivariantClass::constant(&model.graph, Theory::H, &LaurentPoly::zero(n))?;
        for (c, x) in coeffs.iter().zip(basis) {
            acc = acc.add(&x.scale(c.as_laurent())?)?;
        }
        if &acc != h {
            return Err(Error::NotInRing("coordinates do not reconstruct the class".into()));
        }
    }
    Ok((a, b))
}

/// `Φ(f)(j) = ψ(f(j))` with `ψ(y_j) = z_j`.
pub fn lift_to_k(model: &ProjectiveModel, f: &EquivariantClass) -> Result<EquivariantClass> {
    if f.theory() != Theory::H {
        return Err(Error::CarrierMismatch("lift takes a cohomology class".into()));
    }
    model.check_carrier(f)?;
    EquivariantClass::new(Theory::K, f.rank(), f.values().clone())
}

/// Coefficients `c_0..c_{n-1}` in `R(T)` with `g = Σ c_k ν^k`.
///
/// `g` is first multiplied by the smallest monomial unit `u` that makes all
/// its values polynomials; the Vandermonde system with nodes `z_1..z_n` is
/// then solved by Lagrange interpolation and the result divided by `u`.
pub fn expand_in_nu(model: &ProjectiveModel, g: &EquivariantClass) -> Result<Vec<LaurentPoly>> {
    let n = model.n;
    let report = is_equivariant_class(&model.graph, g)?;
    if g.theory() != Theory::K || !report.is_class {
        let (p, q) = report.failing_edge.unwrap_or_default();
        return Err(Error::NotAClass(p, q));
    }
    let values = (0..n).map(|j| model.value_at(g, j)).collect::<Result<Vec<_>>>()?;
    let mut m = vec![0i64; n];
    for v in values.iter().filter(|v| !v.is_zero()) {
        for (mi, e) in m.iter_mut().zip(v.min_exponent()) {
            *mi = (*mi).max(-e);
        }
    }
    let shifted: Vec<LaurentPoly> = values.iter().map(|v| v.shift(&m)).collect();
    let nodes: Vec<LaurentPoly> = (0..n).map(|j| LaurentPoly::var(n, j)).collect();
    let unshift: Vec<i64> = m.iter().map(|x| -x).collect();
    let coeffs = lagrange_coefficients(&nodes, &shifted)
        .into_iter()
        .map(|c| c.to_laurent().map(|c| c.shift(&unshift)).ok_or_else(|| Error::NotInRing(c.to_string())))
        .collect::<Result<Vec<_>>>()?;
    if &model.combine_nu(&coeffs)? != g {
        return Err(Error::NotInRing("ν-expansion does not reconstruct the class".into()));
    }
    Ok(coeffs)
}

/// Validates a permutation of `0..n` given as its list of images.
fn check_permutation(n: usize, w: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if w.len() != n || w.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
        return Err(Error::InvalidArgument(format!("{w:?} is not a permutation of 0..{n}")));
    }
    Ok(())
}

fn inverse_permutation(w: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; w.len()];
    for (i, &x) in w.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// `(w·f)(j) = w⁻¹·f(w(j))`, where `w` permutes the variables.
pub fn permutation_action(model: &ProjectiveModel, w: &[usize], f: &EquivariantClass) -> Result<EquivariantClass> {
    check_permutation(model.n, w)?;
    model.check_carrier(f)?;
    let inv = LatticeMap::permutation(&inverse_permutation(w));
    f.map_values(|v, _| model.value_at(f, w[label(v)]).expect("checked carrier").substitute(&inv))
}

/// `(w·f)(j) = w·f(w⁻¹(j))`, the action by left multiplication on vertices.
pub fn left_permutation_action(
    model: &ProjectiveModel,
    w: &[usize],
    f: &EquivariantClass,
) -> Result<EquivariantClass> {
    check_permutation(model.n, w)?;
    model.check_carrier(f)?;
    let inv = inverse_permutation(w);
    let lw = LatticeMap::permutation(w);
    f.map_values(|v, _| model.value_at(f, inv[label(v)]).expect("checked carrier").substitute(&lw))
}

/// All transpositions of `0..n`.
pub fn transpositions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut w: Vec<usize> = (0..n).collect();
            w.swap(i, j);
            out.push(w);
        }
    }
    out
}

/// Whether `w·f = f` for every transposition `w`, under
/// [`permutation_action`]; since transpositions generate `S_n`, this is
/// invariance under the whole group.
pub fn is_sn_invariant(model: &ProjectiveModel, f: &EquivariantClass) -> Result<bool> {
    for w in transpositions(model.n) {
        if &permutation_action(model, &w, f)? != f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `f(u(j)) = u·f(j)` for every `u`, checked on transpositions
/// under [`left_permutation_action`].
pub fn is_left_invariant(model: &ProjectiveModel, f: &EquivariantClass) -> Result<bool> {
    for w in transpositions(model.n) {
        if &left_permutation_action(model, &w, f)? != f {
            return Ok(false);
        }
    }
    Ok(true)
}
