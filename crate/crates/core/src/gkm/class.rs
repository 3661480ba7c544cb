use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{divides_linear_form, is_divisible_by_binomial, LaurentPoly, Poly};
use crate::{Error, Result};

use super::GkmGraph;

/// Which ring the values of a class live in: `R(T)` for K-theory or `S` for
/// cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    K,
    H,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::K => "K",
            Theory::H => "H",
        })
    }
}

/// A map from vertices to ring elements. Membership in the K-ring or in the
/// cohomology ring of a graph is not assumed; it is decided by
/// [`is_equivariant_class`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquivariantClass {
    theory: Theory,
    rank: usize,
    values: BTreeMap<String, LaurentPoly>,
}

impl EquivariantClass {
    pub fn new(theory: Theory, rank: usize, values: BTreeMap<String, LaurentPoly>) -> Result<Self> {
        for (v, p) in &values {
            if p.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: p.rank() });
            }
            if theory == Theory::H && !p.is_polynomial() {
                return Err(Error::InvalidArgument(format!("cohomology value at `{v}` has a negative exponent")));
            }
        }
        Ok(EquivariantClass { theory, rank, values })
    }

    /// A K-theory vertex map.
    pub fn k(rank: usize, values: impl IntoIterator<Item = (String, LaurentPoly)>) -> Result<Self> {
        Self::new(Theory::K, rank, values.into_iter().collect())
    }

    /// A cohomology vertex map.
    pub fn h(rank: usize, values: impl IntoIterator<Item = (String, Poly)>) -> Result<Self> {
        Self::new(Theory::H, rank, values.into_iter().map(|(v, p)| (v, p.into_laurent())).collect())
    }

    /// The constant map with value `p` on every vertex of `graph`.
    pub fn constant(graph: &GkmGraph, theory: Theory, p: &LaurentPoly) -> Result<Self> {
        Self::new(theory, graph.rank(), graph.vertices().iter().map(|v| (v.clone(), p.clone())).collect())
    }

    /// The class `v ↦ f(v)` for every vertex of `graph`.
    pub fn from_fn(graph: &GkmGraph, theory: Theory, f: impl Fn(&str) -> LaurentPoly) -> Result<Self> {
        Self::new(theory, graph.rank(), graph.vertices().iter().map(|v| (v.clone(), f(v))).collect())
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &BTreeMap<String, LaurentPoly> {
        &self.values
    }

    pub fn value(&self, v: &str) -> Option<&LaurentPoly> {
        self.values.get(v)
    }

    pub fn vertex_set(&self) -> impl Iterator<Item = &String> {
        self.values.keys()
    }

    pub fn map_values(&self, f: impl Fn(&str, &LaurentPoly) -> LaurentPoly) -> Result<Self> {
        Self::new(self.theory, self.rank, self.values.iter().map(|(v, p)| (v.clone(), f(v, p))).collect())
    }

    /// Restriction to a subset of vertices.
    pub fn restrict<'a>(&self, vertices: impl IntoIterator<Item = &'a String>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for v in vertices {
            let p = self.values.get(v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            values.insert(v.clone(), p.clone());
        }
        Self::new(self.theory, self.rank, values)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.theory != other.theory {
            return Err(Error::CarrierMismatch(format!("theories {} and {}", self.theory, other.theory)));
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        if !self.values.keys().eq(other.values.keys()) {
            return Err(Error::CarrierMismatch("vertex sets differ".into()));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly) -> Result<Self> {
        self.check_compatible(other)?;
        let values = self.values.iter().zip(other.values.values()).map(|((v, a), b)| (v.clone(), op(a, b))).collect();
        Self::new(self.theory, self.rank, values)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Multiplication by a ring element at every vertex.
    pub fn scale(&self, p: &LaurentPoly) -> Result<Self> {
        if p.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: p.rank() });
        }
        self.map_values(|_, v| v * p)
    }

    pub fn neg(&self) -> Self {
        self.map_values(|_, v| -v).expect("negation preserves validity")
    }

    pub fn pow(&self, k: u32) -> Self {
        self.map_values(|_, v| v.pow(k)).expect("powers preserve validity")
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(LaurentPoly::is_zero)
    }
}

/// Vertexwise ring operations on classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassOp<'a> {
    Add,
    Mul,
    Scalar(&'a LaurentPoly),
}

/// Applies `op` to `f` and `g` (the second argument is ignored for scalar
/// multiplication).
pub fn class_ring_ops(f: &EquivariantClass, g: &EquivariantClass, op: ClassOp<'_>) -> Result<EquivariantClass> {
    match op {
        ClassOp::Add => f.add(g),
        ClassOp::Mul => f.mul(g),
        ClassOp::Scalar(p) => f.scale(p),
    }
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub is_class: bool,
    pub failing_edge: Option<(String, String)>,
}

/// Decides whether `f` satisfies the edge condition of its theory on every
/// edge of `graph`: divisibility of `f(p) - f(q)` by `1 - z^{α(p,q)}` for K,
/// by the linear form `α(p,q)` for H.
pub fn is_equivariant_class(graph: &GkmGraph, f: &EquivariantClass) -> Result<ClassReport> {
    if f.rank() != graph.rank() {
        return Err(Error::RankMismatch { expected: graph.rank(), found: f.rank() });
    }
    for v in graph.vertices() {
        if f.value(v).is_none() {
            return Err(Error::CarrierMismatch(format!("class has no value at `{v}`")));
        }
    }
    if f.values().len() != graph.num_vertices() {
        return Err(Error::CarrierMismatch("class has values at vertices outside the graph".into()));
    }
    for (e, edge) in graph.edges().iter().enumerate() {
        if edge.src > edge.dst {
            continue;
        }
        let (p, q) = graph.edge_names(e);
        let diff = f.value(&p).unwrap() - f.value(&q).unwrap();
        let alpha = graph.alpha(e);
        let ok = match f.theory() {
            Theory::K => is_divisible_by_binomial(&diff, alpha)?,
            Theory::H => divides_linear_form(&Poly::new(diff)?, alpha)?.is_some(),
        };
        if !ok {
            return Ok(ClassReport { is_class: false, failing_edge: Some((p, q)) });
        }
    }
    Ok(ClassReport { is_class: true, failing_edge: None })
}
