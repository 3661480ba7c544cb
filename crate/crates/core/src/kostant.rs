//! The tensor model `R^{W_K} ⊗_{R^W} R` of the K-ring of `G/P` and its
//! evaluation map to vertex labelings of the coset graph.

use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::{elementary_symmetric_of, LatticeMap, LaurentPoly};
use crate::flag::{build_gp_graph, is_weyl_invariant, weyl_action_on_class, CosetGraph, RootSystem, WeylGroup};
use crate::gkm::{is_equivariant_class, EquivariantClass, Theory};
use crate::sampling::{rng, LaurentSampler};
use crate::{Error, Result};

/// The pair `(W, W_K)` with `W_K = W(Σ)`, realised by the coset graph.
#[derive(Clone, Debug)]
pub struct KkContext {
    graph: CosetGraph,
}

impl KkContext {
    pub fn new(roots: &RootSystem, sigma: &[usize]) -> Result<Self> {
        Ok(KkContext { graph: build_gp_graph(roots, sigma)? })
    }

    pub fn from_graph(graph: CosetGraph) -> Self {
        KkContext { graph }
    }

    pub fn graph(&self) -> &CosetGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.root_system().dim()
    }

    fn fixed_by(group: &WeylGroup, f: &LaurentPoly) -> bool {
        group.elements().iter().all(|u| f.substitute(u) == *f)
    }

    pub fn is_wk_invariant(&self, f: &LaurentPoly) -> bool {
        Self::fixed_by(self.graph.subgroup(), f)
    }

    pub fn is_w_invariant(&self, f: &LaurentPoly) -> bool {
        Self::fixed_by(self.graph.group(), f)
    }

    /// `Σ_{u ∈ W_K} u·p`.
    pub fn symmetrize_wk(&self, p: &LaurentPoly) -> LaurentPoly {
        symmetrize(self.graph.subgroup(), p)
    }

    /// `Σ_{u ∈ W} u·p`.
    pub fn symmetrize_w(&self, p: &LaurentPoly) -> LaurentPoly {
        symmetrize(self.graph.group(), p)
    }
}

fn symmetrize(group: &WeylGroup, p: &LaurentPoly) -> LaurentPoly {
    group.elements().iter().fold(LaurentPoly::zero(p.rank()), |acc, u| &acc + &p.substitute(u))
}

/// `Σ_i f_i ⊗ g_i` with every `f_i` fixed by `W_K`. No normal form modulo the
/// balancing relation is kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    rank: usize,
    summands: Vec<(LaurentPoly, LaurentPoly)>,
}

impl TensorElement {
    /// Validates ranks and the `W_K`-invariance of the left factors.
    pub fn new(ctx: &KkContext, summands: Vec<(LaurentPoly, LaurentPoly)>) -> Result<Self> {
        let rank = ctx.rank();
        for (i, (f, g)) in summands.iter().enumerate() {
            for p in [f, g] {
                if p.rank() != rank {
                    return Err(Error::RankMismatch { expected: rank, found: p.rank() });
                }
            }
            if !ctx.is_wk_invariant(f) {
                return Err(Error::InvalidArgument(format!("left factor of summand {} is not W_K-invariant", i + 1)));
            }
        }
        Ok(TensorElement { rank, summands })
    }

    pub fn pure(ctx: &KkContext, f: LaurentPoly, g: LaurentPoly) -> Result<Self> {
        Self::new(ctx, vec![(f, g)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn summands(&self) -> &[(LaurentPoly, LaurentPoly)] {
        &self.summands
    }

    pub fn add(&self, other: &Self) -> Self {
        TensorElement { rank: self.rank, summands: [self.summands.clone(), other.summands.clone()].concat() }
    }

    /// `(f⊗g)(f'⊗g') = ff' ⊗ gg'`, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        let summands = self
            .summands
            .iter()
            .flat_map(|(f, g)| other.summands.iter().map(move |(f2, g2)| (f * f2, g * g2)))
            .collect();
        TensorElement { rank: self.rank, summands }
    }
}

/// `k(Σ f_i ⊗ g_i)([w]) = Σ (w·f_i) g_i`, with `w` the coset representative.
pub fn kk_evaluate(ctx: &KkContext, t: &TensorElement) -> Result<EquivariantClass> {
    if t.rank != ctx.rank() {
        return Err(Error::RankMismatch { expected: ctx.rank(), found: t.rank });
    }
    let graph = &ctx.graph;
    let mut values = BTreeMap::new();
    for v in graph.graph().vertices() {
        let w = graph.group().element(graph.representative(v)?);
        let value = t
            .summands
            .iter()
            .fold(LaurentPoly::zero(t.rank), |acc, (f, g)| &acc + &(&f.substitute(w) * g));
        values.insert(v.clone(), value);
    }
    EquivariantClass::new(Theory::K, t.rank, values)
}

/// `w(f ⊗ g) = f ⊗ wg`.
pub fn kk_w_action(ctx: &KkContext, w: &LatticeMap, t: &TensorElement) -> Result<TensorElement> {
    if !ctx.graph.group().contains(w) {
        return Err(Error::InvalidArgument("the lattice map is not an element of W".into()));
    }
    let summands = t.summands.iter().map(|(f, g)| (f.clone(), g.substitute(w))).collect();
    Ok(TensorElement { rank: t.rank, summands })
}

/// Outcome of [`kk_property_check`]: one flag per property, with the first
/// counterexample of each failing property described in `failures`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub samples: usize,
    pub multiplicative: bool,
    pub image_is_class: bool,
    pub balanced: bool,
    pub invariant_images: bool,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.multiplicative && self.image_is_class && self.balanced && self.invariant_images
    }
}

fn random_tensor(ctx: &KkContext, rng: &mut impl Rng) -> Result<TensorElement> {
    let s = LaurentSampler { max_terms: 2, ..LaurentSampler::new(ctx.rank()) };
    let summands = (0..rng.gen_range(1..=2))
        .map(|_| (ctx.symmetrize_wk(&s.sample(rng)), s.sample(rng)))
        .collect();
    TensorElement::new(ctx, summands)
}

/// Checks on `samples` random tensors: multiplicativity of `k`, membership
/// of every image in the K-ring, the balancing relation `k(hf⊗g) = k(f⊗hg)`
/// for `W`-invariant `h` (symmetrized samples and the full elementary
/// symmetric polynomials), and Weyl invariance of the images of `f ⊗ 1`.
pub fn kk_property_check(ctx: &KkContext, samples: usize, seed: u64) -> Result<PropertyReport> {
    let mut rng = rng(seed);
    let rank = ctx.rank();
    let graph = ctx.graph.graph();
    let vars: Vec<LaurentPoly> = (0..rank).map(|i| LaurentPoly::var(rank, i)).collect();
    let sampler = LaurentSampler { max_terms: 2, ..LaurentSampler::new(rank) };
    let mut report = PropertyReport {
        samples,
        multiplicative: true,
        image_is_class: true,
        balanced: true,
        invariant_images: true,
        failures: Vec::new(),
    };
    for k in 0..samples {
        let t = random_tensor(ctx, &mut rng)?;
        let u = random_tensor(ctx, &mut rng)?;
        let (kt, ku, ktu) = (kk_evaluate(ctx, &t)?, kk_evaluate(ctx, &u)?, kk_evaluate(ctx, &t.mul(&u))?);
        if kt.mul(&ku)? != ktu {
            fail(&mut report.multiplicative, format!("sample {k}: k(tt') ≠ k(t)k(t')"), &mut report.failures);
        }
        for c in [&kt, &ku, &ktu] {
            if !is_equivariant_class(graph, c)?.is_class {
                fail(&mut report.image_is_class, format!("sample {k}: image is not a K-class"), &mut report.failures);
            }
        }
        let h = if k % 2 == 0 {
            ctx.symmetrize_w(&sampler.sample(&mut rng))
        } else {
            elementary_symmetric_of(&vars, 1 + k % rank, rank)
        };
        let left = TensorElement {
            rank,
            summands: t.summands.iter().map(|(f, g)| (&h * f, g.clone())).collect(),
        };
        let right = TensorElement {
            rank,
            summands: t.summands.iter().map(|(f, g)| (f.clone(), &h * g)).collect(),
        };
        if ctx.is_w_invariant(&h) && kk_evaluate(ctx, &left)? != kk_evaluate(ctx, &right)? {
            fail(&mut report.balanced, format!("sample {k}: k(hf⊗g) ≠ k(f⊗hg)"), &mut report.failures);
        }
        let f_only = TensorElement {
            rank,
            summands: t.summands.iter().map(|(f, _)| (f.clone(), LaurentPoly::one(rank))).collect(),
        };
        if !is_weyl_invariant(&ctx.graph, &kk_evaluate(ctx, &f_only)?)? {
            fail(&mut report.invariant_images, format!("sample {k}: k(f⊗1) is not invariant"), &mut report.failures);
        }
    }
    Ok(report)
}

fn fail(flag: &mut bool, msg: String, failures: &mut Vec<String>) {
    if *flag {
        failures.push(msg);
    }
    *flag = false;
}

/// `w·k(t) = k(w t)` for the Weyl action on classes.
pub fn intertwines(ctx: &KkContext, w: &LatticeMap, t: &TensorElement) -> Result<bool> {
    let lhs = weyl_action_on_class(&ctx.graph, w, &kk_evaluate(ctx, t)?)?;
    Ok(lhs == kk_evaluate(ctx, &kk_w_action(ctx, w, t)?)?)
}
