//! Homomorphisms between the projectives P(λ): targets, composition, the
//! named generators and the verification of their relations.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{in_span, kernel_basis, Rational};
use crate::pe2core::{Generator, Weight};
use crate::repmodules::{default_depth, projective_cover, InducedModule, ModuleVector};

pub mod multiplicity;
pub mod named;
pub mod relations;

pub use multiplicity::*;
pub use named::*;
pub use relations::*;

/// Homological degree budget used for module depths.
pub const DEPTH_N_MAX: i64 = 6;

/// P(λ) with the default depth.
pub fn module(lambda: Weight) -> Result<InducedModule> {
    projective_cover(lambda, default_depth(lambda.a, DEPTH_N_MAX))
}

/// A map P(source) → P(target), determined by the image of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: Weight,
    pub target: Weight,
    pub vector: ModuleVector,
    /// Path-length degree when the morphism is homogeneous.
    pub degree: Option<u32>,
}

impl Morphism {
    pub fn zero(source: Weight, target: Weight) -> Self {
        Morphism { source, target, vector: ModuleVector::zero(), degree: None }
    }

    pub fn identity(lambda: Weight) -> Result<Self> {
        let m = module(lambda)?;
        Ok(Morphism { source: lambda, target: lambda, vector: m.generator(), degree: Some(0) })
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero()
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Morphism { vector: self.vector.scaled(c), ..self.clone() }
    }

    /// Σ cᵢ mᵢ over morphisms with common source and target.
    pub fn lin(terms: &[(Rational, &Morphism)]) -> Result<Morphism> {
        let (_, first) = terms.first().ok_or_else(|| Error::Mismatch("empty combination".into()))?;
        let mut out = Morphism { degree: first.degree, ..Morphism::zero(first.source, first.target) };
        for (c, m) in terms {
            if (m.source, m.target) != (first.source, first.target) {
                return Err(Error::Mismatch(format!(
                    "cannot add {}→{} to {}→{}",
                    m.source, m.target, first.source, first.target
                )));
            }
            if m.degree != first.degree {
                out.degree = None;
            }
            out.vector.add_scaled(&m.vector, c);
        }
        Ok(out)
    }

    /// Whether the vector is a valid target: homogeneous of weight `source`
    /// in P(target) and killed by ∂ξ and xyx.
    pub fn is_valid(&self) -> Result<bool> {
        let m = module(self.target)?;
        if self.vector.0.keys().any(|k| m.weight_of(*k) != self.source) {
            return Ok(false);
        }
        let d = m.act(Generator::DXi, &self.vector);
        let xyx = m.apply_word(&"x y x".parse().unwrap(), &self.vector);
        Ok(d.is_zero() && xyx.is_zero())
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({}) → P({}): {}", self.source, self.target, self.vector)
    }
}

/// `outer ∘ inner`: the inner map runs first.
pub fn compose(outer: &Morphism, inner: &Morphism) -> Result<Morphism> {
    if inner.target != outer.source {
        return Err(Error::Mismatch(format!(
            "inner ends at {} but outer starts at {}",
            inner.target, outer.source
        )));
    }
    let middle = module(inner.target)?;
    let tgt = module(outer.target)?;
    let mut v = ModuleVector::zero();
    for (k, c) in &inner.vector.0 {
        for (x, w) in middle.reaching_word(*k) {
            let img = tgt.apply_word(&w, &outer.vector);
            v.add_scaled(&img, &(c * &x));
        }
    }
    let degree = match (outer.degree, inner.degree) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    Ok(Morphism { source: inner.source, target: outer.target, vector: v, degree })
}

/// Compose a chain written left to right: `chain(&[g, f])` is g∘f.
pub fn compose_chain(ms: &[Morphism]) -> Result<Morphism> {
    let (last, rest) = ms.split_last().ok_or_else(|| Error::Mismatch("empty chain".into()))?;
    rest.iter().rev().try_fold(last.clone(), |acc, m| compose(m, &acc))
}

fn check_odd(w: Weight) -> Result<()> {
    if w.is_odd_type() {
        Ok(())
    } else {
        Err(Error::NotOdd(w))
    }
}

/// Basis of {v ∈ P(λ)_μ : ∂ξ v = 0, xyx v = 0}, i.e. of Hom(P(μ), P(λ)).
pub fn target_vectors(lambda: Weight, mu: Weight) -> Result<Vec<Morphism>> {
    check_odd(lambda)?;
    check_odd(mu)?;
    let m = module(lambda)?;
    let basis = m.weight_space(mu)?;
    if basis.is_empty() {
        return Ok(vec![]);
    }
    let xyx = "x y x".parse().unwrap();
    // The two images live in different weight spaces, so one stacked operator suffices.
    let (mat, _) = m.operator_matrix(&basis, |v| {
        let mut out = m.act(Generator::DXi, v);
        out.add_scaled(&m.apply_word(&xyx, v), &Rational::from_integer(1.into()));
        out
    });
    Ok(kernel_basis(&mat)
        .into_iter()
        .map(|c| Morphism {
            source: mu,
            target: lambda,
            vector: ModuleVector::from_coords(&basis, &c),
            degree: None,
        })
        .collect())
}

/// Coefficients of `m` in terms of `basis` (all with the same source and target).
pub fn express(m: &Morphism, basis: &[Morphism]) -> Option<Vec<Rational>> {
    if basis.iter().any(|b| (b.source, b.target) != (m.source, m.target)) {
        return None;
    }
    let mut keys: Vec<_> = m.vector.0.keys().copied().collect();
    for b in basis {
        keys.extend(b.vector.0.keys().copied());
    }
    keys.sort();
    keys.dedup();
    let cols: Vec<Vec<Rational>> = basis.iter().map(|b| b.vector.coords(&keys)).collect();
    in_span(&cols, &m.vector.coords(&keys))
}

/// Whether the morphisms are linearly independent.
pub fn independent(ms: &[Morphism]) -> bool {
    let mut keys: Vec<_> = ms.iter().flat_map(|b| b.vector.0.keys().copied()).collect();
    keys.sort();
    keys.dedup();
    let mut space = crate::exactla::RowSpace::new(keys.len());
    ms.iter().all(|m| space.insert(&m.vector.coords(&keys)))
}

/// Largest absolute coefficient of a morphism's vector; zero iff the map is zero.
pub fn residual(m: &Morphism) -> Rational {
    if m.vector.is_zero() {
        Rational::zero()
    } else {
        m.vector.max_abs_coeff()
    }
}
