//! Explicit target vectors and the degree-one generators built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{int, rat, Rational};
use crate::pe2core::Weight;
use crate::quiveralg::ArrowKind;
use crate::repmodules::{
    BaseLabel, BasisKey, InducedModule, ModuleKind, ModuleVector, OddMonomial,
};

use super::{module, Morphism};

const Y_M: u8 = 1;
const H_M: u8 = 2;
const X_M: u8 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismLabel {
    F,
    G,
    P,
    Q,
    F1,
    F2,
    G1,
    G2,
    #[serde(rename = "fprime")]
    FPrime,
    #[serde(rename = "gprime")]
    GPrime,
    R,
    R1,
    R2,
    Identity,
}

/// Targets in the induced Verma module Δ(A, b).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VermaTarget {
    /// 1 ⊗ w
    Top,
    /// x₋ ⊗ w
    XMinus,
    /// −(A+2) y₋x₋ + y h₋x₋
    C,
    /// −A(A+1) y₋ + (A+1) y h₋ + y² x₋
    D,
    /// y² x₋
    D1,
    /// y₋ + y h₋
    D2,
    /// y^{A+1}, the singular vector (A ≥ 0)
    Singular,
}

/// Targets in P(a, b) for a ≤ −3; with v = v_{a+1} the highest vector of
/// the top row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjTarget {
    A1,
    A2,
    B1,
    B2,
    C1,
    C2,
    D1,
    D2,
    Ap,
    Bp,
    Cp,
    Dp,
}

impl ProjTarget {
    pub const ALL: [ProjTarget; 12] = [
        ProjTarget::A1,
        ProjTarget::A2,
        ProjTarget::B1,
        ProjTarget::B2,
        ProjTarget::C1,
        ProjTarget::C2,
        ProjTarget::D1,
        ProjTarget::D2,
        ProjTarget::Ap,
        ProjTarget::Bp,
        ProjTarget::Cp,
        ProjTarget::Dp,
    ];
}

fn lin_words(m: &InducedModule, terms: &[(i64, &str)]) -> ModuleVector {
    let mut v = ModuleVector::zero();
    for (c, w) in terms {
        v.add_scaled(&m.word_vector(w), &int(*c));
    }
    v
}

pub fn verma_target_vector(m: &InducedModule, t: VermaTarget) -> ModuleVector {
    assert_eq!(m.kind(), ModuleKind::Verma);
    let a = m.lambda().a;
    match t {
        VermaTarget::Top => m.generator(),
        VermaTarget::XMinus => m.word_vector("x_minus"),
        VermaTarget::C => lin_words(m, &[(-(a + 2), "y_minus x_minus"), (1, "y h_minus x_minus")]),
        VermaTarget::D => {
            lin_words(m, &[(-a * (a + 1), "y_minus"), (a + 1, "y h_minus"), (1, "y^2 x_minus")])
        }
        VermaTarget::D1 => m.word_vector("y^2 x_minus"),
        VermaTarget::D2 => lin_words(m, &[(1, "y_minus"), (1, "y h_minus")]),
        VermaTarget::Singular => {
            assert!(a >= 0, "no singular vector below a dominant weight");
            m.word_vector(&format!("y^{}", a + 1))
        }
    }
}

fn key(odd: u8, base: BaseLabel) -> BasisKey {
    BasisKey { odd: OddMonomial(odd), base }
}

pub fn proj_target_vector(m: &InducedModule, t: ProjTarget) -> ModuleVector {
    assert_eq!(m.kind(), ModuleKind::Projective);
    let a = m.lambda().a;
    let v = BaseLabel::Top;
    let u = BaseLabel::Bottom;
    let terms: Vec<(Rational, BasisKey)> = match t {
        ProjTarget::A1 => vec![(int(1), key(0, v(0)))],
        ProjTarget::A2 => vec![(int(1), key(0, u(0)))],
        ProjTarget::B1 => vec![(int(1), key(X_M, v(0)))],
        ProjTarget::B2 => vec![
            (int(-1), key(Y_M, v(-2))),
            (int(1), key(H_M, v(-1))),
            (int(-(a + 1)), key(X_M, u(0))),
        ],
        ProjTarget::C1 => vec![(int(-a), key(Y_M | X_M, v(0))), (int(1), key(H_M | X_M, v(1)))],
        ProjTarget::C2 => vec![
            (int(1), key(Y_M | H_M, v(-1))),
            (int(-a), key(Y_M | X_M, u(0))),
            (int(1), key(H_M | X_M, u(1))),
        ],
        ProjTarget::D1 => vec![
            (int(a * a - a), key(Y_M, v(0))),
            (int(-(a - 1)), key(H_M, v(1))),
            (int(-1), key(X_M, v(2))),
        ],
        ProjTarget::D2 => vec![
            (int(a * (a * a - 1)), key(Y_M, u(0))),
            (int(-(a * a - 1)), key(H_M, u(1))),
            (int(-(a + 1)), key(X_M, u(2))),
            (int(2 * a - 1), key(Y_M, v(0))),
            (int(-1), key(H_M, v(1))),
        ],
        ProjTarget::Ap => vec![(int(1), key(0, v(a + 1)))],
        ProjTarget::Bp => vec![
            (int(-(a + 2) * (a + 3)), key(Y_M, v(a + 1))),
            (int(-(a + 3)), key(H_M, v(a + 2))),
            (int(1), key(X_M, v(a + 3))),
        ],
        ProjTarget::Cp => vec![(int(1), key(H_M | X_M, v(a + 2))), (int(a + 2), key(Y_M | X_M, v(a + 1)))],
        ProjTarget::Dp => vec![(int(1), key(X_M, v(a + 1)))],
    };
    let mut out = ModuleVector::zero();
    for (c, k) in terms {
        out.add_term(k, &c);
    }
    out
}

fn morphism_from(m: &InducedModule, vector: ModuleVector, degree: Option<u32>) -> Morphism {
    let k = *vector.0.keys().next().expect("nonzero target");
    Morphism { source: m.weight_of(k), target: m.lambda(), vector, degree }
}

pub fn verma_morphism(target: Weight, t: VermaTarget, degree: Option<u32>) -> Result<Morphism> {
    if target.a < -1 {
        return Err(Error::Mismatch(format!("P({target}) is not a Verma module")));
    }
    let m = module(target)?;
    Ok(morphism_from(&m, verma_target_vector(&m, t), degree))
}

pub fn proj_morphism(target: Weight, t: ProjTarget, degree: Option<u32>) -> Result<Morphism> {
    if target.a > -3 {
        return Err(Error::Mismatch(format!("P({target}) is a Verma module")));
    }
    let m = module(target)?;
    Ok(morphism_from(&m, proj_target_vector(&m, t), degree))
}

/// Coefficients fixing f′ = f₂ + βf₁ and g′ = g₂ + αg₁, as functions of the
/// ε-coefficient of the target. `offset_*` perturbs the quadratic choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Gauge {
    pub alpha_offset: i64,
    pub beta_offset: i64,
}

impl Gauge {
    pub const QUADRATIC: Gauge = Gauge { alpha_offset: 0, beta_offset: 0 };

    pub fn perturbed_beta(delta: i64) -> Gauge {
        Gauge { alpha_offset: 0, beta_offset: delta }
    }

    pub fn alpha(&self, a: i64) -> Rational {
        rat(-2, a + 1) + int(self.alpha_offset)
    }

    pub fn beta(&self, a: i64) -> Rational {
        rat(2, a + 1) + int(self.beta_offset)
    }
}

/// (α_a, β_a) = (−2/(a+1), 2/(a+1)); none at a = −1 where neither is used.
pub fn gauge_fix(a: i64) -> Option<(Rational, Rational)> {
    (a != -1).then(|| (Gauge::QUADRATIC.alpha(a), Gauge::QUADRATIC.beta(a)))
}

/// β_{a−2} − β_a − α_a + α_{a+2} − 8/((a−1)(a+3)).
pub fn gauge_residual(a: i64, gauge: &Gauge) -> Rational {
    gauge.beta(a - 2) - gauge.beta(a) - gauge.alpha(a) + gauge.alpha(a + 2) - rat(8, (a - 1) * (a + 3))
}

fn no_arrow(kind: ArrowKind, source: Weight) -> Error {
    Error::Mismatch(format!("no arrow {kind} leaves {source}"))
}

/// The Lie-side morphism of an arrow of the block's quiver.
pub fn arrow_morphism(kind: ArrowKind, source: Weight, gauge: &Gauge) -> Result<Morphism> {
    let target = kind.target_from(source).ok_or_else(|| no_arrow(kind, source))?;
    let d = Some(1);
    match kind {
        ArrowKind::F => verma_morphism(target, VermaTarget::D, d),
        ArrowKind::G => verma_morphism(target, VermaTarget::XMinus, d),
        ArrowKind::P => proj_morphism(target, ProjTarget::Ap, d),
        ArrowKind::Q => verma_morphism(target, VermaTarget::Singular, d),
        ArrowKind::FPrime => {
            let f1 = proj_morphism(target, ProjTarget::B1, None)?;
            let f2 = proj_morphism(target, ProjTarget::B2, None)?;
            let mut m = Morphism::lin(&[(int(1), &f2), (gauge.beta(target.a), &f1)])?;
            m.degree = d;
            Ok(m)
        }
        ArrowKind::GPrime if target.a == -1 => verma_morphism(target, VermaTarget::D2, d),
        ArrowKind::GPrime => {
            let g1 = proj_morphism(target, ProjTarget::D1, None)?;
            let g2 = proj_morphism(target, ProjTarget::D2, None)?;
            let mut m = Morphism::lin(&[(int(1), &g2), (gauge.alpha(target.a), &g1)])?;
            m.degree = d;
            Ok(m)
        }
    }
}

/// The named morphism with the given source. The downstairs pieces f₁, f₂
/// point to (a−2, b+1), g₁, g₂ to (a+2, b+1) and r, r₁, r₂ to (a, b+2).
pub fn named_morphism(label: MorphismLabel, source: Weight, gauge: &Gauge) -> Result<Morphism> {
    let up = |da: i64, db: i64| source.shift(da, db);
    let g_target = up(2, 1);
    match label {
        MorphismLabel::F => arrow_morphism(ArrowKind::F, source, gauge),
        MorphismLabel::G => arrow_morphism(ArrowKind::G, source, gauge),
        MorphismLabel::P => arrow_morphism(ArrowKind::P, source, gauge),
        MorphismLabel::Q => arrow_morphism(ArrowKind::Q, source, gauge),
        MorphismLabel::FPrime => arrow_morphism(ArrowKind::FPrime, source, gauge),
        MorphismLabel::GPrime => arrow_morphism(ArrowKind::GPrime, source, gauge),
        MorphismLabel::Identity => Morphism::identity(source),
        MorphismLabel::F1 => proj_morphism(up(-2, 1), ProjTarget::B1, Some(3)),
        MorphismLabel::F2 => proj_morphism(up(-2, 1), ProjTarget::B2, None),
        MorphismLabel::G1 if g_target.a == -1 => verma_morphism(g_target, VermaTarget::D1, Some(3)),
        MorphismLabel::G2 if g_target.a == -1 => verma_morphism(g_target, VermaTarget::D2, None),
        MorphismLabel::G1 => proj_morphism(g_target, ProjTarget::D1, Some(3)),
        MorphismLabel::G2 => proj_morphism(g_target, ProjTarget::D2, None),
        MorphismLabel::R => verma_morphism(up(0, 2), VermaTarget::C, Some(4)),
        MorphismLabel::R1 => proj_morphism(up(0, 2), ProjTarget::C1, Some(4)),
        MorphismLabel::R2 => proj_morphism(up(0, 2), ProjTarget::C2, None),
    }
    .and_then(|m| {
        if m.source == source {
            Ok(m)
        } else {
            Err(Error::Mismatch(format!("{label:?} does not start at {source}")))
        }
    })
}
