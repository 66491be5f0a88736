//! Verma modules, the sl2 projectives P0(λ), and their inductions to pe(2).
//!
//! Modules are never materialized: basis vectors are labels and the action
//! is computed on demand, so the only limit is the nominal depth used for
//! boundary checks.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{fmt_rational, int, kernel_basis, rank, Rational, SparseMatrix};
use crate::pe2core::{bracket, Generator, Weight, Word};

use Generator::*;

/// Basis vector of a g0-module. For P0(λ) the top row `v_j` (j ≥ a+1) spans
/// a copy of Δ0(λ′) and the bottom row `u_j` (j ≥ 0) maps onto Δ0(λ); both
/// have h-weight a−2j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BaseLabel {
    Verma(i64),
    Top(i64),
    Bottom(i64),
}

impl BaseLabel {
    /// Number of y-steps below the generating weight.
    pub fn index(self) -> i64 {
        match self {
            BaseLabel::Verma(k) | BaseLabel::Top(k) | BaseLabel::Bottom(k) => k,
        }
    }
}

impl fmt::Display for BaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BaseLabel::Verma(0) => f.write_str("w"),
            BaseLabel::Verma(1) => f.write_str("y w"),
            BaseLabel::Verma(k) => write!(f, "y^{k} w"),
            BaseLabel::Top(j) => write!(f, "v[{j}]"),
            BaseLabel::Bottom(j) => write!(f, "u[{j}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleKind {
    Verma,
    Projective,
}

/// A module over g0 = gl(1|1)_0 ≅ sl2 ⊕ C ξ∂ξ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseModule {
    pub lambda: Weight,
    pub kind: ModuleKind,
    pub depth: i64,
}

/// Default depth: enough y-steps to reach past the dual weight plus a guard band.
pub fn default_depth(a: i64, n_max: i64) -> i64 {
    a.abs() + 2 + 2 * n_max + 8
}

pub fn build_verma0(lambda: Weight, depth: i64) -> BaseModule {
    assert!(depth >= 1, "depth must be positive");
    BaseModule { lambda, kind: ModuleKind::Verma, depth }
}

pub fn build_proj0(lambda: Weight, depth: i64) -> Result<BaseModule> {
    if lambda.a > -3 || lambda.a.rem_euclid(2) == 0 {
        return Err(Error::NotProjectiveCase(lambda));
    }
    assert!(depth >= 1, "depth must be positive");
    Ok(BaseModule { lambda, kind: ModuleKind::Projective, depth: depth.max(-lambda.a) })
}

impl BaseModule {
    pub fn generator(&self) -> BaseLabel {
        match self.kind {
            ModuleKind::Verma => BaseLabel::Verma(0),
            ModuleKind::Projective => BaseLabel::Bottom(0),
        }
    }

    pub fn h_weight(&self, l: BaseLabel) -> i64 {
        self.lambda.a - 2 * l.index()
    }

    pub fn contains(&self, l: BaseLabel) -> bool {
        match (self.kind, l) {
            (ModuleKind::Verma, BaseLabel::Verma(k)) => k >= 0,
            (ModuleKind::Projective, BaseLabel::Bottom(j)) => j >= 0,
            (ModuleKind::Projective, BaseLabel::Top(j)) => j > self.lambda.a,
            _ => false,
        }
    }

    /// Labels of h-weight `c`.
    pub fn labels_of_weight(&self, c: i64) -> Vec<BaseLabel> {
        let d = self.lambda.a - c;
        if d % 2 != 0 {
            return vec![];
        }
        let j = d / 2;
        match self.kind {
            ModuleKind::Verma if j >= 0 => vec![BaseLabel::Verma(j)],
            ModuleKind::Verma => vec![],
            ModuleKind::Projective => [BaseLabel::Top(j), BaseLabel::Bottom(j)]
                .into_iter()
                .filter(|&l| self.contains(l))
                .collect(),
        }
    }

    /// Action of an even generator (or ∂ξ, which kills g0-modules).
    pub fn act(&self, g: Generator, l: BaseLabel) -> Vec<(BaseLabel, Rational)> {
        let a = self.lambda.a;
        let j = l.index();
        let mut out = Vec::new();
        match (g, l) {
            (DXi, _) => {}
            (H, _) => out.push((l, int(a - 2 * j))),
            (XiDxi, _) => out.push((l, int(-self.lambda.b))),
            (Y, BaseLabel::Verma(k)) => out.push((BaseLabel::Verma(k + 1), Rational::one())),
            (Y, BaseLabel::Top(k)) => out.push((BaseLabel::Top(k + 1), Rational::one())),
            (Y, BaseLabel::Bottom(k)) => out.push((BaseLabel::Bottom(k + 1), Rational::one())),
            (X, BaseLabel::Verma(k)) => out.push((BaseLabel::Verma(k - 1), int(k * (a - k + 1)))),
            (X, BaseLabel::Top(k)) => out.push((BaseLabel::Top(k - 1), int(-k * (k - a - 1)))),
            (X, BaseLabel::Bottom(k)) => {
                out.push((BaseLabel::Bottom(k - 1), int(k * (a - k + 1))));
                out.push((BaseLabel::Top(k - 1), Rational::one()));
            }
            _ => panic!("{g} is not an element of g0"),
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }

    /// An element of U(g0) carrying the generator to `l`, as (coefficient, word) terms.
    pub fn reaching_word(&self, l: BaseLabel) -> Vec<(Rational, Word)> {
        match l {
            BaseLabel::Verma(k) | BaseLabel::Bottom(k) => {
                vec![(Rational::one(), Word::pow(Y, k as usize))]
            }
            BaseLabel::Top(j) if j >= -1 => {
                vec![(Rational::one(), Word::pow(X, 1).then_left(Y, (j + 1) as usize))]
            }
            BaseLabel::Top(j) => {
                // x v_{j+1} = −(j+1)(j−a) v_j
                let c = int(-(j + 1) * (j - self.lambda.a));
                self.reaching_word(BaseLabel::Top(j + 1))
                    .into_iter()
                    .map(|(k, w)| (k / &c, w.then_left(X, 1)))
                    .collect()
            }
        }
    }
}

/// Odd monomial y₋^α₁ h₋^α₂ x₋^α₃ encoded as a bitmask (bit 0: y₋, 1: h₋, 2: x₋).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OddMonomial(pub u8);

pub const ODD_ORDER: [Generator; 3] = [YMinus, HMinus, XMinus];

impl OddMonomial {
    pub const ONE: OddMonomial = OddMonomial(0);

    pub fn all() -> impl Iterator<Item = OddMonomial> {
        (0..8).map(OddMonomial)
    }

    fn bit(g: Generator) -> u8 {
        match g {
            YMinus => 1,
            HMinus => 2,
            XMinus => 4,
            _ => panic!("{g} is not in g_-1"),
        }
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn letters(self) -> Vec<Generator> {
        ODD_ORDER.into_iter().filter(|&g| self.0 & Self::bit(g) != 0).collect()
    }

    pub fn word(self) -> Word {
        Word(self.letters())
    }

    pub fn weight(self) -> Weight {
        self.letters().iter().fold(Weight::new(0, 0), |w, g| w + g.root())
    }

    /// z · self, or None when z already occurs.
    pub fn mul_left(self, z: Generator) -> Option<(i64, OddMonomial)> {
        let b = Self::bit(z);
        if self.0 & b != 0 {
            return None;
        }
        let passed = (self.0 & (b - 1)).count_ones();
        Some((if passed % 2 == 0 { 1 } else { -1 }, OddMonomial(self.0 | b)))
    }
}

impl fmt::Display for OddMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let names: Vec<&str> = self.letters().iter().map(|g| g.name()).collect();
        f.write_str(&names.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisKey {
    pub odd: OddMonomial,
    pub base: BaseLabel,
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.odd, self.base)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleVector(pub BTreeMap<BasisKey, Rational>);

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector(BTreeMap::new())
    }

    pub fn basis(k: BasisKey) -> Self {
        let mut m = BTreeMap::new();
        m.insert(k, Rational::one());
        ModuleVector(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: &BasisKey) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, k: BasisKey, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleVector, c: &Rational) {
        for (k, x) in &other.0 {
            self.add_term(*k, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Rational) -> ModuleVector {
        let mut r = ModuleVector::zero();
        r.add_scaled(self, c);
        r
    }

    pub fn lin(terms: &[(Rational, &ModuleVector)]) -> ModuleVector {
        let mut r = ModuleVector::zero();
        for (c, v) in terms {
            r.add_scaled(v, c);
        }
        r
    }

    pub fn max_abs_coeff(&self) -> Rational {
        use num_traits::Signed;
        self.0.values().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn coords(&self, basis: &[BasisKey]) -> Vec<Rational> {
        basis.iter().map(|k| self.coeff(k)).collect()
    }

    pub fn from_coords(basis: &[BasisKey], c: &[Rational]) -> ModuleVector {
        let mut r = ModuleVector::zero();
        for (k, x) in basis.iter().zip(c) {
            r.add_term(*k, x);
        }
        r
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> =
            self.0.iter().map(|(k, c)| format!("({})·[{}]", fmt_rational(c), k)).collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Ind from g≥0 of a g0-module, with ∂ξ acting by zero on the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InducedModule {
    pub base: BaseModule,
}

pub fn induce(base: BaseModule) -> InducedModule {
    InducedModule { base }
}

/// P(λ): the induced Verma for a ≥ −1, the induced P0(λ) for a ≤ −3.
pub fn projective_cover(lambda: Weight, depth: i64) -> Result<InducedModule> {
    if !lambda.is_odd_type() {
        return Err(Error::NotOdd(lambda));
    }
    if lambda.a >= -1 {
        Ok(induce(build_verma0(lambda, depth)))
    } else {
        Ok(induce(build_proj0(lambda, depth)?))
    }
}

impl InducedModule {
    pub fn lambda(&self) -> Weight {
        self.base.lambda
    }

    pub fn kind(&self) -> ModuleKind {
        self.base.kind
    }

    pub fn generator_key(&self) -> BasisKey {
        BasisKey { odd: OddMonomial::ONE, base: self.base.generator() }
    }

    pub fn generator(&self) -> ModuleVector {
        ModuleVector::basis(self.generator_key())
    }

    pub fn weight_of(&self, k: BasisKey) -> Weight {
        k.odd.weight() + Weight::new(self.base.h_weight(k.base), self.base.lambda.b)
    }

    /// Element of U(g) carrying the generator to the basis vector `k`.
    pub fn reaching_word(&self, k: BasisKey) -> Vec<(Rational, Word)> {
        let odd = k.odd.word();
        self.base
            .reaching_word(k.base)
            .into_iter()
            .map(|(c, w)| {
                let mut letters = odd.0.clone();
                letters.extend(w.0);
                (c, Word(letters))
            })
            .collect()
    }

    fn act_basis(&self, g: Generator, odd: OddMonomial, base: BaseLabel) -> ModuleVector {
        let mut out = ModuleVector::zero();
        if matches!(g, YMinus | HMinus | XMinus) {
            if let Some((s, o)) = odd.mul_left(g) {
                out.add_term(BasisKey { odd: o, base }, &int(s));
            }
            return out;
        }
        if odd.0 == 0 {
            for (l, c) in self.base.act(g, base) {
                out.add_term(BasisKey { odd, base: l }, &c);
            }
            return out;
        }
        // odd = z · rest with z the leftmost letter
        let z = odd.letters()[0];
        let rest = OddMonomial(odd.0 & !OddMonomial::bit(z));
        for &(k, c) in bracket(g, z) {
            out.add_scaled(&self.act_basis(k, rest, base), &int(c));
        }
        let sign = if g.is_odd() { -1 } else { 1 };
        let inner = self.act_basis(g, rest, base);
        for (key, c) in &inner.0 {
            out.add_scaled(&self.act_basis(z, key.odd, key.base), &(c * int(sign)));
        }
        out
    }

    pub fn act_key(&self, g: Generator, k: BasisKey) -> ModuleVector {
        self.act_basis(g, k.odd, k.base)
    }

    pub fn act(&self, g: Generator, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (k, c) in &v.0 {
            out.add_scaled(&self.act_key(g, *k), c);
        }
        out
    }

    /// Apply a word; the rightmost letter acts first.
    pub fn apply_word(&self, w: &Word, v: &ModuleVector) -> ModuleVector {
        w.0.iter().rev().fold(v.clone(), |acc, &g| self.act(g, &acc))
    }

    /// The vector `w · generator`.
    pub fn word_vector(&self, w: &str) -> ModuleVector {
        let w: Word = w.parse().expect("valid word");
        self.apply_word(&w, &self.generator())
    }

    /// Basis of P(λ)_μ in PBW order.
    pub fn weight_space(&self, mu: Weight) -> Result<Vec<BasisKey>> {
        let lam = self.base.lambda;
        let mut out = Vec::new();
        for odd in OddMonomial::all() {
            let base = mu - odd.weight();
            if base.b != lam.b {
                continue;
            }
            let labels = self.base.labels_of_weight(base.a);
            if let Some(l) = labels.first() {
                if l.index() > self.base.depth - 2 {
                    return Err(Error::Window {
                        weight: mu,
                        reason: format!(
                            "P({lam}) is truncated at depth {}; rebuild with a larger depth",
                            self.base.depth
                        ),
                    });
                }
            }
            out.extend(labels.into_iter().map(|l| BasisKey { odd, base: l }));
        }
        Ok(out)
    }

    /// Matrix of an operator (given on basis vectors) from `domain`, with rows
    /// indexed by whatever basis vectors occur in the images.
    pub fn operator_matrix<F>(&self, domain: &[BasisKey], op: F) -> (SparseMatrix, Vec<BasisKey>)
    where
        F: Fn(&ModuleVector) -> ModuleVector,
    {
        let images: Vec<ModuleVector> = domain.iter().map(|k| op(&ModuleVector::basis(*k))).collect();
        let mut rows: BTreeMap<BasisKey, usize> = BTreeMap::new();
        for im in &images {
            for k in im.0.keys() {
                let n = rows.len();
                rows.entry(*k).or_insert(n);
            }
        }
        let mut m = SparseMatrix::zeros(rows.len(), domain.len());
        for (j, im) in images.iter().enumerate() {
            for (k, c) in &im.0 {
                m.set(rows[k], j, c.clone());
            }
        }
        let mut keys: Vec<(usize, BasisKey)> = rows.into_iter().map(|(k, i)| (i, k)).collect();
        keys.sort();
        (m, keys.into_iter().map(|(_, k)| k).collect())
    }

    /// (dim ker ∂ξ on P_μ, dim ∂ξ(P_{μ−δ})).
    pub fn ker_im_partial(&self, mu: Weight) -> Result<(usize, usize)> {
        let here = self.weight_space(mu)?;
        let below = self.weight_space(mu.shift(0, -1))?;
        let d = |v: &ModuleVector| self.act(DXi, v);
        let (m_here, _) = self.operator_matrix(&here, d);
        let (m_below, _) = self.operator_matrix(&below, d);
        Ok((kernel_basis(&m_here).len(), rank(&m_below)))
    }

    /// JSON-friendly dump of the listed weight spaces and all generator actions.
    pub fn dump(&self, weights: &[Weight]) -> Result<ModuleDump> {
        let mut spaces = Vec::new();
        for &mu in weights {
            let basis = self.weight_space(mu)?;
            let mut actions = BTreeMap::new();
            for g in Generator::ALL {
                let mut entries = Vec::new();
                for (j, k) in basis.iter().enumerate() {
                    for (t, c) in &self.act_key(g, *k).0 {
                        entries.push(ActionEntry {
                            from: j,
                            to: t.to_string(),
                            coeff: fmt_rational(c),
                        });
                    }
                }
                actions.insert(g.name().to_string(), entries);
            }
            spaces.push(WeightSpaceDump {
                weight: mu,
                basis: basis.iter().map(|k| k.to_string()).collect(),
                actions,
            });
        }
        Ok(ModuleDump {
            schema: "pe2odd.module/1".into(),
            lambda: self.lambda(),
            kind: self.kind(),
            depth: self.base.depth,
            weight_spaces: spaces,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionEntry {
    pub from: usize,
    pub to: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpaceDump {
    pub weight: Weight,
    pub basis: Vec<String>,
    pub actions: BTreeMap<String, Vec<ActionEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDump {
    pub schema: String,
    pub lambda: Weight,
    pub kind: ModuleKind,
    pub depth: i64,
    pub weight_spaces: Vec<WeightSpaceDump>,
}
