//! pe(2) as data: the eight generators, the bracket table, roots and weights.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    X,
    Y,
    H,
    XiDxi,
    DXi,
    XMinus,
    YMinus,
    HMinus,
}

use Generator::*;

impl Generator {
    pub const ALL: [Generator; 8] = [X, Y, H, XiDxi, DXi, XMinus, YMinus, HMinus];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_odd(self) -> bool {
        matches!(self, DXi | XMinus | YMinus | HMinus)
    }

    /// 0 for even, 1 for odd.
    pub fn parity(self) -> u8 {
        self.is_odd() as u8
    }

    /// Cartan elements get the zero weight.
    pub fn root(self) -> Weight {
        match self {
            X => Weight::new(2, 0),
            Y => Weight::new(-2, 0),
            H | XiDxi => Weight::new(0, 0),
            DXi => Weight::new(0, 1),
            XMinus => Weight::new(2, -1),
            YMinus => Weight::new(-2, -1),
            HMinus => Weight::new(0, -1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            X => "x",
            Y => "y",
            H => "h",
            XiDxi => "xi_dxi",
            DXi => "d_xi",
            XMinus => "x_minus",
            YMinus => "y_minus",
            HMinus => "h_minus",
        }
    }

    /// The sl2 element underlying an odd lowering generator `f ⊗ ξ`.
    pub fn sl2_part(self) -> Option<Generator> {
        match self {
            XMinus => Some(X),
            YMinus => Some(Y),
            HMinus => Some(H),
            _ => None,
        }
    }

    fn tensor_xi(self) -> Option<Generator> {
        match self {
            X => Some(XMinus),
            Y => Some(YMinus),
            H => Some(HMinus),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown generator {s:?}")))
    }
}

/// An integer combination of generators; all structure constants are integral.
pub type LieComb = Vec<(Generator, i64)>;

fn sl2_bracket(u: Generator, v: Generator) -> LieComb {
    match (u, v) {
        (H, X) => vec![(X, 2)],
        (X, H) => vec![(X, -2)],
        (H, Y) => vec![(Y, -2)],
        (Y, H) => vec![(Y, 2)],
        (X, Y) => vec![(H, 1)],
        (Y, X) => vec![(H, -1)],
        _ => vec![],
    }
}

fn scale(c: LieComb, s: i64) -> LieComb {
    c.into_iter().map(|(g, x)| (g, x * s)).collect()
}

/// The defining rules, applied to an ordered pair with `u` earlier in
/// `Generator::ALL` or equal; the other order follows by super-antisymmetry.
fn rule(u: Generator, v: Generator) -> LieComb {
    match (u, v) {
        (X | Y | H, X | Y | H) => sl2_bracket(u, v),
        // [f, g⊗ξ] = [f, g]⊗ξ
        (X | Y | H, _) if v.sl2_part().is_some() => sl2_bracket(u, v.sl2_part().unwrap())
            .into_iter()
            .map(|(g, c)| (g.tensor_xi().unwrap(), c))
            .collect(),
        // [ξ∂ξ, f⊗ξ] = f⊗ξ and [∂ξ, ξ∂ξ] = ∂ξ
        (XiDxi, _) if v.is_odd() && v != DXi => vec![(v, 1)],
        (XiDxi, DXi) => vec![(DXi, -1)],
        // [∂ξ, f⊗ξ] = f
        (DXi, _) if v.sl2_part().is_some() => vec![(v.sl2_part().unwrap(), 1)],
        _ => vec![],
    }
}

fn build_table() -> Vec<Vec<LieComb>> {
    let mut t = vec![vec![Vec::new(); 8]; 8];
    for u in Generator::ALL {
        for v in Generator::ALL {
            t[u.index()][v.index()] = if u <= v {
                rule(u, v)
            } else {
                let sign = if u.is_odd() && v.is_odd() { 1 } else { -1 };
                scale(rule(v, u), sign)
            };
        }
    }
    t
}

fn table() -> &'static [Vec<LieComb>] {
    static TABLE: OnceLock<Vec<Vec<LieComb>>> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

/// The superbracket of two generators.
pub fn bracket(u: Generator, v: Generator) -> &'static [(Generator, i64)] {
    &table()[u.index()][v.index()]
}

pub fn root(g: Generator) -> Weight {
    g.root()
}

/// Weight aε + bδ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Even,
    /// `(2n+1)ε + (2k−n)δ`
    OddZero,
    /// `(2n+1)ε + (2k−n−1)δ`, the parity-shifted copy.
    OddOne,
}

impl Weight {
    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    pub fn dual(self) -> Self {
        Weight::new(-self.a - 2, self.b)
    }

    pub fn shift(self, da: i64, db: i64) -> Self {
        Weight::new(self.a + da, self.b + db)
    }

    pub fn block(self) -> Block {
        if self.a.rem_euclid(2) == 0 {
            return Block::Even;
        }
        let n = (self.a - 1).div_euclid(2);
        if (self.b + n).rem_euclid(2) == 0 {
            Block::OddZero
        } else {
            Block::OddOne
        }
    }

    /// Odd ε-coefficient: one of the two isomorphic odd blocks.
    pub fn is_odd_type(self) -> bool {
        self.a.rem_euclid(2) == 1
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.a + o.a, self.b + o.b)
    }
}

impl std::ops::Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight::new(self.a - o.a, self.b - o.b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("expected a weight \"a,b\", got {s:?}"));
        let (a, b) = s.trim().split_once(',').ok_or_else(bad)?;
        Ok(Weight::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
    }
}

pub fn dual(w: Weight) -> Weight {
    w.dual()
}

/// Membership in the block `{(2n+1)ε + (2k−n)δ}`.
pub fn in_odd_block(w: Weight) -> bool {
    w.block() == Block::OddZero
}

/// A word in U(pe(2)), written left to right; the rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn pow(g: Generator, n: usize) -> Self {
        Word(vec![g; n])
    }

    pub fn then_left(mut self, g: Generator, n: usize) -> Self {
        let mut w = vec![g; n];
        w.append(&mut self.0);
        Word(w)
    }

    pub fn weight(&self) -> Weight {
        self.0.iter().fold(Weight::new(0, 0), |w, g| w + g.root())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let g = self.0[i];
            let mut n = 1;
            while i + n < self.0.len() && self.0[i + n] == g {
                n += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if n == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{n}")?;
            }
            i += n;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    /// Space-separated letters with optional exponents, e.g. `y^2 x_minus`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::new());
        }
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (g, n) = match tok.split_once('^') {
                Some((g, n)) => {
                    (g, n.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?)
                }
                None => (tok, 1),
            };
            let g: Generator = g.parse()?;
            out.extend(std::iter::repeat(g).take(n));
        }
        Ok(Word(out))
    }
}

fn bracket_comb(u: &[(Generator, i64)], v: &[(Generator, i64)]) -> std::collections::BTreeMap<Generator, i64> {
    let mut out = std::collections::BTreeMap::new();
    for &(x, c) in u {
        for &(y, d) in v {
            for &(z, e) in bracket(x, y) {
                *out.entry(z).or_insert(0) += c * d * e;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// [x,[y,z]] − [[x,y],z] − (−1)^{|x||y|} [y,[x,z]]; empty when the super
/// Jacobi identity holds for the triple.
pub fn jacobi_defect(x: Generator, y: Generator, z: Generator) -> LieComb {
    let one = |g: Generator| [(g, 1i64)];
    let lhs = bracket_comb(&one(x), bracket(y, z));
    let xy: LieComb = bracket(x, y).to_vec();
    let a = bracket_comb(&xy, &one(z));
    let b = bracket_comb(&one(y), bracket(x, z));
    let sign = if x.is_odd() && y.is_odd() { -1 } else { 1 };
    let mut out = lhs;
    for (g, c) in a {
        *out.entry(g).or_insert(0) -= c;
    }
    for (g, c) in b {
        *out.entry(g).or_insert(0) -= sign * c;
    }
    out.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Triples on which super Jacobi fails (none for a valid table).
pub fn jacobi_failures() -> Vec<(Generator, Generator, Generator)> {
    let mut bad = Vec::new();
    for x in Generator::ALL {
        for y in Generator::ALL {
            for z in Generator::ALL {
                if !jacobi_defect(x, y, z).is_empty() {
                    bad.push((x, y, z));
                }
            }
        }
    }
    bad
}
