//! The quotient CQ/I computed degree by degree with exact linear algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::exactla::{fmt_rational, rref, Rational, SparseMatrix};
use crate::pe2core::Weight;

use super::presentation::{Path, Presentation};

/// The normal basis of e_t A_d e_s and the reduction of every path onto it.
#[derive(Debug)]
pub struct HomPiece {
    pub basis: Vec<Path>,
    reductions: HashMap<Vec<usize>, Vec<(usize, Rational)>>,
}

impl HomPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a path in the normal basis.
    pub fn reduce(&self, arrows: &[usize]) -> &[(usize, Rational)] {
        self.reductions.get(arrows).map_or(&[], |v| v.as_slice())
    }
}

type Piece = BTreeMap<Weight, HomPiece>;

/// A graded quotient of a path algebra. Paths longer than `truncation` are
/// treated as zero, which is exact once the truncation exceeds the top degree.
pub struct PathAlgebra {
    pres: Presentation,
    truncation: u32,
    relations_at: HashMap<Weight, Vec<usize>>,
    cache: Mutex<HashMap<(Weight, u32), Arc<Piece>>>,
}

impl fmt::Debug for PathAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PathAlgebra").field("truncation", &self.truncation).finish_non_exhaustive()
    }
}

/// An element of e_t A e_s: coefficients on normal basis paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub source: Weight,
    pub target: Weight,
    pub terms: BTreeMap<Vec<usize>, Rational>,
}

impl AlgebraElement {
    pub fn zero(source: Weight, target: Weight) -> Self {
        AlgebraElement { source, target, terms: BTreeMap::new() }
    }

    pub fn idempotent(v: Weight) -> Self {
        let mut e = Self::zero(v, v);
        e.terms.insert(vec![], Rational::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, path: Vec<usize>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(path.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&path);
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Rational) {
        debug_assert!(other.is_zero() || (other.source, other.target) == (self.source, self.target));
        for (p, x) in &other.terms {
            self.add_term(p.clone(), &(x * c));
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut r = Self::zero(self.source, self.target);
        r.add_scaled(self, c);
        r
    }

    /// Path degrees occurring.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|p| p.len() as u32).collect();
        d.dedup();
        d
    }
}

impl PathAlgebra {
    pub fn new(pres: Presentation, truncation: u32) -> Self {
        let mut relations_at: HashMap<Weight, Vec<usize>> = HashMap::new();
        for (i, r) in pres.relations.iter().enumerate() {
            relations_at.entry(r.source).or_default().push(i);
        }
        PathAlgebra { pres, truncation, relations_at, cache: Mutex::new(HashMap::new()) }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// All paths of length `d` starting at `s`, in a fixed order.
    pub fn paths_from(&self, s: Weight, d: u32) -> Vec<Path> {
        let mut cur = vec![Path::idempotent(s)];
        for _ in 0..d {
            let mut next = Vec::new();
            for p in &cur {
                for &a in self.pres.out_arrows(p.target) {
                    let mut arrows = Vec::with_capacity(p.arrows.len() + 1);
                    arrows.push(a);
                    arrows.extend_from_slice(&p.arrows);
                    next.push(Path { source: s, target: self.pres.arrow(a).target, arrows });
                }
            }
            cur = next;
        }
        cur
    }

    fn piece(&self, s: Weight, d: u32) -> Arc<Piece> {
        if let Some(p) = self.cache.lock().unwrap().get(&(s, d)) {
            return p.clone();
        }
        let built = Arc::new(self.build_piece(s, d));
        self.cache.lock().unwrap().entry((s, d)).or_insert(built).clone()
    }

    fn build_piece(&self, s: Weight, d: u32) -> Piece {
        let mut by_target: BTreeMap<Weight, Vec<Path>> = BTreeMap::new();
        if d <= self.truncation && self.pres.has_vertex(s) {
            for p in self.paths_from(s, d) {
                by_target.entry(p.target).or_default().push(p);
            }
        }
        // Ideal spanning set x·r·y, grouped by target.
        let mut ideal: BTreeMap<Weight, Vec<Vec<(Rational, Vec<usize>)>>> = BTreeMap::new();
        if !by_target.is_empty() {
            for j in 0..d {
                for y in self.paths_from(s, j) {
                    for &ri in self.relations_at.get(&y.target).map_or(&[][..], |v| v.as_slice()) {
                        let r = &self.pres.relations[ri];
                        let l = r.degree() as u32;
                        if j + l > d {
                            continue;
                        }
                        for x in self.paths_from(r.target, d - l - j) {
                            let gen = r
                                .terms
                                .iter()
                                .map(|(c, w)| {
                                    let mut arrows = x.arrows.clone();
                                    arrows.extend_from_slice(w);
                                    arrows.extend_from_slice(&y.arrows);
                                    (c.clone(), arrows)
                                })
                                .collect();
                            ideal.entry(x.target).or_default().push(gen);
                        }
                    }
                }
            }
        }
        let mut out = Piece::new();
        for (t, mut paths) in by_target {
            // Preferred words last so that they end up as free columns.
            paths.sort_by_key(|p| (self.pres.is_preferred(p), self.pres.labels(p), p.arrows.clone()));
            let col: HashMap<&Vec<usize>, usize> =
                paths.iter().enumerate().map(|(i, p)| (&p.arrows, i)).collect();
            let gens = ideal.remove(&t).unwrap_or_default();
            let mut m = SparseMatrix::zeros(gens.len(), paths.len());
            for (i, g) in gens.iter().enumerate() {
                for (c, w) in g {
                    m.add_to(i, col[w], c);
                }
            }
            let (r, pivots) = rref(&m);
            let mut pivot_row = vec![None; paths.len()];
            for (i, &c) in pivots.iter().enumerate() {
                pivot_row[c] = Some(i);
            }
            let free: Vec<usize> = (0..paths.len()).filter(|&c| pivot_row[c].is_none()).collect();
            let free_pos: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let mut reductions = HashMap::new();
            for (c, p) in paths.iter().enumerate() {
                let red = match pivot_row[c] {
                    None => vec![(free_pos[&c], Rational::one())],
                    Some(i) => free
                        .iter()
                        .filter_map(|&f| {
                            let x = r.get(i, f);
                            (!x.is_zero()).then(|| (free_pos[&f], -x))
                        })
                        .collect(),
                };
                reductions.insert(p.arrows.clone(), red);
            }
            let basis = free.iter().map(|&c| paths[c].clone()).collect();
            out.insert(t, HomPiece { basis, reductions });
        }
        out
    }

    /// Normal basis of e_t A_d e_s.
    pub fn basis(&self, s: Weight, t: Weight, d: u32) -> Vec<Path> {
        self.piece(s, d).get(&t).map_or_else(Vec::new, |h| h.basis.clone())
    }

    pub fn graded_dim(&self, s: Weight, t: Weight, d: u32) -> usize {
        self.piece(s, d).get(&t).map_or(0, |h| h.dim())
    }

    /// Targets reachable from `s` by a nonzero element of degree `d`.
    pub fn targets(&self, s: Weight, d: u32) -> Vec<Weight> {
        self.piece(s, d).iter().filter(|(_, h)| h.dim() > 0).map(|(t, _)| *t).collect()
    }

    /// Run `f` with the piece for (s, t, d), if any.
    pub fn with_piece<R>(&self, s: Weight, t: Weight, d: u32, f: impl FnOnce(Option<&HomPiece>) -> R) -> R {
        let piece = self.piece(s, d);
        f(piece.get(&t))
    }

    /// Normal form of a single path (written-order arrow ids).
    pub fn reduce_path(&self, source: Weight, arrows: &[usize]) -> AlgebraElement {
        let target = match arrows.first() {
            Some(&a) => self.pres.arrow(a).target,
            None => source,
        };
        let mut out = AlgebraElement::zero(source, target);
        let d = arrows.len() as u32;
        if d > self.truncation {
            return out;
        }
        let piece = self.piece(source, d);
        if let Some(h) = piece.get(&target) {
            for (i, c) in h.reduce(arrows) {
                out.add_term(h.basis[*i].arrows.clone(), c);
            }
        }
        out
    }

    pub fn element_from_path(&self, p: &Path) -> AlgebraElement {
        self.reduce_path(p.source, &p.arrows)
    }

    /// x·y (y first). Zero unless the source of x is the target of y.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(y.source, x.target);
        if x.source != y.target {
            return out;
        }
        for (px, cx) in &x.terms {
            for (py, cy) in &y.terms {
                let mut w = px.clone();
                w.extend_from_slice(py);
                let r = self.reduce_path(y.source, &w);
                out.add_scaled(&r, &(cx * cy));
            }
        }
        out
    }

    /// Left multiplication by a single arrow.
    pub fn mul_arrow(&self, arrow: usize, y: &AlgebraElement) -> AlgebraElement {
        let a = self.pres.arrow(arrow);
        let mut out = AlgebraElement::zero(y.source, a.target);
        if a.source != y.target {
            return out;
        }
        for (py, cy) in &y.terms {
            let mut w = Vec::with_capacity(py.len() + 1);
            w.push(arrow);
            w.extend_from_slice(py);
            out.add_scaled(&self.reduce_path(y.source, &w), cy);
        }
        out
    }

    pub fn format(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = x
            .terms
            .iter()
            .map(|(p, c)| {
                let path = Path { source: x.source, target: x.target, arrows: p.clone() };
                format!("({})·{}", fmt_rational(c), self.pres.path_label(&path))
            })
            .collect();
        terms.join(" + ")
    }
}
