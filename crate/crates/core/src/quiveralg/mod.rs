//! The block's endomorphism algebra as a quiver with relations, built
//! without reference to the Lie superalgebra, plus the comparison with the
//! Lie-side morphisms.

pub mod algebra;
pub mod presentation;
pub mod rewrite;

pub use algebra::*;
pub use presentation::*;
pub use rewrite::*;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{int, Rational};
use crate::homalg::{self, Gauge, Morphism};
use crate::pe2core::Weight;

/// Top path-length degree of the algebra.
pub const TOP_DEGREE: u32 = 4;

/// The block algebra on a window, truncated just above its top degree.
pub fn pe2_algebra(window: Window) -> PathAlgebra {
    PathAlgebra::new(pe2_presentation(window), TOP_DEGREE + 1)
}

/// Whether every vertex within `radius` arrow steps of `v` (forward only)
/// has all of its outgoing arrows inside the window, so that paths and
/// relations starting near `v` are complete.
pub fn forward_complete(window: &Window, v: Weight, radius: u32) -> bool {
    let mut frontier = vec![v];
    let mut seen = std::collections::BTreeSet::from([v]);
    for _ in 0..=radius {
        let mut next = Vec::new();
        for &u in &frontier {
            if !window.contains(u) {
                return false;
            }
            for k in ArrowKind::ALL {
                if let Some(t) = k.target_from(u) {
                    if !window.contains(t) {
                        return false;
                    }
                    if seen.insert(t) {
                        next.push(t);
                    }
                }
            }
        }
        frontier = next;
    }
    true
}

/// The arrow kinds of a path, in written order.
pub fn path_kinds(p: &Presentation, path: &Path) -> Result<Vec<ArrowKind>> {
    path.arrows
        .iter()
        .map(|&a| {
            let l = &p.arrow(a).label;
            ArrowKind::from_label(l).ok_or_else(|| Error::Presentation(format!("unknown arrow label {l}")))
        })
        .collect()
}

/// All words w of length ≤ `max_len` starting at `v`, as arrow-id lists.
pub fn words_from(alg: &PathAlgebra, v: Weight, max_len: u32) -> Vec<Vec<usize>> {
    (0..=max_len).flat_map(|d| alg.paths_from(v, d).into_iter().map(|p| p.arrows)).collect()
}

/// Words from `v` (length ≤ `max_len`) whose reduction depends on the
/// strategy, or whose rewriting normal form differs from the word in the
/// linear-algebra quotient.
pub fn confluence_failures(alg: &PathAlgebra, rs: &RewriteSystem, v: Weight, max_len: u32) -> Vec<Vec<usize>> {
    let mut bad = Vec::new();
    for w in words_from(alg, v, max_len) {
        if !rs.locally_confluent_at(&w) {
            bad.push(w);
            continue;
        }
        let reduced = alg.reduce_path(v, &w);
        let mut via_nf = AlgebraElement::zero(reduced.source, reduced.target);
        for (x, c) in rs.normal_form(&w, Strategy::Leftmost) {
            via_nf.add_scaled(&alg.reduce_path(v, &x), &c);
        }
        if via_nf != reduced {
            bad.push(w);
        }
    }
    bad
}

/// Number of irreducible words of each length from `v`, per target; must
/// match the graded dimensions of the quotient.
pub fn irreducible_census(alg: &PathAlgebra, rs: &RewriteSystem, v: Weight, max_len: u32) -> std::collections::BTreeMap<(Weight, u32), usize> {
    let mut out = std::collections::BTreeMap::new();
    for d in 0..=max_len {
        for p in alg.paths_from(v, d) {
            if rs.is_irreducible(&p.arrows) {
                *out.entry((p.target, d)).or_insert(0) += 1;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomComparison {
    pub source: Weight,
    pub target: Weight,
    /// Quiver-side dimensions by degree 0..=4.
    pub graded: Vec<usize>,
    pub lie_dim: usize,
    /// Whether the Lie images of the normal basis paths are independent.
    pub images_independent: bool,
    /// Whether every path's Lie image equals the image of its normal form.
    pub structure_constants_agree: bool,
}

impl HomComparison {
    pub fn total(&self) -> usize {
        self.graded.iter().sum()
    }

    pub fn agrees(&self) -> bool {
        self.total() == self.lie_dim && self.images_independent && self.structure_constants_agree
    }
}

/// The Lie-side morphism of a quiver path.
pub fn path_morphism(p: &Presentation, path: &Path) -> Result<Morphism> {
    if path.is_empty() {
        return Morphism::identity(path.source);
    }
    homalg::word_morphism(path.source, &path_kinds(p, path)?, &Gauge::QUADRATIC)
}

/// Compare e_λ A e_μ with Hom(P(μ), P(λ)) for every λ reachable from `mu`.
/// With `full`, also checks that path images match their normal forms.
pub fn compare_at(alg: &PathAlgebra, mu: Weight, full: bool) -> Result<Vec<HomComparison>> {
    let pres = alg.presentation();
    let mut targets = std::collections::BTreeSet::new();
    for d in 0..=TOP_DEGREE {
        targets.extend(alg.targets(mu, d));
    }
    // Lie-side targets the quiver might miss.
    for lambda in homalg::candidate_weights(mu.shift(0, 3)) {
        if lambda.b >= mu.b && pres.has_vertex(lambda) && homalg::multiplicity_closed_form(lambda, mu) > 0 {
            targets.insert(lambda);
        }
    }
    let mut out = Vec::new();
    for lambda in targets {
        let graded: Vec<usize> = (0..=TOP_DEGREE).map(|d| alg.graded_dim(mu, lambda, d)).collect();
        let lie_dim = homalg::target_vectors(lambda, mu)?.len();
        let mut images_independent = true;
        let mut structure_constants_agree = true;
        if full {
            let mut images = Vec::new();
            for d in 0..=TOP_DEGREE {
                for b in alg.basis(mu, lambda, d) {
                    images.push(path_morphism(pres, &b)?);
                }
            }
            images_independent = homalg::independent(&images);
            for d in 0..=TOP_DEGREE {
                let basis = alg.basis(mu, lambda, d);
                for path in alg.paths_from(mu, d).into_iter().filter(|p| p.target == lambda) {
                    let img = path_morphism(pres, &path)?;
                    let nf = alg.element_from_path(&path);
                    let mut terms: Vec<(Rational, Morphism)> = vec![(int(1), img)];
                    for b in &basis {
                        if let Some(c) = nf.terms.get(&b.arrows) {
                            terms.push((-c.clone(), path_morphism(pres, b)?));
                        }
                    }
                    let refs: Vec<(Rational, &Morphism)> = terms.iter().map(|(c, m)| (c.clone(), m)).collect();
                    if !Morphism::lin(&refs)?.is_zero() {
                        structure_constants_agree = false;
                    }
                }
            }
        }
        out.push(HomComparison { source: mu, target: lambda, graded, lie_dim, images_independent, structure_constants_agree });
    }
    Ok(out)
}

/// `compare_at` over many sources in parallel, sorted by (source, target).
pub fn consistency_vs_homalg(alg: &PathAlgebra, sources: &[Weight], full: bool) -> Result<Vec<HomComparison>> {
    let parts: Vec<Result<Vec<HomComparison>>> = sources.par_iter().map(|&mu| compare_at(alg, mu, full)).collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    out.sort_by_key(|c| (c.source, c.target));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> Weight {
        Weight::new(a, b)
    }

    fn alg() -> PathAlgebra {
        pe2_algebra(Window::new(-19, 19, -1, 5).unwrap())
    }

    fn elem(alg: &PathAlgebra, s: Weight, labels: &[&str]) -> AlgebraElement {
        let p = alg.presentation().path_from_labels(s, labels).unwrap();
        alg.element_from_path(&p)
    }

    #[test]
    fn multiply_examples() {
        let alg = alg();
        let pres = alg.presentation();
        let mu = w(5, 0);
        // At the a = 5 picture fg = −(1/2)·gf.
        let g = elem(&alg, mu, &["g"]);
        let f = elem(&alg, w(3, 1), &["f"]);
        let fg = alg.multiply(&f, &g);
        let gf = pres.path_from_labels(mu, &["g", "f"]).unwrap();
        assert_eq!(fg.terms.len(), 1);
        assert_eq!(fg.terms.get(&gf.arrows), Some(&crate::exactla::rat(-1, 2)));
        let p_ = elem(&alg, mu, &["p"]);
        let q = elem(&alg, mu.dual(), &["q"]);
        assert!(alg.multiply(&q, &p_).is_zero());
        let top = elem(&alg, w(-7, 0), &["g'", "p", "q", "f'"]);
        assert_eq!(top.terms.len(), 1);
        assert_eq!(top.terms.values().next(), Some(&int(1)));
        let e = AlgebraElement::idempotent(w(-7, 0));
        assert_eq!(alg.multiply(&AlgebraElement::idempotent(top.target), &top), top);
        assert_eq!(alg.multiply(&top, &e), top);
    }

    #[test]
    fn graded_dims() {
        let alg = alg();
        assert_eq!(alg.graded_dim(w(5, 0), w(5, 2), 2), 1);
        assert_eq!(alg.graded_dim(w(-7, 0), w(-7, 2), 4), 1);
        for t in [w(5, 2), w(-7, 2), w(7, 1)] {
            assert_eq!(alg.graded_dim(w(5, 0), t, 5), 0);
        }
        let to_dual: Vec<usize> = (0..=4).map(|d| alg.graded_dim(w(5, 0), w(-7, 0), d)).collect();
        assert_eq!(to_dual, [0, 1, 0, 0, 0]);
        let dual_end: Vec<usize> = (0..=4).map(|d| alg.graded_dim(w(-7, 0), w(-7, 0), d)).collect();
        assert_eq!(dual_end, [1, 0, 1, 0, 0]);
    }

    #[test]
    fn minus_one_basis() {
        let alg = alg();
        let pres = alg.presentation();
        let mut labels = Vec::new();
        for d in 0..=5 {
            for t in alg.targets(w(-1, 0), d) {
                for b in alg.basis(w(-1, 0), t, d) {
                    labels.push(pres.path_label(&b));
                }
            }
        }
        labels.sort();
        assert_eq!(labels, ["e", "f'", "g'pqf'", "pqf'", "qf'"]);
    }

    #[test]
    fn rewriting_agrees_with_quotient() {
        let alg = alg();
        let rs = RewriteSystem::from_presentation(alg.presentation(), 5).unwrap();
        for a in [-7, -5, -3, -1, 1, 3, 5, 7] {
            let bad = confluence_failures(&alg, &rs, w(a, 0), 4);
            assert!(bad.is_empty(), "a={a}: {bad:?}");
            for ((t, d), n) in irreducible_census(&alg, &rs, w(a, 0), 5) {
                assert_eq!(n, alg.graded_dim(w(a, 0), t, d), "a={a} → {t} in degree {d}");
            }
        }
    }

    #[test]
    fn lie_side_agrees() {
        let alg = alg();
        for a in [-7, -5, -3, -1, 1, 3, 5] {
            for c in compare_at(&alg, w(a, 0), true).unwrap() {
                assert!(c.agrees(), "{c:?}");
            }
        }
    }

    #[test]
    fn forward_completeness() {
        let win = Window::new(-9, 9, 0, 3).unwrap();
        assert!(forward_complete(&win, w(1, 0), 1));
        assert!(!forward_complete(&win, w(7, 0), 1));
        assert!(!forward_complete(&win, w(1, 0), 3));
    }
}
