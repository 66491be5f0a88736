//! Quivers with relations: the block's quiver on a finite window, its
//! quadratic relations, and a declarative JSON form for both.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{fmt_rational, int, parse_rational, rat, Rational};
use crate::pe2core::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArrowKind {
    #[serde(rename = "f")]
    F,
    #[serde(rename = "g")]
    G,
    #[serde(rename = "p")]
    P,
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "f'")]
    FPrime,
    #[serde(rename = "g'")]
    GPrime,
}

impl ArrowKind {
    pub const ALL: [ArrowKind; 6] =
        [ArrowKind::F, ArrowKind::G, ArrowKind::P, ArrowKind::Q, ArrowKind::FPrime, ArrowKind::GPrime];

    pub fn label(self) -> &'static str {
        match self {
            ArrowKind::F => "f",
            ArrowKind::G => "g",
            ArrowKind::P => "p",
            ArrowKind::Q => "q",
            ArrowKind::FPrime => "f'",
            ArrowKind::GPrime => "g'",
        }
    }

    pub fn from_label(s: &str) -> Option<ArrowKind> {
        ArrowKind::ALL.into_iter().find(|k| k.label() == s)
    }

    /// Where the arrow of this kind leaving `v` ends, if the block has one.
    pub fn target_from(self, v: Weight) -> Option<Weight> {
        if !v.is_odd_type() {
            return None;
        }
        let a = v.a;
        match self {
            ArrowKind::F if a >= 1 => Some(v.shift(2, 1)),
            ArrowKind::G if a >= 3 => Some(v.shift(-2, 1)),
            ArrowKind::P if a >= 1 => Some(v.dual()),
            ArrowKind::Q if a <= -3 => Some(v.dual()),
            ArrowKind::FPrime if a <= -1 => Some(v.shift(-2, 1)),
            ArrowKind::GPrime if a <= -3 => Some(v.shift(2, 1)),
            _ => None,
        }
    }
}

impl fmt::Display for ArrowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Written order: the leftmost arrow is applied last, so `[G, F]` is gf.
pub type KindWord = Vec<ArrowKind>;

pub fn word_label(w: &[ArrowKind]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter().map(|k| k.label()).collect()
}

/// Follow a written word from `source`; None if some arrow is missing.
pub fn walk(source: Weight, word: &[ArrowKind]) -> Option<Weight> {
    word.iter().rev().try_fold(source, |v, k| k.target_from(v))
}

/// A relation of one local picture, with evaluated coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRelation {
    pub id: String,
    pub source: Weight,
    pub terms: Vec<(Rational, KindWord)>,
}

impl LocalRelation {
    pub fn expression(&self) -> String {
        let mut s = String::new();
        for (i, (c, w)) in self.terms.iter().enumerate() {
            let cs = fmt_rational(c);
            if i > 0 {
                s.push_str(" + ");
            }
            if cs != "1" {
                s.push_str(&format!("({cs})"));
            }
            s.push_str(&word_label(w));
        }
        s
    }
}

type Coef = fn(i64) -> Rational;

struct Rule {
    id: &'static str,
    at_dual: bool,
    terms: &'static [(Coef, &'static [ArrowKind])],
}

use ArrowKind::{FPrime as Fp, GPrime as Gp, F, G, P, Q};

fn one(_: i64) -> Rational {
    int(1)
}
fn c_fg(a: i64) -> Rational {
    rat(a - 1, a + 3)
}
fn c_fg_sq(a: i64) -> Rational {
    let c = rat(a - 1, a + 3);
    &c * &c
}
fn neg_a_plus_1(a: i64) -> Rational {
    int(-(a + 1))
}
fn neg_a_plus_3(a: i64) -> Rational {
    int(-(a + 3))
}
fn neg_a_minus_1(a: i64) -> Rational {
    int(-(a - 1))
}
fn minus_2(_: i64) -> Rational {
    int(-2)
}
fn minus_4(_: i64) -> Rational {
    int(-4)
}
fn minus_sixteenth(_: i64) -> Rational {
    rat(-1, 16)
}

const GENERIC: &[Rule] = &[
    Rule { id: "ff", at_dual: false, terms: &[(one, &[F, F])] },
    Rule { id: "gg", at_dual: false, terms: &[(one, &[G, G])] },
    Rule { id: "qp", at_dual: false, terms: &[(one, &[Q, P])] },
    Rule { id: "fg", at_dual: false, terms: &[(one, &[F, G]), (c_fg, &[G, F])] },
    Rule { id: "f'p", at_dual: false, terms: &[(one, &[Fp, P]), (neg_a_plus_1, &[P, F])] },
    Rule { id: "g'p", at_dual: false, terms: &[(one, &[Gp, P]), (neg_a_plus_1, &[P, G])] },
    Rule { id: "f'f'", at_dual: true, terms: &[(one, &[Fp, Fp])] },
    Rule { id: "g'g'", at_dual: true, terms: &[(one, &[Gp, Gp])] },
    Rule { id: "f'g'", at_dual: true, terms: &[(one, &[Fp, Gp]), (c_fg_sq, &[Gp, Fp])] },
    Rule { id: "qf'", at_dual: true, terms: &[(one, &[Q, Fp]), (neg_a_plus_3, &[F, Q])] },
    Rule { id: "qg'", at_dual: true, terms: &[(one, &[Q, Gp]), (neg_a_minus_1, &[G, Q])] },
];

const AT_ONE: &[Rule] = &[
    Rule { id: "ff", at_dual: false, terms: &[(one, &[F, F])] },
    Rule { id: "qp", at_dual: false, terms: &[(one, &[Q, P])] },
    Rule { id: "f'p", at_dual: false, terms: &[(one, &[Fp, P]), (minus_2, &[P, F])] },
    Rule { id: "f'f'", at_dual: true, terms: &[(one, &[Fp, Fp])] },
    Rule { id: "f'g'", at_dual: true, terms: &[(one, &[Fp, Gp]), (minus_sixteenth, &[Gp, Fp])] },
    Rule { id: "qf'", at_dual: true, terms: &[(one, &[Q, Fp]), (minus_4, &[F, Q])] },
];

const AT_MINUS_ONE: &[Rule] = &[
    Rule { id: "f'f'", at_dual: false, terms: &[(one, &[Fp, Fp])] },
    Rule { id: "g'f'", at_dual: false, terms: &[(one, &[Gp, Fp])] },
];

/// The quadratic relations of the local picture centred at `center`
/// (a ≥ 1 odd, or a = −1). Relations at the dual vertex are included.
pub fn local_relations(center: Weight) -> Vec<LocalRelation> {
    let a = center.a;
    let rules = match a {
        -1 => AT_MINUS_ONE,
        1 => AT_ONE,
        a if a >= 3 && a % 2 == 1 => GENERIC,
        _ => return vec![],
    };
    rules
        .iter()
        .map(|r| LocalRelation {
            id: r.id.to_string(),
            source: if r.at_dual { center.dual() } else { center },
            terms: r.terms.iter().map(|(c, w)| (c(a), w.to_vec())).collect(),
        })
        .collect()
}

/// Whether `v` is the centre of a local picture (a ≥ 1 or a = −1).
pub fn is_center(v: Weight) -> bool {
    v.is_odd_type() && (v.a >= 1 || v.a == -1)
}

/// Words preferred as normal-form representatives, in written order.
pub fn pe2_preferred_words() -> Vec<KindWord> {
    vec![
        vec![G, F],
        vec![Gp, P],
        vec![Fp, P],
        vec![P, Q],
        vec![Gp, Fp],
        vec![Q, Fp],
        vec![Q, Gp],
        vec![Gp, Fp, P],
        vec![G, F, Q],
        vec![P, Q, Fp],
        vec![Gp, P, Q],
        vec![Gp, P, Q, Fp],
    ]
}

/// Rectangle of weights; vertices are the odd-a weights inside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub a_min: i64,
    pub a_max: i64,
    pub b_min: i64,
    pub b_max: i64,
}

impl Window {
    pub fn new(a_min: i64, a_max: i64, b_min: i64, b_max: i64) -> Result<Window> {
        if a_min > a_max || b_min > b_max {
            return Err(Error::Presentation(format!(
                "empty window a∈[{a_min},{a_max}], b∈[{b_min},{b_max}]"
            )));
        }
        Ok(Window { a_min, a_max, b_min, b_max })
    }

    pub fn symmetric(a_abs: i64, b_min: i64, b_max: i64) -> Window {
        Window { a_min: -a_abs, a_max: a_abs, b_min, b_max }
    }

    pub fn contains(&self, w: Weight) -> bool {
        (self.a_min..=self.a_max).contains(&w.a) && (self.b_min..=self.b_max).contains(&w.b)
    }

    pub fn vertices(&self) -> Vec<Weight> {
        let mut v = Vec::new();
        for b in self.b_min..=self.b_max {
            for a in self.a_min..=self.a_max {
                let w = Weight::new(a, b);
                if w.is_odd_type() {
                    v.push(w);
                }
            }
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: Weight,
    pub target: Weight,
}

/// A path as arrow ids in written order (the last id is applied first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub source: Weight,
    pub target: Weight,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn idempotent(v: Weight) -> Path {
        Path { source: v, target: v, arrows: vec![] }
    }

    pub fn len(&self) -> u32 {
        self.arrows.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub id: String,
    pub source: Weight,
    pub target: Weight,
    pub terms: Vec<(Rational, Vec<usize>)>,
}

impl Relation {
    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |t| t.1.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    vertices: BTreeSet<Weight>,
    arrows: Vec<Arrow>,
    out_arrows: BTreeMap<Weight, Vec<usize>>,
    in_arrows: BTreeMap<Weight, Vec<usize>>,
    pub relations: Vec<Relation>,
    /// Words (as label sequences) to keep as normal-form representatives.
    pub preferred: Vec<Vec<String>>,
}

impl Presentation {
    pub fn new(
        vertices: impl IntoIterator<Item = Weight>,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
        preferred: Vec<Vec<String>>,
    ) -> Result<Presentation> {
        let vertices: BTreeSet<Weight> = vertices.into_iter().collect();
        let mut out_arrows: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        let mut in_arrows: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if !vertices.contains(&a.source) || !vertices.contains(&a.target) {
                return Err(Error::Presentation(format!(
                    "arrow {} {}→{} leaves the vertex set",
                    a.label, a.source, a.target
                )));
            }
            out_arrows.entry(a.source).or_default().push(i);
            in_arrows.entry(a.target).or_default().push(i);
        }
        let p = Presentation { vertices, arrows, out_arrows, in_arrows, relations, preferred };
        for r in &p.relations {
            p.check_relation(r)?;
        }
        Ok(p)
    }

    fn check_relation(&self, r: &Relation) -> Result<()> {
        let bad = |m: String| Err(Error::Presentation(format!("relation {}: {m}", r.id)));
        if r.terms.is_empty() {
            return bad("no terms".into());
        }
        let len = r.terms[0].1.len();
        for (c, w) in &r.terms {
            if c.is_zero() {
                return bad("zero coefficient".into());
            }
            if w.len() != len || w.is_empty() {
                return bad("terms must be nonempty paths of one length".into());
            }
            match self.path_from_ids(w) {
                Some(p) if p.source == r.source && p.target == r.target => {}
                Some(p) => return bad(format!("term runs {}→{}", p.source, p.target)),
                None => return bad("term is not a path".into()),
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Weight> {
        self.vertices.iter()
    }

    pub fn has_vertex(&self, v: Weight) -> bool {
        self.vertices.contains(&v)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> &Arrow {
        &self.arrows[id]
    }

    pub fn out_arrows(&self, v: Weight) -> &[usize] {
        self.out_arrows.get(&v).map_or(&[], |x| x.as_slice())
    }

    pub fn in_arrows(&self, v: Weight) -> &[usize] {
        self.in_arrows.get(&v).map_or(&[], |x| x.as_slice())
    }

    pub fn arrow_by_label(&self, source: Weight, label: &str) -> Option<usize> {
        self.out_arrows(source).iter().copied().find(|&i| self.arrows[i].label == label)
    }

    /// Path from written-order ids, checking composability.
    pub fn path_from_ids(&self, ids: &[usize]) -> Option<Path> {
        let first = *ids.last()?;
        let source = self.arrows.get(first)?.source;
        let mut v = source;
        for &i in ids.iter().rev() {
            let a = self.arrows.get(i)?;
            if a.source != v {
                return None;
            }
            v = a.target;
        }
        Some(Path { source, target: v, arrows: ids.to_vec() })
    }

    /// Path following written-order labels from `source`.
    pub fn path_from_labels(&self, source: Weight, labels: &[&str]) -> Option<Path> {
        let mut v = source;
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels.iter().rev() {
            let i = self.arrow_by_label(v, l)?;
            ids.push(i);
            v = self.arrows[i].target;
        }
        ids.reverse();
        Some(Path { source, target: v, arrows: ids })
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return "e".into();
        }
        p.arrows.iter().map(|&i| self.arrows[i].label.as_str()).collect()
    }

    pub fn labels(&self, p: &Path) -> Vec<String> {
        p.arrows.iter().map(|&i| self.arrows[i].label.clone()).collect()
    }

    pub fn is_preferred(&self, p: &Path) -> bool {
        let l = self.labels(p);
        self.preferred.iter().any(|w| *w == l)
    }

    /// Copy with the named relations removed (all occurrences of each id).
    pub fn without_relation(&self, id: &str) -> Presentation {
        let mut p = self.clone();
        p.relations.retain(|r| r.id != id);
        p
    }

    pub fn to_doc(&self) -> PresentationDoc {
        PresentationDoc {
            schema: PRESENTATION_SCHEMA.into(),
            vertices: self.vertices.iter().copied().collect(),
            arrows: self
                .arrows
                .iter()
                .enumerate()
                .map(|(id, a)| ArrowDoc { id, label: a.label.clone(), source: a.source, target: a.target })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationDoc {
                    id: r.id.clone(),
                    source: r.source,
                    target: r.target,
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, w)| TermDoc { coeff: fmt_rational(c), path: w.clone() })
                        .collect(),
                })
                .collect(),
            preferred_words: self.preferred.clone(),
        }
    }

    pub fn from_doc(doc: &PresentationDoc) -> Result<Presentation> {
        if doc.schema != PRESENTATION_SCHEMA {
            return Err(Error::Presentation(format!("unsupported schema {:?}", doc.schema)));
        }
        let mut arrows = Vec::with_capacity(doc.arrows.len());
        for (i, a) in doc.arrows.iter().enumerate() {
            if a.id != i {
                return Err(Error::Presentation("arrow ids must be 0,1,2,… in order".into()));
            }
            arrows.push(Arrow { label: a.label.clone(), source: a.source, target: a.target });
        }
        let mut relations = Vec::new();
        for r in &doc.relations {
            let mut terms = Vec::new();
            for t in &r.terms {
                let c = parse_rational(&t.coeff)
                    .ok_or_else(|| Error::Presentation(format!("bad coefficient {:?}", t.coeff)))?;
                terms.push((c, t.path.clone()));
            }
            relations.push(Relation { id: r.id.clone(), source: r.source, target: r.target, terms });
        }
        Presentation::new(doc.vertices.iter().copied(), arrows, relations, doc.preferred_words.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Presentation> {
        let doc: PresentationDoc =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("presentation JSON: {e}")))?;
        Presentation::from_doc(&doc)
    }
}

pub const PRESENTATION_SCHEMA: &str = "pe2odd.presentation/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub id: usize,
    pub label: String,
    pub source: Weight,
    pub target: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    /// Arrow ids in written order.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub id: String,
    pub source: Weight,
    pub target: Weight,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub schema: String,
    pub vertices: Vec<Weight>,
    pub arrows: Vec<ArrowDoc>,
    pub relations: Vec<RelationDoc>,
    #[serde(default)]
    pub preferred_words: Vec<Vec<String>>,
}

/// The block's quiver restricted to `window`, with every local relation
/// whose paths lie inside it.
pub fn pe2_presentation(window: Window) -> Presentation {
    let vertices = window.vertices();
    let mut arrows = Vec::new();
    for &v in &vertices {
        for k in ArrowKind::ALL {
            if let Some(t) = k.target_from(v) {
                if window.contains(t) {
                    arrows.push(Arrow { label: k.label().into(), source: v, target: t });
                }
            }
        }
    }
    let preferred =
        pe2_preferred_words().iter().map(|w| w.iter().map(|k| k.label().to_string()).collect()).collect();
    let mut p = Presentation::new(vertices.iter().copied(), arrows, vec![], preferred)
        .expect("window quiver is well formed");
    let mut relations = Vec::new();
    for &c in vertices.iter().filter(|&&v| is_center(v)) {
        'rel: for lr in local_relations(c) {
            let mut terms = Vec::new();
            for (coef, w) in &lr.terms {
                let labels: Vec<&str> = w.iter().map(|k| k.label()).collect();
                match p.path_from_labels(lr.source, &labels) {
                    Some(path) if p.has_vertex(lr.source) => terms.push((coef.clone(), path)),
                    _ => continue 'rel,
                }
            }
            let target = terms[0].1.target;
            relations.push(Relation {
                id: lr.id.clone(),
                source: lr.source,
                target,
                terms: terms.into_iter().map(|(c, p)| (c, p.arrows)).collect(),
            });
        }
    }
    p.relations = relations;
    p
}

/// Vertices whose full set of incoming and outgoing arrows lies in the window.
pub fn is_interior(window: &Window, v: Weight) -> bool {
    if !window.contains(v) {
        return false;
    }
    let outs = ArrowKind::ALL.iter().filter_map(|k| k.target_from(v));
    let ins = ArrowKind::ALL.iter().filter_map(|k| incoming_source(*k, v));
    outs.chain(ins).all(|w| window.contains(w))
}

/// Source of the arrow of kind `k` ending at `v`, if any.
pub fn incoming_source(k: ArrowKind, v: Weight) -> Option<Weight> {
    let candidates = match k {
        ArrowKind::F => vec![v.shift(-2, -1)],
        ArrowKind::G => vec![v.shift(2, -1)],
        ArrowKind::P | ArrowKind::Q => vec![v.dual()],
        ArrowKind::FPrime => vec![v.shift(2, -1)],
        ArrowKind::GPrime => vec![v.shift(-2, -1)],
    };
    candidates.into_iter().find(|&s| k.target_from(s) == Some(v))
}
