//! The relations as a completed rewriting system: an independent check of
//! the linear-algebra quotient.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::Rational;

use super::presentation::Presentation;

pub type Combination = BTreeMap<Vec<usize>, Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Letter ranks of the deg-lex order; unknown labels sort after these.
const LETTER_ORDER: [&str; 6] = ["q", "g'", "f'", "g", "f", "p"];

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    /// lhs word ↦ replacement (empty for monomial relations).
    rules: HashMap<Vec<usize>, Combination>,
    max_lhs: usize,
    /// Per-arrow rank in the letter order.
    rank: Vec<(usize, String)>,
    /// Longest word the completion looked at.
    horizon: usize,
}

impl RewriteSystem {
    /// Orients the relations by degree-lexicographic order with
    /// p > f > g > f′ > g′ > q and completes the result on all overlaps of
    /// length ≤ `horizon`.
    pub fn from_presentation(p: &Presentation, horizon: usize) -> Result<RewriteSystem> {
        let rank = p
            .arrows()
            .iter()
            .map(|a| {
                let r = LETTER_ORDER.iter().position(|l| *l == a.label).unwrap_or(LETTER_ORDER.len());
                (r, a.label.clone())
            })
            .collect();
        let mut rs = RewriteSystem { rules: HashMap::new(), max_lhs: 0, rank, horizon };
        for r in &p.relations {
            let mut c = Combination::new();
            for (x, w) in &r.terms {
                add(&mut c, w.clone(), x.clone());
            }
            if !rs.add_rule(c) {
                return Err(Error::Presentation(format!("relation {} is trivial", r.id)));
            }
        }
        rs.complete();
        Ok(rs)
    }

    fn key(&self, w: &[usize]) -> (usize, Vec<(usize, String)>) {
        (w.len(), w.iter().map(|&i| self.rank[i].clone()).collect())
    }

    /// Turn `c = 0` into a rule for its leading word, after reducing it by
    /// the existing rules. Returns false if it reduces to zero.
    fn add_rule(&mut self, c: Combination) -> bool {
        let mut c = self.reduce(&c, Strategy::Leftmost);
        let Some(lead) = c.keys().max_by_key(|w| self.key(w)).cloned() else {
            return false;
        };
        let lc = c.remove(&lead).expect("lead is present");
        let rhs = c.into_iter().map(|(w, x)| (w, -(x / &lc))).collect();
        self.max_lhs = self.max_lhs.max(lead.len());
        self.rules.insert(lead, rhs);
        true
    }

    /// Knuth-Bendix: whenever an overlap ab·c of rules for ab and bc (or a
    /// left side containing another) reduces two ways to different results,
    /// the difference becomes a new rule.
    fn complete(&mut self) {
        loop {
            let mut lhss: Vec<Vec<usize>> = self.rules.keys().cloned().collect();
            lhss.sort();
            let mut by_first: HashMap<usize, Vec<&Vec<usize>>> = HashMap::new();
            for l in &lhss {
                by_first.entry(l[0]).or_default().push(l);
            }
            let mut pending = Vec::new();
            for l1 in &lhss {
                // Rules whose left side contains another left side.
                for at in self.redexes(l1) {
                    if at.1 < l1.len() {
                        let mut a = self.step(l1, (0, l1.len()));
                        for (x, c) in self.step(l1, at) {
                            add(&mut a, x, -c);
                        }
                        pending.push(a);
                    }
                }
                for k in 1..l1.len() {
                    let tail = &l1[l1.len() - k..];
                    for l2 in by_first.get(&tail[0]).into_iter().flatten() {
                        if l2.len() <= k || &l2[..k] != tail {
                            continue;
                        }
                        let mut w = l1.clone();
                        w.extend_from_slice(&l2[k..]);
                        if w.len() > self.horizon {
                            continue;
                        }
                        let mut a = Combination::new();
                        for (x, c) in self.step(&w, (0, l1.len())) {
                            add(&mut a, x, c);
                        }
                        let b = self.step(&w, (l1.len() - k, l2.len()));
                        for (x, c) in b {
                            add(&mut a, x, -c);
                        }
                        pending.push(a);
                    }
                }
            }
            let mut changed = false;
            for c in pending {
                changed |= self.add_rule(c);
            }
            if !changed {
                return;
            }
        }
    }

    fn reduce(&self, c: &Combination, strategy: Strategy) -> Combination {
        let mut out = Combination::new();
        for (w, x) in c {
            for (k, y) in self.normal_form(w, strategy) {
                add(&mut out, k, y * x);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Positions (start, length) of rule left-hand sides inside `w`.
    pub fn redexes(&self, w: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for start in 0..w.len() {
            for len in 1..=self.max_lhs.min(w.len() - start) {
                if self.rules.contains_key(&w[start..start + len]) {
                    out.push((start, len));
                }
            }
        }
        out
    }

    pub fn is_irreducible(&self, w: &[usize]) -> bool {
        self.redexes(w).is_empty()
    }

    /// One rewrite at the given redex.
    pub fn step(&self, w: &[usize], at: (usize, usize)) -> Combination {
        let (s, l) = at;
        let mut out = Combination::new();
        for (rhs, c) in &self.rules[&w[s..s + l]] {
            let mut nw = w[..s].to_vec();
            nw.extend_from_slice(rhs);
            nw.extend_from_slice(&w[s + l..]);
            add(&mut out, nw, c.clone());
        }
        out
    }

    /// Full reduction with a fixed choice of redex.
    pub fn normal_form(&self, w: &[usize], strategy: Strategy) -> Combination {
        let mut todo = Combination::new();
        todo.insert(w.to_vec(), Rational::from_integer(1.into()));
        let mut done = Combination::new();
        let mut steps = 0usize;
        while let Some((word, c)) = todo.pop_first() {
            let red = self.redexes(&word);
            let pick = match strategy {
                Strategy::Leftmost => red.first(),
                Strategy::Rightmost => red.last(),
            };
            match pick {
                None => add(&mut done, word, c),
                Some(&at) => {
                    for (nw, x) in self.step(&word, at) {
                        add(&mut todo, nw, x * &c);
                    }
                }
            }
            steps += 1;
            assert!(steps < 1_000_000, "rewriting does not terminate");
        }
        done
    }

    /// True when every one-step rewrite of `w`, fully reduced, agrees with
    /// the leftmost normal form (local confluence at `w`).
    pub fn locally_confluent_at(&self, w: &[usize]) -> bool {
        let reference = self.normal_form(w, Strategy::Leftmost);
        self.redexes(w).into_iter().all(|at| {
            let mut total = Combination::new();
            for (nw, c) in self.step(w, at) {
                for (k, x) in self.normal_form(&nw, Strategy::Leftmost) {
                    add(&mut total, k, x * &c);
                }
            }
            total == reference
        }) && self.normal_form(w, Strategy::Rightmost) == reference
    }
}

fn add(m: &mut Combination, k: Vec<usize>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(k.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        m.remove(&k);
    }
}
