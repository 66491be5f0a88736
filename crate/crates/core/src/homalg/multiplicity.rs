//! Composition multiplicities [P(λ):L(μ)], computed three ways: from the
//! sl2 pipeline, from the closed form, and (elsewhere) by counting targets.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::pe2core::Weight;

use super::target_vectors;

/// [Δ₀(c):L₀(m)] for sl2 Verma modules.
fn sl2_mult(c: i64, m: i64) -> u32 {
    u32::from(m == c) + u32::from(c >= 0 && m == -c - 2)
}

/// The eight weights λ_ijk = λ + i(2ε−δ) − jδ − k(2ε+δ).
pub fn shifted_weights(lambda: Weight) -> Vec<Weight> {
    let mut out = Vec::with_capacity(8);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out.push(lambda.shift(2 * i - 2 * k, -i - j - k));
            }
        }
    }
    out
}

/// [Δ(λ):L₀(μ)].
pub fn multiplicity_delta0(lambda: Weight, mu: Weight) -> u32 {
    shifted_weights(lambda).into_iter().filter(|w| w.b == mu.b).map(|w| sl2_mult(w.a, mu.a)).sum()
}

/// [Δ(λ):L(μ)], by unwinding [Δ:L(μ)] + [Δ:L(μ+δ)] = [Δ:L₀(μ)] upward from
/// δ-coefficient b−4, where nothing survives.
pub fn multiplicity_delta(lambda: Weight, mu: Weight) -> u32 {
    let lowest = lambda.b - 4;
    if mu.b > lambda.b || mu.b <= lowest {
        return 0;
    }
    let mut below = 0i64;
    for b in lowest..mu.b {
        below = i64::from(multiplicity_delta0(lambda, Weight::new(mu.a, b))) - below;
    }
    assert!(below >= 0, "negative multiplicity at {lambda}, {mu}");
    below as u32
}

/// [P(λ):L(μ)] from the standard filtration of P(λ).
pub fn multiplicity_proj(lambda: Weight, mu: Weight) -> u32 {
    let m = multiplicity_delta(lambda, mu);
    if lambda.a <= -3 {
        m + multiplicity_delta(lambda.dual(), mu)
    } else {
        m
    }
}

/// Closed form of [P(λ):L(μ)] for odd λ.
pub fn multiplicity_closed_form(lambda: Weight, mu: Weight) -> u32 {
    let a = lambda.a;
    let n = lambda.b - mu.b;
    let m = mu.a;
    let even_row = n == 0 || n == 2;
    if !lambda.is_odd_type() || !(0..=3).contains(&n) {
        return 0;
    }
    match a {
        1.. => {
            let odd_row: &[i64] = if a == 1 { &[a + 2, a - 2, -a - 4] } else { &[a + 2, a - 2, -a - 4, -a] };
            u32::from((even_row && (m == a || m == -a - 2)) || (n == 1 && odd_row.contains(&m)))
        }
        -1 => {
            if n == 1 && m == -3 {
                2
            } else {
                u32::from((even_row && m == -1) || (n == 1 && m == 1))
            }
        }
        _ => {
            if (even_row && m == a) || (n == 1 && (m == a + 2 || m == a - 2)) {
                2
            } else {
                let odd_row: &[i64] = if a == -3 { &[-a] } else { &[-a, -a - 4] };
                u32::from((even_row && m == -a - 2) || (n == 1 && odd_row.contains(&m)))
            }
        }
    }
}

/// Weights that can occur in P(λ): δ-coefficient in [b−3, b], |ε-part| bounded.
pub fn candidate_weights(lambda: Weight) -> Vec<Weight> {
    let r = lambda.a.abs() + 6;
    let mut out = Vec::new();
    for b in lambda.b - 3..=lambda.b {
        for a in (-r..=r).filter(|a| a.rem_euclid(2) == 1) {
            out.push(Weight::new(a, b));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityRow {
    pub lambda: Weight,
    pub mu: Weight,
    pub targets: u32,
    pub pipeline: u32,
    pub closed_form: u32,
}

impl MultiplicityRow {
    pub fn agrees(&self) -> bool {
        self.targets == self.pipeline && self.pipeline == self.closed_form
    }
}

/// (λ, μ) ↦ [P(λ):L(μ)] with the three methods side by side. Only nonzero
/// pairs are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub rows: BTreeMap<(Weight, Weight), MultiplicityRow>,
}

impl MultiplicityTable {
    pub fn build(lambdas: &[Weight]) -> Result<MultiplicityTable> {
        let mut rows = BTreeMap::new();
        for &lambda in lambdas {
            for mu in candidate_weights(lambda) {
                let row = MultiplicityRow {
                    lambda,
                    mu,
                    targets: target_vectors(lambda, mu)?.len() as u32,
                    pipeline: multiplicity_proj(lambda, mu),
                    closed_form: multiplicity_closed_form(lambda, mu),
                };
                if row.targets + row.pipeline + row.closed_form > 0 {
                    rows.insert((lambda, mu), row);
                }
            }
        }
        Ok(MultiplicityTable { rows })
    }

    pub fn get(&self, lambda: Weight, mu: Weight) -> u32 {
        self.rows.get(&(lambda, mu)).map_or(0, |r| r.closed_form)
    }

    pub fn disagreements(&self) -> Vec<&MultiplicityRow> {
        self.rows.values().filter(|r| !r.agrees()).collect()
    }

    pub fn row_for(&self, lambda: Weight) -> Vec<&MultiplicityRow> {
        self.rows.range((lambda, Weight::new(i64::MIN, i64::MIN))..).take_while(|(k, _)| k.0 == lambda).map(|(_, r)| r).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> Weight {
        Weight::new(a, b)
    }

    #[test]
    fn delta0_values() {
        assert_eq!(multiplicity_delta0(w(5, 0), w(5, 0)), 1);
        assert_eq!(multiplicity_delta0(w(5, 0), w(-7, 0)), 1);
        assert_eq!(multiplicity_delta0(w(5, 0), w(3, -4)), 0);
        // The doubled entries sit at a = −1.
        assert_eq!(multiplicity_delta0(w(-1, 0), w(-3, -1)), 2);
        assert_eq!(multiplicity_delta0(w(-1, 0), w(-3, -2)), 2);
        assert_eq!(multiplicity_delta0(w(-3, 0), w(-3, -1)), 1);
        assert_eq!(multiplicity_delta0(w(0, 0), w(-2, -1)), 2);
    }

    #[test]
    fn delta_values() {
        let l = w(-3, 0);
        assert_eq!(multiplicity_delta(l, w(-3, -2)), 1);
        assert_eq!(multiplicity_delta(l, w(-3, -1)), 0);
        assert_eq!(multiplicity_delta(l, w(-3, -3)), 0);
        assert_eq!(multiplicity_delta(l, w(-1, -1)), 1);
        assert_eq!(multiplicity_delta(l, l), 1);
        assert_eq!(multiplicity_delta(l, w(-3, 1)), 0);
    }

    #[test]
    fn proj_values() {
        assert_eq!(multiplicity_proj(w(-1, 0), w(-3, -1)), 2);
        assert_eq!(multiplicity_proj(w(5, 0), w(-7, -2)), 1);
        assert_eq!(multiplicity_proj(w(-5, 0), w(-3, -1)), 2);
    }

    #[test]
    fn pipeline_matches_closed_form() {
        for a in (-21..=21).step_by(2) {
            for b in [-1, 0, 4] {
                let l = w(a, b);
                for mu in candidate_weights(l) {
                    assert_eq!(multiplicity_proj(l, mu), multiplicity_closed_form(l, mu), "{l} {mu}");
                }
            }
        }
    }

    #[test]
    fn totals() {
        let total = |a: i64| -> u32 { candidate_weights(w(a, 0)).into_iter().map(|m| multiplicity_closed_form(w(a, 0), m)).sum() };
        assert_eq!([total(5), total(1), total(-1), total(-5), total(-3)], [8, 7, 5, 12, 11]);
    }
}
