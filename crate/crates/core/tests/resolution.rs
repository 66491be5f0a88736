use pe2odd::exactla::{int, rat, Rational};
use pe2odd::pe2core::Weight;
use pe2odd::quiveralg::{pe2_algebra, PathAlgebra, Window};
use pe2odd::resolution::*;
use pe2odd::Error;

fn w(a: i64, b: i64) -> Weight {
    Weight::new(a, b)
}

fn setup(a_abs: i64, n: usize) -> (PathAlgebra, Window) {
    let win = resolution_window(a_abs, 0, n);
    (pe2_algebra(win), win)
}

fn linear(res: &Resolution, n: usize) -> Vec<Weight> {
    let mut v: Vec<Weight> =
        res.steps[n].projectives.summands.iter().filter(|s| s.shift as usize == n).map(|s| s.vertex).collect();
    v.sort();
    v
}

#[test]
fn first_steps() {
    let (alg, win) = setup(21, 3);
    let res = resolve(&alg, w(5, 0), 2, win).unwrap();
    assert_eq!(res.steps[0].projectives.summands, [Summand { vertex: w(5, 0), shift: 0 }]);
    assert_eq!(linear(&res, 1), [w(-7, 0), w(3, 1), w(7, 1)]);
    assert_eq!(res.steps[1].projectives.len(), 3);
    for g in &res.steps[0].generators {
        assert_eq!(g.degree, 1);
        assert_eq!(g.parts.len(), 1);
        assert_eq!(g.parts[&0].terms.len(), 1);
    }
    let res = resolve(&alg, w(-1, 0), 1, win).unwrap();
    assert_eq!(res.steps[1].projectives.summands, [Summand { vertex: w(-3, 1), shift: 1 }]);
}

#[test]
fn dual_side_at_n3() {
    let (alg, win) = setup(25, 4);
    let res = resolve(&alg, w(-7, 0), 3, win).unwrap();
    let mu = w(-7, 0);
    let mut expect: Vec<Weight> = [6, 2, -2, -6].iter().map(|&m| mu.shift(m, 3)).collect();
    expect.extend([4, 0, -4].iter().map(|&m| mu.dual().shift(m, 2)));
    expect.sort();
    assert_eq!(linear(&res, 3), expect);
    assert_eq!(ext_formula_support(mu, 3), expect);
    assert!(res.ext_safe(3));
}

#[test]
fn formula_examples() {
    assert_eq!(ext_formula(w(5, 0), w(-7, 0), 1), 1);
    assert_eq!(ext_formula(w(-1, 0), w(-3, 1), 1), 1);
    assert_eq!(ext_formula(w(-1, 0), w(1, 1), 1), 0);
    assert_eq!(ext_formula(w(3, 0), w(3, 0), 2), 1);
    assert_eq!(ext_formula(w(3, 0), w(3, 0), 0), 1);
    assert_eq!(ext_formula(w(3, 0), w(5, 0), 0), 0);
    assert_eq!(m_set(2), [4, 0, -4]);
    assert_eq!(m_set(0), [0]);
    assert!(m_set(-1).is_empty());
    // Ext¹ totals out of a ≥ 3 and a = −1 vertices.
    assert_eq!(ext_formula_support(w(7, 2), 1).len(), 3);
    assert_eq!(ext_formula_support(w(-1, 2), 1).len(), 1);
}

#[test]
fn resolution_matches_formula() {
    let (alg, win) = setup(25, 4);
    let tables: Vec<ExtTable> = (-9..=9)
        .step_by(2)
        .map(|a| ExtTable::from_resolution(&resolve(&alg, w(a, 0), 4, win).unwrap()))
        .collect();
    let t = ExtTable::merge(tables);
    assert!(t.disagreements().is_empty(), "{:?}", t.disagreements());
    assert!(t.compared() > 100);
    for a in (-9..=9).step_by(2) {
        let res = resolve(&alg, w(a, 0), 3, win).unwrap();
        assert_eq!(ext_dims(&res, w(a, 0), 0), Some(1));
        let k = koszul_check(&res);
        assert!(k.passed && k.checked_through >= 2, "{k:?}");
        assert!(linear_part_is_everything(&res));
    }
}

#[test]
fn qp_class_in_ext2() {
    let (alg, win) = setup(21, 3);
    let res = resolve(&alg, w(3, 0), 2, win).unwrap();
    assert_eq!(ext_dims(&res, w(3, 0), 2), Some(1));
}

#[test]
fn window_errors() {
    let win = Window::new(-5, 5, 0, 3).unwrap();
    let alg = pe2_algebra(win);
    assert!(matches!(resolve(&alg, w(5, 0), 2, win), Err(Error::Window { .. })));
    assert!(matches!(resolve(&alg, w(41, 0), 2, win), Err(Error::Window { .. })));
    let res = resolve(&alg, w(1, 0), 3, win).unwrap();
    assert!(!res.ext_safe(3));
    let t = ExtTable::from_resolution(&res);
    assert!(t.entries.iter().any(|e| e.computed.is_none()));
}

fn coef(alg: &PathAlgebra, res: &Resolution, n: usize, target: Weight, from: Weight, label: &str) -> Rational {
    boundary_coefficient(alg, res, n, target, from, label).unwrap_or_else(|| int(0))
}

fn sq(x: Rational) -> Rational {
    &x * &x
}

/// The n = 3 coefficients σ, τ, α, β, γ for a ≤ −7, after rescaling the
/// P_2 generators to σ = 1 / single coefficient 1 / α = 1.
#[test]
fn n3_coefficients() {
    let (alg, win) = setup(31, 4);
    for a in [-7, -9, -11, -13] {
        let mu = w(a, 0);
        let mup = mu.dual();
        let res = resolve(&alg, mu, 3, win).unwrap();
        let ai = int(a);
        // P_2 rescaling factors: new generator = c · ours.
        let c_ff = |m: i64| -> Rational {
            let v = mu.shift(m, 2);
            let s = coef(&alg, &res, 2, v, mu.shift(m + 2, 1), "f'");
            let t = coef(&alg, &res, 2, v, mu.shift(m - 2, 1), "g'");
            if s != int(0) {
                int(1) / s
            } else {
                int(1) / t
            }
        };
        let c_q = |m: i64| -> Rational { int(1) / coef(&alg, &res, 2, mup.shift(m, 1), mu.shift(-m, 1), "q") };
        // n = 2 middle ratio follows the same recursion.
        let v = mu.shift(0, 2);
        let (s2, t2) = (coef(&alg, &res, 2, v, mu.shift(2, 1), "f'"), coef(&alg, &res, 2, v, mu.shift(-2, 1), "g'"));
        assert_eq!(t2 / s2, sq((&ai + int(3)) / (&ai - int(1))), "a={a}");

        let expected_st = [
            (6, int(0), int(1)),
            (2, int(1), sq((&ai + int(5)) / (&ai + int(1)))),
            (-2, sq((&ai - int(1)) / (&ai + int(3))), sq((&ai + int(1)) / (&ai - int(3)))),
            (-6, int(1), int(0)),
        ];
        for (m, sigma, tau) in expected_st {
            let lam = mu.shift(m, 3);
            let s = if m + 2 <= 4 { coef(&alg, &res, 3, lam, mu.shift(m + 2, 2), "f'") / c_ff(m + 2) } else { int(0) };
            let t = if m - 2 >= -4 { coef(&alg, &res, 3, lam, mu.shift(m - 2, 2), "g'") / c_ff(m - 2) } else { int(0) };
            // Equal up to an overall scalar.
            assert_eq!(&s * &tau, &t * &sigma, "a={a} m={m}");
            assert!(s != int(0) || t != int(0));
        }

        let expected_abg = [
            (4, &ai - int(3), int(0)),
            (0, &ai + int(1), (&ai + int(1)) * sq((&ai + int(3)) / (&ai - int(1)))),
            (-4, int(0), &ai + int(5)),
        ];
        for (m, beta, gamma) in expected_abg {
            let lam = mup.shift(m, 2);
            let al = coef(&alg, &res, 3, lam, mu.shift(-m, 2), "q") / c_ff(-m);
            let be = if m - 2 >= -2 { coef(&alg, &res, 3, lam, mup.shift(m - 2, 1), "f") / c_q(m - 2) } else { int(0) };
            let ga = if m + 2 <= 2 { coef(&alg, &res, 3, lam, mup.shift(m + 2, 1), "g") / c_q(m + 2) } else { int(0) };
            assert_ne!(al, int(0), "a={a} m={m}");
            assert_eq!(be / &al, beta, "β a={a} m={m}");
            assert_eq!(ga / &al, gamma, "γ a={a} m={m}");
        }
    }
}

/// Scale-free form of the σ, τ recursion at n = 4:
/// τⁿσⁿ⁻¹(m−2) / (σⁿτⁿ⁻¹(m+2)) = ((a+m+3)/(a+m−1))².
#[test]
fn sigma_tau_recursion_n4() {
    let (alg, win) = setup(31, 5);
    for a in [-9, -11, -13] {
        let mu = w(a, 0);
        let res = resolve(&alg, mu, 4, win).unwrap();
        let n = 4;
        for m in [4i64, 0, -4] {
            let lam = mu.shift(m, n as i64);
            let (u, v, base) = (mu.shift(m + 2, 3), mu.shift(m - 2, 3), mu.shift(m, 2));
            let s = coef(&alg, &res, n, lam, u, "f'");
            let t = coef(&alg, &res, n, lam, v, "g'");
            let tau_u = coef(&alg, &res, n - 1, u, base, "g'");
            let sigma_v = coef(&alg, &res, n - 1, v, base, "f'");
            let c = rat(a + m + 3, a + m - 1);
            assert_eq!(t * sigma_v, s * tau_u * sq(c), "a={a} m={m}");
        }
    }
}

#[test]
fn mutation_is_detected_by_ext() {
    let win = resolution_window(21, 0, 3);
    let alg = mutated_algebra(win, 6);
    let res = resolve(&alg, w(5, 0), 3, win).unwrap();
    // Dropping qp = 0 removes the Ext² class at μ.
    assert_eq!(ext_dims(&res, w(5, 0), 2), Some(0));
    assert!(!ExtTable::from_resolution(&res).disagreements().is_empty());
    // Generators just above the truncation are artifacts of the cut-off.
    assert!(!koszul_check(&res).passed);
    let honest = koszul_check_below(&res, alg.truncation());
    assert!(honest.passed, "{honest:?}");
}

#[test]
fn serialization() {
    let (alg, win) = setup(21, 2);
    let res = resolve(&alg, w(1, 0), 2, win).unwrap();
    let doc = serde_json::to_value(res.to_doc(&alg)).unwrap();
    assert_eq!(doc["schema"], RESOLUTION_SCHEMA);
    assert_eq!(doc["steps"].as_array().unwrap().len(), 3);
    let t = ExtTable::from_resolution(&res);
    let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
    assert_eq!(v["schema"], EXT_SCHEMA);
    assert!(t.to_csv().starts_with("mu_a,mu_b,lambda_a,lambda_b,n,value,formula\n"));
    let md = t.to_markdown();
    assert!(md.contains("### μ = (1,0), n = 1"), "{md}");
}
