use proptest::prelude::*;

use pe2odd::exactla::*;
use pe2odd::pe2core::{jacobi_failures, Generator, Weight};
use pe2odd::quiveralg::pe2_algebra;
use pe2odd::repmodules::{default_depth, projective_cover, ModuleVector};
use pe2odd::resolution::{check_invariants, koszul_check, resolution_window, resolve};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
}

fn to_sparse(rows: &[Vec<i64>]) -> SparseMatrix {
    let r: Vec<&[i64]> = rows.iter().map(|x| x.as_slice()).collect();
    SparseMatrix::from_i64(&r)
}

proptest! {
    #[test]
    fn rank_plus_nullity(rows in small_matrix()) {
        let m = to_sparse(&rows);
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn rref_is_idempotent(rows in small_matrix()) {
        let (r, piv) = rref(&to_sparse(&rows));
        let (r2, piv2) = rref(&r);
        prop_assert_eq!(r.to_dense(), r2.to_dense());
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn dense_and_sparse_paths_agree(rows in small_matrix()) {
        let m = to_sparse(&rows);
        let (a, pa) = rref(&m);
        let (b, pb) = rref_sparse_path(&m);
        prop_assert_eq!(a.to_dense(), b.to_dense());
        prop_assert_eq!(pa, pb);
    }

    #[test]
    fn solve_reproduces_rhs(rows in small_matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
        let m = to_sparse(&rows);
        let x: Vec<Rational> = (0..m.cols()).map(|i| int(seed[i])).collect();
        let rhs = m.mul_vec(&x);
        let y = solve(&m, &rhs).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), rhs);
    }

    #[test]
    fn row_space_dimension_is_rank(rows in small_matrix()) {
        let m = to_sparse(&rows);
        let mut s = RowSpace::new(m.cols());
        for r in m.to_dense() {
            s.insert(&r);
        }
        prop_assert_eq!(s.dim(), rank(&m));
        for r in m.to_dense() {
            prop_assert!(s.contains(&r));
        }
    }

    #[test]
    fn rational_text_roundtrip(n in -1000i64..1000, d in 1i64..50) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rational(&fmt_rational(&r)), Some(r));
    }
}

#[test]
fn super_jacobi_on_all_triples() {
    assert!(jacobi_failures().is_empty(), "{:?}", jacobi_failures());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// ∂ξ² = 0 and ker ∂ξ = im ∂ξ on weight spaces away from the truncation.
    #[test]
    fn dxi_is_exact(ai in -6i64..6, mi in 0i64..8, db in 0i64..4) {
        let a = 2 * ai + 1;
        let lambda = Weight::new(a, 0);
        let m = projective_cover(lambda, default_depth(a, 2)).unwrap();
        let mu = Weight::new(a - 2 * mi + 4, -db);
        let space = m.weight_space(mu).unwrap();
        for k in &space {
            let v = ModuleVector::basis(*k);
            let dd = m.act(Generator::DXi, &m.act(Generator::DXi, &v));
            prop_assert!(dd.is_zero());
        }
        let (ker, im) = m.ker_im_partial(mu).unwrap();
        prop_assert_eq!(ker, im, "at {}", mu);
    }

    /// The runtime invariants hold for every resolution, and all are linear.
    #[test]
    fn resolutions_are_minimal_and_linear(ai in -5i64..5, b in -1i64..2) {
        let win = resolution_window(27, -1, 5);
        let alg = pe2_algebra(win);
        let mu = Weight::new(2 * ai + 1, b);
        let res = resolve(&alg, mu, 3, win).unwrap();
        prop_assert!(check_invariants(&alg, &res).is_ok());
        prop_assert!(koszul_check(&res).passed);
    }
}
