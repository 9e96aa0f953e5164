//! Property tests for the dense kernels. Dimensions stay small so the whole
//! file runs in seconds; the point is shape coverage, not stress.

use nucnorm_core::{
    apply_q_transpose, frobenius_norm, householder_qr, matmul, rand_nn, svd_values, DenseMatrix,
    RandNNConfig,
};
use proptest::prelude::*;

fn matrix_strategy(max_dim: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(m, n)| {
        prop::collection::vec(-100.0f64..100.0, m * n)
            .prop_map(move |data| DenseMatrix::from_column_major(m, n, data).unwrap())
    })
}

fn tall_matrix_strategy(max_dim: usize) -> impl Strategy<Value = DenseMatrix> {
    matrix_strategy(max_dim).prop_map(|a| {
        if a.rows() >= a.cols() {
            a
        } else {
            a.transposed()
        }
    })
}

fn reference_product(
    a: &DenseMatrix,
    b: &DenseMatrix,
    ta: bool,
    tb: bool,
) -> Option<DenseMatrix> {
    let (m, k) = if ta { (a.cols(), a.rows()) } else { (a.rows(), a.cols()) };
    let (kb, n) = if tb { (b.cols(), b.rows()) } else { (b.rows(), b.cols()) };
    if k != kb {
        return None;
    }
    let mut c = DenseMatrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            let mut s = 0.0;
            for p in 0..k {
                let x = if ta { a.get(p, i) } else { a.get(i, p) };
                let y = if tb { b.get(j, p) } else { b.get(p, j) };
                s += x * y;
            }
            c.set(i, j, s);
        }
    }
    Some(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matmul_matches_reference(
        a in matrix_strategy(10),
        b in matrix_strategy(10),
        ta in any::<bool>(),
        tb in any::<bool>(),
    ) {
        match reference_product(&a, &b, ta, tb) {
            Some(want) => {
                let got = matmul(&a, &b, ta, tb).unwrap();
                prop_assert!(got.max_abs_diff(&want) <= 1e-9);
            }
            None => prop_assert!(matmul(&a, &b, ta, tb).is_err()),
        }
    }

    #[test]
    fn qr_reconstructs_and_q_is_orthonormal(a in matrix_strategy(14)) {
        let (qset, r) = householder_qr(&a);
        let p = a.rows().min(a.cols());
        for j in 0..a.cols() {
            for i in (j + 1)..p {
                prop_assert_eq!(r.get(i, j), 0.0);
            }
            if j < p {
                prop_assert!(r.get(j, j) >= 0.0);
            }
        }
        // Rebuild A = Q [R; 0] column by column.
        let mut rebuilt = DenseMatrix::zeros(a.rows(), a.cols());
        rebuilt.set_block(0, 0, &r);
        qset.apply_left_in_place(&mut rebuilt).unwrap();
        let scale = 1.0 + frobenius_norm(&a);
        prop_assert!(rebuilt.max_abs_diff(&a) <= 1e-12 * scale);
        let q = qset.q_columns(p);
        let gram = matmul(&q, &q, true, false).unwrap();
        let eye = DenseMatrix::identity(p);
        prop_assert!(gram.max_abs_diff(&eye) <= 1e-13 * (a.rows() as f64 + 4.0));
    }

    #[test]
    fn q_transpose_roundtrips(a in tall_matrix_strategy(12), b in matrix_strategy(12)) {
        prop_assume!(b.rows() == a.rows());
        let (qset, _) = householder_qr(&a);
        let mut qb = b.clone();
        qset.apply_left_in_place(&mut qb).unwrap();
        let back = apply_q_transpose(&qset, &qb, true).unwrap();
        prop_assert!(back.max_abs_diff(&b) <= 1e-11 * (1.0 + frobenius_norm(&b)));
    }

    #[test]
    fn singular_values_sum_to_frobenius(a in matrix_strategy(12)) {
        let sv = svd_values(&a).unwrap();
        prop_assert_eq!(sv.len(), a.rows().min(a.cols()));
        for w in sv.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        let fro = frobenius_norm(&a);
        let sum_sq: f64 = sv.iter().map(|s| s * s).sum();
        prop_assert!((sum_sq.sqrt() - fro).abs() <= 1e-12 * (1.0 + fro));
    }

    #[test]
    fn full_width_panel_equals_oracle(a in tall_matrix_strategy(8), seed in any::<u64>()) {
        let cfg = RandNNConfig {
            block_size: a.cols(),
            power_rounds: 1,
            seed,
            ..RandNNConfig::default()
        };
        let est = rand_nn(&a, &cfg).unwrap();
        let oracle = svd_values(&a).unwrap();
        prop_assert_eq!(est.values, oracle);
    }
}
