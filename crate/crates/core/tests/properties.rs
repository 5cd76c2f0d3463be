use krylov_core::{
    arnoldi_expand, arnoldi_relation_residual, gmres_restarted, gmres_solve, CsrMatrix, DenseMatrix, DenseVector,
    SolverConfig,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sparse nonsymmetric matrix with `per_row` random off-diagonal entries and
/// a diagonal shift.
fn random_sparse(rng: &mut ChaCha8Rng, n: usize, per_row: usize, shift: f64) -> CsrMatrix {
    let mut t = Vec::new();
    for i in 0..n {
        t.push((i, i, shift + rng.random_range(-1.0..1.0)));
        for _ in 0..per_row {
            t.push((i, rng.random_range(0..n), rng.random_range(-1.0..1.0)));
        }
    }
    CsrMatrix::from_triplets(n, n, &t).unwrap()
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> DenseVector {
    let mut v = DenseVector::from_vec((0..n).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
    v.scale(1.0 / v.norm2());
    v
}

#[test]
fn random_eight_by_eight_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let a = random_sparse(&mut rng, 8, 8, 0.0);
    let basis = arnoldi_expand(|x| a.spmv(x), random_unit(&mut rng, 8), 5).unwrap();
    assert_eq!(basis.m, 5);
    // A V5 = V6 H5, formed densely from the outputs
    let v5 = DenseMatrix::from_columns(&basis.columns[..5]).unwrap();
    let v6 = DenseMatrix::from_columns(&basis.columns).unwrap();
    let lhs = a.to_dense().matmul(&v5).unwrap();
    let rhs = v6.matmul(&basis.h).unwrap();
    assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn arnoldi_orthonormal_and_relation(seed in any::<u64>(), n in 4usize..=200, m in 1usize..=50) {
        // Unshifted spectra converge slowly. Plain MGS loses orthogonality
        // in proportion to how far the Krylov residual has dropped, so
        // rapidly converging operators are kept out of this corpus.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_sparse(&mut rng, n, 4, 0.0);
        let basis = arnoldi_expand(|x| a.spmv(x), random_unit(&mut rng, n), m.min(n / 2)).unwrap();
        prop_assert!(basis.orthonormality_error() <= 1e-10);
        prop_assert!(arnoldi_relation_residual(&a, &basis).unwrap() <= 1e-10);
        for j in 0..basis.m {
            for i in j + 2..=basis.m {
                prop_assert_eq!(basis.h[(i, j)], 0.0);
            }
        }
    }

    #[test]
    fn krylov_powers_lie_in_span(seed in any::<u64>(), n in 5usize..=60, m in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_sparse(&mut rng, n, 3, 2.0);
        let v1 = random_unit(&mut rng, n);
        let basis = arnoldi_expand(|x| a.spmv(x), v1.clone(), m).unwrap();
        let mut w = v1;
        for j in 1..=basis.m {
            w = a.spmv(&w).unwrap();
            w.scale(1.0 / w.norm2());
            let cols = &basis.columns[..(j + 1).min(basis.columns.len())];
            let mut r = w.clone();
            for v in cols {
                r.axpy(-v.dot(&w), v);
            }
            prop_assert!(r.norm2() <= 1e-8, "A^{} v1 leaves the span by {}", j, r.norm2());
        }
    }

    #[test]
    fn breakdown_gives_square_relation(seed in any::<u64>(), k in 1usize..8, extra in 1usize..10) {
        // leading block is a scaled cyclic shift, so span{e_1..e_k} is
        // invariant and exactly reached after k steps from e_1
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = k + extra;
        let mut t = Vec::new();
        for i in 0..k {
            t.push(((i + 1) % k, i, rng.random_range(0.5..2.0)));
        }
        for i in k..n {
            for j in k..n {
                t.push((i, j, rng.random_range(-1.0..1.0)));
            }
        }
        let a = CsrMatrix::from_triplets(n, n, &t).unwrap();
        let basis = arnoldi_expand(|x| a.spmv(x), DenseVector::unit(n, 0), n).unwrap();
        let j = basis.breakdown.expect("invariant subspace must be detected");
        prop_assert_eq!(j, k);
        prop_assert_eq!(basis.columns.len(), j);
        prop_assert_eq!(basis.h.n_cols(), j);
        let vj = DenseMatrix::from_columns(&basis.columns).unwrap();
        let lhs = a.to_dense().matmul(&vj).unwrap();
        let rhs = vj.matmul(&basis.square_h()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-10);
        prop_assert!(arnoldi_relation_residual(&a, &basis).unwrap() <= 1e-10);
    }

    #[test]
    fn full_dimension_stops_at_n(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_sparse(&mut rng, n, n, 0.0);
        let basis = arnoldi_expand(|x| a.spmv(x), random_unit(&mut rng, n), n + 3).unwrap();
        prop_assert!(basis.m <= n);
        prop_assert!(basis.columns.len() <= n);
        prop_assert!(basis.orthonormality_error() <= 1e-10);
        prop_assert!(arnoldi_relation_residual(&a, &basis).unwrap() <= 1e-10);
    }

    #[test]
    fn restarted_cycle_boundaries_do_not_increase(seed in any::<u64>(), restart in 2usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 60;
        let a = random_sparse(&mut rng, n, 4, 3.0);
        let b = DenseVector::from_vec((0..n).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
        let cfg = SolverConfig::new(1e-10, 300).with_restart(restart);
        let report = gmres_restarted(&a, &b, &DenseVector::zeros(n), &cfg).unwrap();
        let h = &report.residual_history;
        for w in h.windows(2) {
            // within a cycle the minimum over a growing space; across a
            // boundary the new cycle starts from the previous iterate
            prop_assert!(w[1].absolute_residual <= w[0].absolute_residual * (1.0 + 1e-8));
        }
        prop_assert!(report.peak_basis_columns <= restart + 1);
    }

    #[test]
    fn gmres_exact_at_n(seed in any::<u64>(), n in 1usize..=50) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                d[(i, j)] = rng.random_range(-1.0..1.0);
            }
            d[(i, i)] += 2.0;
        }
        let a = CsrMatrix::from_dense(&d);
        let b = DenseVector::from_vec((0..n).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
        let report = gmres_solve(&a, &b, &DenseVector::zeros(n), &SolverConfig::new(1e-12, n)).unwrap();
        prop_assert!(report.true_relative_residual <= 1e-9);
    }
}
