//! Acceptance suite: one check per criterion, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report stays readable; the
//! process exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use krylov::generate::{diag_dominant, laplacian1d, laplacian2d, spd_random};
use krylov::history::{self, HistoryRecord};
use krylov::mtx;
use krylov_core::{
    arnoldi_expand, arnoldi_relation_residual, cg_solve, cg_solve_observed, condition_number_spd_oracle,
    dense_solve_oracle, gmres_restarted, gmres_solve, gmres_solve_multi, hessenberg_lsq, ic0, ilu0, CsrMatrix,
    DenseMatrix, DenseVector, Preconditioner, SolverConfig, Status, TriangularFactors,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn close(got: f64, want: f64, tol: f64, what: &str) {
    assert!((got - want).abs() <= tol, "{what}: got {got}, want {want} within {tol}");
}

fn example1() -> CsrMatrix {
    CsrMatrix::from_dense(&DenseMatrix::from_rows(&[[1.0, 4.0, 7.0], [2.0, 9.0, 7.0], [5.0, 8.0, 3.0]]).unwrap())
}

fn vector(v: &[f64]) -> DenseVector {
    DenseVector::from_vec(v.to_vec()).unwrap()
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> DenseVector {
    DenseVector::from_vec((0..n).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
}

fn random_dense(rng: &mut ChaCha8Rng, n: usize, shift: f64) -> CsrMatrix {
    let mut d = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            d[(i, j)] = rng.random_range(-1.0..1.0);
        }
        d[(i, i)] += shift;
    }
    CsrMatrix::from_dense(&d)
}

/// `b - A x` by an explicit row loop, independent of the solver's own spmv.
fn independent_relres(a: &CsrMatrix, b: &DenseVector, x: &DenseVector) -> f64 {
    let mut r2 = 0.0;
    for i in 0..a.n_rows() {
        let (cols, vals) = a.row(i);
        let ax: f64 = cols.iter().zip(vals).map(|(&j, v)| v * x[j]).sum();
        r2 += (b[i] - ax).powi(2);
    }
    r2.sqrt() / b.norm2()
}

fn a_norm(a: &CsrMatrix, e: &DenseVector) -> f64 {
    e.dot(&a.spmv(e).unwrap()).sqrt()
}

fn example1_golden() {
    let a = example1();
    let b = vector(&[1.0, 8.0, 2.0]);
    let beta = b.norm2();
    close(beta, 8.31, 0.01, "beta");
    let mut v1 = b.clone();
    v1.scale(1.0 / beta);
    let basis = arnoldi_expand(|x| a.spmv(x), v1, 3).unwrap();
    close(basis.h[(0, 0)], 13.06, 0.01, "h11");
    let v_want = [[0.12, 0.55, 0.82], [0.96, -0.27, 0.037], [0.24, 0.79, -0.56]];
    for (j, col) in basis.columns.iter().take(3).enumerate() {
        for i in 0..3 {
            close(col[i], v_want[i][j], 0.05, &format!("V[{i}][{j}]"));
        }
    }
    let h_want = [[13.0, 5.4, -1.6], [7.4, 4.0, 1.1], [0.0, 2.6, -4.1], [0.0, 0.0, 0.0]];
    for (i, row) in h_want.iter().enumerate() {
        for (j, &want) in row.iter().enumerate() {
            close(basis.h[(i, j)], want, 0.1, &format!("H[{i}][{j}]"));
        }
    }
    let (y, _) = hessenberg_lsq(&basis.h, beta).unwrap();
    for (k, (&got, want)) in y.iter().zip([1.36, -2.16, -1.4]).enumerate() {
        close(got, want, 0.05, &format!("y[{k}]"));
    }
    let report = gmres_solve(&a, &b, &DenseVector::zeros(3), &SolverConfig::new(1e-12, 3)).unwrap();
    assert!(report.status.is_success(), "status {}", report.status);
    assert!(report.iterations <= 3);
    for (k, (&got, want)) in report.solution.iter().zip([-2.18, 1.84, -0.6]).enumerate() {
        close(got, want, 0.01, &format!("x[{k}]"));
    }
}

fn example2_golden() {
    let b = DenseMatrix::from_rows(&[[1.0, 2.0, 5.0], [8.0, 3.0, -3.0], [2.0, 9.0, 8.0]]).unwrap();
    let x = gmres_solve_multi(&example1(), &b, &SolverConfig::new(1e-12, 3)).unwrap();
    let want = [[-2.2, 2.1, 4.8], [1.8, -0.22, -2.6], [-0.59, 0.11, 1.5]];
    for (i, row) in want.iter().enumerate() {
        for (j, &w) in row.iter().enumerate() {
            close(x[(i, j)], w, 0.05, &format!("X[{i}][{j}]"));
        }
    }
}

fn large_system_surrogate() {
    let start = Instant::now();
    let a = diag_dominant(2000, 2024, false).unwrap();
    let b = DenseVector::ones(2000);
    let report = gmres_solve(&a, &b, &DenseVector::zeros(2000), &SolverConfig::new(1e-7, 20_000)).unwrap();
    assert_eq!(report.status, Status::Converged);
    let relres = independent_relres(&a, &b, &report.solution);
    assert!(relres <= 1e-7, "true relative residual {relres}");
    println!("    diag_dominant n=2000: {} iterations, relres {relres:.3e}", report.iterations);

    // dense nonsymmetric matrix: restarted GMRES is run for its cycle
    // behavior only; convergence is not expected
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let a = random_dense(&mut rng, 100, 0.0);
    let b = random_vector(&mut rng, 100);
    let cfg = SolverConfig::new(1e-1, 90).with_restart(10);
    let report = gmres_restarted(&a, &b, &DenseVector::zeros(100), &cfg).unwrap();
    assert!(report.iterations <= 90);
    assert!(report.peak_basis_columns <= 11);
    let cycles = report.residual_history.iter().map(|e| e.cycle).max().unwrap();
    assert!(cycles >= 1, "no restart happened");
    for w in report.residual_history.windows(2) {
        assert!(w[1].iteration > w[0].iteration);
        assert!(w[1].relative_residual <= w[0].relative_residual * (1.0 + 1e-12));
    }
    println!(
        "    dense 100x100 GMRES(10): status {}, {} iterations over {} cycles, relres {:.3e}",
        report.status,
        report.iterations,
        cycles + 1,
        report.final_relative_residual()
    );
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

fn oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let n = rng.random_range(1..=30);
        let a = random_dense(&mut rng, n, (n as f64).sqrt());
        let b = random_vector(&mut rng, n);
        let want = dense_solve_oracle(&a.to_dense(), &b).unwrap();
        let got = gmres_solve(&a, &b, &DenseVector::zeros(n), &SolverConfig::new(1e-12, n)).unwrap();
        let err = got.solution.sub(&want).norm_inf();
        assert!(err <= 1e-8, "gmres n={n}: error {err}");
    }
    for seed in 0..100 {
        let n = rng.random_range(2..=30);
        let a = spd_random(n, seed).unwrap();
        let b = random_vector(&mut rng, n);
        let want = dense_solve_oracle(&a.to_dense(), &b).unwrap();
        let got = cg_solve(&a, &b, &DenseVector::zeros(n), &SolverConfig::new(1e-12, 10 * n)).unwrap();
        assert_eq!(got.status, Status::Converged);
        let err = got.solution.sub(&want).norm_inf();
        assert!(err <= 1e-8, "cg n={n}: error {err}");
    }
    assert!(start.elapsed().as_secs_f64() < 30.0);
}

fn arnoldi_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = (0.0f64, 0.0f64);
    for _ in 0..60 {
        let n = rng.random_range(4..=200);
        let m = rng.random_range(1..=50).min(n / 2);
        // unshifted random sparse operator; see the core crate's notes on
        // orthogonality loss for rapidly converging spectra
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, rng.random_range(-1.0..1.0)));
            for _ in 0..4 {
                t.push((i, rng.random_range(0..n), rng.random_range(-1.0..1.0)));
            }
        }
        let a = CsrMatrix::from_triplets(n, n, &t).unwrap();
        let mut v1 = random_vector(&mut rng, n);
        v1.scale(1.0 / v1.norm2());
        let basis = arnoldi_expand(|x| a.spmv(x), v1, m).unwrap();
        let ortho = basis.orthonormality_error();
        let rel = arnoldi_relation_residual(&a, &basis).unwrap();
        assert!(ortho <= 1e-10, "n={n} m={m}: orthonormality {ortho}");
        assert!(rel <= 1e-10, "n={n} m={m}: relation {rel}");
        worst = (worst.0.max(ortho), worst.1.max(rel));
    }
    println!("    worst orthonormality {:.2e}, worst relation {:.2e}", worst.0, worst.1);
}

fn cg_theory() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for seed in 0..20 {
        let n = rng.random_range(5..=100);
        let a = spd_random(n, seed).unwrap();
        let b = random_vector(&mut rng, n);
        let x_star = dense_solve_oracle(&a.to_dense(), &b).unwrap();
        let kappa = condition_number_spd_oracle(&a.to_dense()).unwrap();
        let rate = (kappa.sqrt() - 1.0) / (kappa.sqrt() + 1.0);
        let mut states = Vec::new();
        let report = cg_solve_observed(
            &a,
            &b,
            &DenseVector::zeros(n),
            &SolverConfig::new(1e-10, 10 * n),
            &TriangularFactors::identity(n),
            |s| states.push(s.clone()),
        )
        .unwrap();
        assert_eq!(report.status, Status::Converged);
        let e0 = a_norm(&a, &x_star);
        let mut prev = e0;
        for s in &states[1..] {
            let e = a_norm(&a, &s.x.sub(&x_star));
            assert!(e < prev, "n={n}: A-norm error rose at k={}", s.k);
            let bound = 2.0 * rate.powi(s.k as i32);
            assert!(e / e0 <= bound * (1.0 + 1e-10) + 1e-12, "n={n} k={}: {} > {bound}", s.k, e / e0);
            prev = e;
        }
    }
}

/// Doolittle LU without pivoting.
fn dense_lu(a: &DenseMatrix) -> (DenseMatrix, DenseMatrix) {
    let n = a.n_rows();
    let mut l = DenseMatrix::identity(n);
    let mut u = a.clone();
    for k in 0..n {
        for i in k + 1..n {
            let f = u[(i, k)] / u[(k, k)];
            l[(i, k)] = f;
            for j in k..n {
                u[(i, j)] -= f * u[(k, j)];
            }
        }
    }
    (l, u)
}

fn dense_cholesky(a: &DenseMatrix) -> DenseMatrix {
    let n = a.n_rows();
    let mut l = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[(i, k)] * l[(j, k)]).sum();
            l[(i, j)] = if i == j { (a[(i, i)] - s).sqrt() } else { (a[(i, j)] - s) / l[(j, j)] };
        }
    }
    l
}

fn assert_zero_fill(a: &CsrMatrix, f: &TriangularFactors) {
    let n = a.n_rows();
    let mut parts = vec![f.lower()];
    parts.extend(f.upper());
    for m in parts {
        for (i, j, _) in m.iter() {
            assert!(a.find(i, j).is_some(), "fill at ({i}, {j})");
        }
    }
    let bound = match f.upper() {
        Some(_) => a.nnz() + n,
        None => a.nnz(),
    };
    assert!(f.nnz() <= bound, "{} stored factor entries for nnz(A) = {}", f.nnz(), a.nnz());
}

fn preconditioner_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [2, 10, 33, 50] {
        // nonsymmetric tridiagonal for ILU(0)
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 4.0 + rng.random_range(0.0..1.0)));
            if i > 0 {
                t.push((i, i - 1, rng.random_range(-1.0..1.0)));
            }
            if i + 1 < n {
                t.push((i, i + 1, rng.random_range(-1.0..1.0)));
            }
        }
        let tri = CsrMatrix::from_triplets(n, n, &t).unwrap();
        let f = ilu0(&tri).unwrap();
        let (l, u) = dense_lu(&tri.to_dense());
        assert!(f.lower().to_dense().max_abs_diff(&l).unwrap() <= 1e-12);
        assert!(f.upper().unwrap().to_dense().max_abs_diff(&u).unwrap() <= 1e-12);
        let b = random_vector(&mut rng, n);
        let cfg = SolverConfig::new(1e-12, n).with_preconditioner(Preconditioner::Ilu0);
        let r = gmres_solve(&tri, &b, &DenseVector::zeros(n), &cfg).unwrap();
        assert!(r.status.is_success() && r.iterations == 1, "gmres+ilu0 n={n}: {} its", r.iterations);

        let lap = laplacian1d(n).unwrap();
        let f = ic0(&lap).unwrap();
        let l = dense_cholesky(&lap.to_dense());
        assert!(f.lower().to_dense().max_abs_diff(&l).unwrap() <= 1e-12);
        let cfg = SolverConfig::new(1e-12, n).with_preconditioner(Preconditioner::Ic0);
        let r = cg_solve(&lap, &b, &DenseVector::zeros(n), &cfg).unwrap();
        assert!(r.status == Status::Converged && r.iterations == 1, "cg+ic0 n={n}: {} its", r.iterations);
    }

    let mut corpus = vec![laplacian1d(40).unwrap(), laplacian2d(400).unwrap(), example1()];
    for seed in 0..5 {
        corpus.push(diag_dominant(300, seed, false).unwrap());
        corpus.push(diag_dominant(300, seed, true).unwrap());
        corpus.push(spd_random(300, seed).unwrap());
    }
    for a in &corpus {
        assert_zero_fill(a, &ilu0(a).unwrap());
        if a.check_symmetric(1e-10).is_ok() {
            assert_zero_fill(a, &ic0(a).unwrap());
        }
    }
}

fn acceleration() {
    let start = Instant::now();
    let iterations = |a: &CsrMatrix, method: &str, p: Preconditioner| {
        let n = a.n_rows();
        let cfg = SolverConfig::new(1e-7, 10 * n).with_preconditioner(p);
        let x0 = DenseVector::zeros(n);
        let b = DenseVector::ones(n);
        let r = if method == "cg" { cg_solve(a, &b, &x0, &cfg) } else { gmres_solve(a, &b, &x0, &cfg) }.unwrap();
        assert_eq!(r.status, Status::Converged, "{method}+{p}");
        r.iterations
    };
    let lap = laplacian2d(900).unwrap();
    let dd = diag_dominant(1000, 11, false).unwrap();
    let dd_sym = diag_dominant(1000, 11, true).unwrap();
    for (name, a, method, p) in [
        ("laplacian2d", &lap, "gmres", Preconditioner::Ilu0),
        ("laplacian2d", &lap, "cg", Preconditioner::Ic0),
        ("diag_dominant", &dd, "gmres", Preconditioner::Ilu0),
        ("diag_dominant symmetric", &dd_sym, "cg", Preconditioner::Ic0),
    ] {
        let plain = iterations(a, method, Preconditioner::None);
        let pre = iterations(a, method, p);
        println!("    {name}: {method} {plain} iterations, {method}+{p} {pre}");
        assert!(pre < plain);
    }
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

fn restart_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let n = rng.random_range(5..=40);
        let a = random_dense(&mut rng, n, (n as f64).sqrt());
        let b = random_vector(&mut rng, n);
        let x0 = DenseVector::zeros(n);
        let cfg = SolverConfig::new(1e-10, 200);
        let full = gmres_solve(&a, &b, &x0, &cfg).unwrap();
        let restarted = gmres_restarted(&a, &b, &x0, &cfg.with_restart(full.iterations.max(1))).unwrap();
        assert_eq!(restarted.iterations, full.iterations);
        let diff = restarted.solution.sub(&full.solution).norm_inf();
        assert!(diff <= 1e-12, "n={n}: restarted differs by {diff}");
    }

    let a = laplacian1d(1000).unwrap();
    let cfg = SolverConfig::new(1e-7, 100).with_restart(20);
    let r = gmres_restarted(&a, &DenseVector::ones(1000), &DenseVector::zeros(1000), &cfg).unwrap();
    assert_eq!(r.peak_basis_columns, 21, "peak basis columns");
    let full =
        gmres_solve(&a, &DenseVector::ones(1000), &DenseVector::zeros(1000), &SolverConfig::new(1e-7, 100)).unwrap();
    assert_eq!(full.peak_basis_columns, 101);
}

fn krylov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krylov")).args(args).output().expect("spawn krylov")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn summary_field<'a>(line: &'a str, key: &str) -> &'a str {
    line.split_whitespace().find_map(|kv| kv.strip_prefix(key)?.strip_prefix('=')).unwrap()
}

fn cli_contract() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let examples = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    let ex1 = examples.join("example1.mtx");
    let ex1_rhs = examples.join("example1_rhs.txt");

    // worked example through the binary
    let o = krylov(&["solve", "--matrix", path_str(&ex1), "--rhs", path_str(&ex1_rhs)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let x = mtx::parse_vector(&String::from_utf8_lossy(&o.stdout)).unwrap();
    for (&got, want) in x.iter().zip([-2.18, 1.84, -0.6]) {
        close(got, want, 0.01, "cli solution");
    }
    let line = stderr(&o);
    assert!(line.starts_with("method=gmres precond=none "), "{line}");
    assert!(summary_field(&line, "iters").parse::<usize>().unwrap() <= 3);
    assert!(summary_field(&line, "relres").parse::<f64>().unwrap() <= 1e-10);

    // error classes
    let missing = d.join("no_such_rhs.txt");
    let o = krylov(&["solve", "--matrix", path_str(&ex1), "--rhs", path_str(&missing)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(path_str(&missing)), "{}", stderr(&o));
    let o = krylov(&["solve", "--matrix", path_str(&examples.join("asymmetric.mtx")), "--method", "cg"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("matrix not symmetric: entries (0, 1) and (1, 0)"), "{}", stderr(&o));
    let o = krylov(&["solve", "--matrix", path_str(&ex1), "--method", "gmres_restarted"]);
    assert_eq!(o.status.code(), Some(1));
    let o = krylov(&["solve", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    let o = krylov(&["solve", "--matrix", path_str(&ex1), "--maxit", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("status=budget_exhausted"));

    // generator determinism
    let (g1, g2) = (d.join("g1.mtx"), d.join("g2.mtx"));
    for g in [&g1, &g2] {
        let o = krylov(&["generate", "--kind", "diag_dominant", "--n", "100", "--seed", "7", "--out", path_str(g)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&g1).unwrap(), std::fs::read(&g2).unwrap());
    let o = krylov(&["generate", "--kind", "laplacian1d", "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));

    // history schema and run determinism
    let (h1, h2) = (d.join("h1.csv"), d.join("h2.csv"));
    let mut outputs = Vec::new();
    for h in [&h1, &h2] {
        let o = krylov(&["solve", "--matrix", path_str(&g1), "--precond", "ilu0", "--history", path_str(h)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        outputs.push((o.stdout, o.stderr));
    }
    assert_eq!(outputs[0], outputs[1]);
    let csv = std::fs::read_to_string(&h1).unwrap();
    assert_eq!(csv, std::fs::read_to_string(&h2).unwrap());
    assert_eq!(csv.lines().next(), Some("iteration,cycle,absolute_residual,relative_residual"));
    for line in csv.lines().skip(1) {
        for field in line.split(',').skip(2) {
            let mantissa = field.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{field}");
        }
    }
    let records: Vec<HistoryRecord> = history::read_history(&h1).unwrap();
    assert_eq!(records[0].iteration, 0);

    // comparisons
    let lap = d.join("lap.mtx");
    krylov(&["generate", "--kind", "laplacian2d", "--n", "900", "--out", path_str(&lap)]);
    let iters_of = |table: &str| -> Vec<(String, usize, String)> {
        table
            .lines()
            .skip(1)
            .map(|l| {
                let f: Vec<_> = l.split(',').collect();
                (f[0].to_string(), f[1].parse().unwrap(), f[3].to_string())
            })
            .collect()
    };
    let hist_dir = d.join("hist");
    for variants in ["gmres+none,gmres+ilu0", "cg+none,cg+ic0"] {
        let o =
            krylov(&["compare", "--matrix", path_str(&lap), "--variant", variants, "--history", path_str(&hist_dir)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let table = String::from_utf8(o.stdout).unwrap();
        assert!(table.starts_with("variant,iters,relres,status\n"));
        let rows = iters_of(&table);
        let names: Vec<_> = variants.split(',').collect();
        assert_eq!(rows.iter().map(|r| r.0.as_str()).collect::<Vec<_>>(), names);
        assert!(rows.iter().all(|r| r.2 == "converged"), "{table}");
        assert!(rows[1].1 < rows[0].1, "{table}");
        for name in names {
            history::read_history(&hist_dir.join(format!("{name}.csv"))).unwrap();
        }
    }
    let o = krylov(&["compare", "--matrix", path_str(&ex1), "--rhs", path_str(&ex1_rhs), "--variant", "gmres"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = iters_of(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].0, "gmres+none");
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("first worked example (GMRES, 3x3)", example1_golden),
        ("second worked example (multiple right-hand sides)", example2_golden),
        ("large sparse surrogate and dense restarted run", large_system_surrogate),
        ("GMRES and CG against the dense oracle", oracle_equivalence),
        ("Arnoldi orthonormality and relation", arnoldi_invariants),
        ("CG error monotonicity and convergence envelope", cg_theory),
        ("preconditioner exactness and zero fill", preconditioner_exactness),
        ("preconditioning reduces iterations", acceleration),
        ("restart equivalence and basis storage", restart_equivalence),
        ("CLI exit codes, CSV schema and determinism", cli_contract),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let ok = panic::catch_unwind(AssertUnwindSafe(check)).is_ok();
        let secs = start.elapsed().as_secs_f64();
        println!("{} criterion {:>2}: {name} ({secs:.2}s)", if ok { "PASS" } else { "FAIL" }, k + 1);
        failed += usize::from(!ok);
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
