use proptest::prelude::*;
use qfmin_core::oracle::instances::{
    random_low_rank, random_matrix, random_pd, random_pd_problem, random_psd, random_psd_problem,
};
use qfmin_core::pinv::penrose_residuals;
use qfmin_core::{
    eigh, minimize_posdef, minimize_posdef_diag, minimize_psd_complement, pinv, projector_range,
    projector_rangestar, sqrt_psd, svd, Complex64, Matrix, Scalar, TolConfig,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type TestResult = Result<(), TestCaseError>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn tol() -> TolConfig<f64> {
    TolConfig::default()
}

fn orthonormality_error<S: Scalar<Real = f64>>(q: &Matrix<S>) -> f64 {
    q.adjoint_matmul(q)
        .unwrap()
        .distance(&Matrix::identity(q.cols()))
}

fn svd_case<S: Scalar<Real = f64>>(seed: u64, rows: usize, cols: usize) -> TestResult {
    let a = random_matrix::<S, _>(&mut rng(seed), rows, cols);
    let s = svd(&a).unwrap();
    let scale = a.frobenius_norm().max(1.0);
    prop_assert!(s.reconstruct().distance(&a) <= 1e-12 * scale);
    prop_assert!(orthonormality_error(&s.u) <= 1e-12);
    prop_assert!(orthonormality_error(&s.v) <= 1e-12);
    prop_assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
    prop_assert!(s.sigma.iter().all(|&x| x >= 0.0));
    Ok(())
}

fn eigh_case<S: Scalar<Real = f64>>(seed: u64, n: usize) -> TestResult {
    let m = random_matrix::<S, _>(&mut rng(seed), n, n);
    let h = m.add(&m.adjoint()).unwrap().hermitian_part();
    let e = eigh(&h).unwrap();
    prop_assert!(e.reconstruct().distance(&h) <= 1e-12 * h.frobenius_norm().max(1.0));
    prop_assert!(orthonormality_error(&e.q) <= 1e-12);
    prop_assert!(e.lambda.windows(2).all(|w| w[0] <= w[1]));
    Ok(())
}

fn pinv_case<S: Scalar<Real = f64>>(
    seed: u64,
    rows: usize,
    cols: usize,
    rank: usize,
) -> TestResult {
    let a = random_low_rank::<S, _>(&mut rng(seed), rows, cols, rank.min(rows).min(cols));
    let x = pinv(&a, &tol()).unwrap();
    let r = penrose_residuals(&a, &x).unwrap();
    prop_assert!(r.iter().all(|&v| v <= 1e-10), "{r:?}");

    let scale = x.frobenius_norm().max(1e-300);
    let xs = pinv(&a.adjoint(), &tol()).unwrap();
    prop_assert!(xs.distance(&x.adjoint()) <= 1e-10 * scale);

    let back = pinv(&x, &tol()).unwrap();
    prop_assert!(back.distance(&a) <= 1e-8 * a.frobenius_norm().max(1.0));
    prop_assert_eq!(a.adjoint().adjoint(), a);
    Ok(())
}

fn projector_case<S: Scalar<Real = f64>>(
    seed: u64,
    rows: usize,
    cols: usize,
    rank: usize,
) -> TestResult {
    let a = random_low_rank::<S, _>(&mut rng(seed), rows, cols, rank.min(rows).min(cols));
    for (p, fixed) in [
        (projector_range(&a, &tol()).unwrap(), a.clone()),
        (projector_rangestar(&a, &tol()).unwrap(), a.adjoint()),
    ] {
        prop_assert!(p.matmul(&p).unwrap().distance(&p) <= 1e-12);
        prop_assert!(p.hermitian_residual() <= 1e-12);
        let pa = p.matmul(&fixed).unwrap();
        prop_assert!(pa.distance(&fixed) <= 1e-10 * fixed.frobenius_norm().max(1.0));
    }
    Ok(())
}

fn sqrt_case<S: Scalar<Real = f64>>(seed: u64, n: usize, rank: usize) -> TestResult {
    let t = random_psd::<S, _>(&mut rng(seed), n, rank.min(n));
    let r = sqrt_psd(&t, &tol()).unwrap();
    prop_assert!(r.hermitian_residual() <= 1e-12);
    prop_assert!(r.matmul(&r).unwrap().distance(&t) <= 1e-10 * t.frobenius_norm().max(1.0));
    prop_assert!(eigh(&r).unwrap().lambda[0] >= -1e-10 * r.frobenius_norm().max(1.0));
    Ok(())
}

fn solver_case<S: Scalar<Real = f64>>(seed: u64, n: usize, m: usize, c: f64) -> TestResult {
    let p = random_pd_problem::<S, _>(&mut rng(seed), n, m.min(n)).unwrap();
    let diag = minimize_posdef_diag(&p).unwrap();
    let root = minimize_posdef(&p).unwrap();
    prop_assert!(diag.xhat.distance(&root.xhat) <= 1e-9 * root.xhat.norm().max(1.0));

    // x̂ depends only on the level sets of the form, so scaling T moves the
    // minimum and leaves the minimizer fixed.
    let scaled = minimize_posdef(&p.scaled(c)).unwrap();
    prop_assert!(scaled.xhat.distance(&root.xhat) <= 1e-9 * root.xhat.norm().max(1.0));
    prop_assert!((scaled.min_value - c * root.min_value).abs() <= 1e-9 * scaled.min_value.max(1.0));
    prop_assert!(root.feasibility_residual <= 1e-9 * p.b().norm().max(1.0));
    Ok(())
}

fn complement_case<S: Scalar<Real = f64>>(seed: u64, n: usize, m: usize, def: usize) -> TestResult {
    let def = def.clamp(1, n - 1);
    let p = random_psd_problem::<S, _>(&mut rng(seed), n, m.min(n), def).unwrap();
    let r = minimize_psd_complement(&p).unwrap();
    let p_t = projector_range(p.t(), &tol()).unwrap();
    let off = r.xhat.sub(&p_t.mul_vec(&r.xhat).unwrap()).unwrap();
    prop_assert!(off.norm() <= 1e-9 * r.xhat.norm().max(1.0));
    prop_assert!(r.feasibility_residual <= 1e-8 * p.b().norm().max(1.0));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn svd_reconstructs(seed: u64, rows in 1usize..=50, cols in 1usize..=50, complex: bool) {
        if complex { svd_case::<Complex64>(seed, rows, cols)?; } else { svd_case::<f64>(seed, rows, cols)?; }
    }

    #[test]
    fn eigh_reconstructs(seed: u64, n in 1usize..=50, complex: bool) {
        if complex { eigh_case::<Complex64>(seed, n)?; } else { eigh_case::<f64>(seed, n)?; }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pinv_identities(seed: u64, rows in 1usize..=12, cols in 1usize..=12, rank in 0usize..=12, complex: bool) {
        if complex { pinv_case::<Complex64>(seed, rows, cols, rank)?; } else { pinv_case::<f64>(seed, rows, cols, rank)?; }
    }

    #[test]
    fn projectors_are_orthogonal(seed: u64, rows in 1usize..=12, cols in 1usize..=12, rank in 0usize..=12, complex: bool) {
        if complex { projector_case::<Complex64>(seed, rows, cols, rank)?; } else { projector_case::<f64>(seed, rows, cols, rank)?; }
    }

    #[test]
    fn psd_square_root(seed: u64, n in 1usize..=12, rank in 0usize..=12, complex: bool) {
        if complex { sqrt_case::<Complex64>(seed, n, rank)?; } else { sqrt_case::<f64>(seed, n, rank)?; }
    }

    #[test]
    fn posdef_paths_and_scaling(seed: u64, n in 1usize..=15, m in 1usize..=15, c in 1e-3f64..1e3, complex: bool) {
        if complex { solver_case::<Complex64>(seed, n, m, c)?; } else { solver_case::<f64>(seed, n, m, c)?; }
    }

    #[test]
    fn complement_minimizer_lies_in_range(seed: u64, n in 2usize..=15, m in 1usize..=15, def in 1usize..15, complex: bool) {
        if complex { complement_case::<Complex64>(seed, n, m, def)?; } else { complement_case::<f64>(seed, n, m, def)?; }
    }

    #[test]
    fn single_precision_smoke(seed: u64, rows in 1usize..=8, cols in 1usize..=8) {
        let a = random_matrix::<f32, _>(&mut rng(seed), rows, cols);
        let x = pinv(&a, &TolConfig::<f32>::default()).unwrap();
        let r = penrose_residuals(&a, &x).unwrap();
        prop_assert!(r.iter().all(|&v| v <= 1e-3), "{:?}", r);
        let t = random_pd::<f32, _>(&mut rng(seed ^ 1), cols);
        prop_assert!(eigh(&t).unwrap().lambda[0] > 0.0);
    }
}
