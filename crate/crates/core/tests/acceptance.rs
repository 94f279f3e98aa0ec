//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the
//! process exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{random_unitary, singular_form, singular_form_problem, with_singular_values};
use qfmin_core::l2::{example1_convergence, example1_limit, example1_solve};
use qfmin_core::minimizers::objective;
use qfmin_core::oracle::instances::{
    random_low_rank, random_pd_problem, random_psd_problem, random_vector,
};
use qfmin_core::oracle::{kkt_solve, reduced_solve, worst_increment};
use qfmin_core::pinv::penrose_residuals;
use qfmin_core::{
    eigh, minimize_posdef, minimize_posdef_diag, minimize_psd_complement, pinv,
    reverse_order_holds, try_cor1_shortcut, Complex64, Matrix, QpProblem, RMatrix, RVector, Scalar,
    Tol, Vector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Box<dyn Fn() -> qfmin_core::Result<f64>>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion(id: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            o.pass = false;
            o.detail.push_str(&format!("; runtime exceeds {limit:?}"));
        }
    }
    println!(
        "{} criterion {id} ({title}): {} [{elapsed:.2?}]",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail
    );
    o.pass
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn variational_check<S: Scalar<Real = f64>>(p: &QpProblem<S>, x: &Vector<S>, seed: u64) -> Check {
    let (p, x) = (p.clone(), x.clone());
    Box::new(move || worst_increment(p.t(), p.a(), p.b(), &x, 20, seed, p.tol()))
}

fn singular_form_regression(checks: &mut Vec<Check>) -> Outcome {
    let p = singular_form_problem();
    let r = match minimize_psd_complement(&p) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: format!("solver error: {e}"),
            }
        }
    };
    let printed = [-2.8572, 10.0, -5.7143];
    let x_err = (0..3)
        .map(|i| (r.xhat[i] - printed[i]).abs())
        .fold(0.0, f64::max);
    let min_err = (r.min_value - 5442.857).abs();

    // ‖(A·U₁·R†)†b‖² from the eigenbasis of the nonzero spectrum.
    let e = eigh(p.t()).unwrap();
    let keep: Vec<usize> = (0..3)
        .filter(|&i| e.lambda[i] > 1e-8 * e.max_abs())
        .collect();
    let r_dag: Vec<f64> = keep.iter().map(|&i| 1.0 / e.lambda[i].sqrt()).collect();
    let m = p
        .a()
        .matmul(&e.q.select_columns(&keep))
        .unwrap()
        .matmul(&RMatrix::from_real_diag(&r_dag))
        .unwrap();
    let y = pinv(&m, &Tol::default()).unwrap().mul_vec(p.b()).unwrap();
    let quad = objective(p.t(), &r.xhat).unwrap();
    let formula_err = rel(y.norm_sqr(), quad);

    checks.push(variational_check(&p, &r.xhat, 1));
    Outcome {
        pass: x_err <= 2e-4 && min_err <= 0.05 && formula_err <= 1e-9,
        detail: format!(
            "x̂ = ({:.6}, {:.6}, {:.6}), max coord err {x_err:.2e}; min {:.6} (err {min_err:.2e}); \
             closed-form vs quadratic form rel err {formula_err:.2e}",
            r.xhat[0], r.xhat[1], r.xhat[2], r.min_value
        ),
    }
}

fn singular_form_null_direction() -> Outcome {
    let p = singular_form_problem();
    let v = RVector::from_real(&[4.0, 0.0, -2.0]).unwrap();
    let av = p.a().mul_vec(&v).unwrap()[0];
    let q = objective(&singular_form(), &v).unwrap();
    let restricted = minimize_psd_complement(&p)
        .map(|r| r.min_value)
        .unwrap_or(f64::NAN);
    Outcome {
        pass: (av - 10.0).abs() <= 1e-12 && q.abs() <= 1e-9,
        detail: format!("Av = {av}, ⟨v, Qv⟩ = {q:.2e}, restricted minimum {restricted:.6}"),
    }
}

fn example1_convergence_check() -> Outcome {
    let n = 10_000;
    let mut sizes: Vec<usize> = (1..=20).collect();
    sizes.extend([50, 100, 127, 128, 200, 500, 1000, 2000, 5000, n]);
    let s = match example1_convergence::<f64>(&sizes) {
        Ok(s) => s,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: format!("error: {e}"),
            }
        }
    };
    let limit = example1_limit::<f64>();
    let last_err = *s.errors.last().unwrap();
    let monotone = s.min_values.windows(2).all(|w| w[0] < w[1]);
    let below = s.min_values.iter().all(|&v| v < limit);

    let r = example1_solve::<f64>(n).unwrap();
    let expect = Vector::from_fn(n + 1, |i| if i == 0 { 0.0 } else { 1.0 / i as f64 });
    let entry_err = r.xhat.max_abs_diff(&expect);
    Outcome {
        pass: last_err <= 3.1e-4 && monotone && below && entry_err <= 1e-10,
        detail: format!(
            "n = {n}: min {:.10}, limit 7π²/24 = {limit:.10}, gap {last_err:.3e}; \
             monotone over {} sizes: {monotone}; minimizer max entry err {entry_err:.1e}",
            s.min_values.last().unwrap(),
            sizes.len()
        ),
    }
}

fn penrose_case<S: Scalar<Real = f64>>(rng: &mut ChaCha8Rng) -> f64 {
    let rows = rng.gen_range(1..=15);
    let cols = rng.gen_range(1..=15);
    let rank = rng.gen_range(0..=rows.min(cols));
    let a = random_low_rank::<S, _>(rng, rows, cols, rank);
    let x = pinv(&a, &Tol::default()).unwrap();
    penrose_residuals(&a, &x)
        .unwrap()
        .into_iter()
        .fold(0.0, f64::max)
}

fn penrose_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for i in 0..200 {
        let r = if i % 2 == 0 {
            penrose_case::<f64>(&mut rng)
        } else {
            penrose_case::<Complex64>(&mut rng)
        };
        worst = worst.max(r);
        failures += usize::from(r.is_nan() || r > 1e-10);
    }
    Outcome {
        pass: failures == 0,
        detail: format!("200 matrices, worst relative residual {worst:.2e}, {failures} over 1e-10"),
    }
}

#[derive(Default)]
struct OracleStats {
    cases: usize,
    failures: usize,
    worst_min: f64,
    worst_x: f64,
    worst_path: f64,
    path_failures: usize,
}

impl OracleStats {
    fn record(&mut self, min_err: f64, x_err: f64) {
        self.cases += 1;
        self.worst_min = self.worst_min.max(min_err);
        self.worst_x = self.worst_x.max(x_err);
        self.failures += usize::from(!(min_err <= 1e-8 && x_err <= 1e-6));
    }
}

fn pd_case<S: Scalar<Real = f64>>(
    rng: &mut ChaCha8Rng,
    stats: &mut OracleStats,
    checks: &mut Vec<Check>,
) {
    let n = rng.gen_range(1..=20);
    let m = rng.gen_range(1..=n);
    let p = random_pd_problem::<S, _>(rng, n, m).unwrap();
    let diag = minimize_posdef_diag(&p).unwrap();
    let root = minimize_posdef(&p).unwrap();
    let o = kkt_solve(p.t(), p.a(), p.b(), p.tol()).unwrap();
    stats.record(rel(root.min_value, o.min_value), root.xhat.distance(&o.x));
    let path = diag.xhat.distance(&root.xhat);
    stats.worst_path = stats.worst_path.max(path);
    stats.path_failures += usize::from(path.is_nan() || path > 1e-9);
    let seed = rng.gen();
    checks.push(variational_check(&p, &diag.xhat, seed));
    checks.push(variational_check(&p, &root.xhat, seed));
}

fn psd_case<S: Scalar<Real = f64>>(
    rng: &mut ChaCha8Rng,
    stats: &mut OracleStats,
    checks: &mut Vec<Check>,
) {
    let n = rng.gen_range(2..=20);
    let deficiency = rng.gen_range(1..n);
    let m = rng.gen_range(1..=n);
    let p = random_psd_problem::<S, _>(rng, n, m, deficiency).unwrap();
    let r = minimize_psd_complement(&p).unwrap();
    let o = reduced_solve(p.t(), p.a(), p.b(), p.tol()).unwrap();
    stats.record(rel(r.min_value, o.min_value), r.xhat.distance(&o.x));
    checks.push(variational_check(&p, &r.xhat, rng.gen()));
}

fn oracle_equivalence(checks: &mut Vec<Check>, pd: &mut OracleStats) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut psd = OracleStats::default();
    for i in 0..100 {
        if i % 2 == 0 {
            pd_case::<f64>(&mut rng, pd, checks);
            psd_case::<f64>(&mut rng, &mut psd, checks);
        } else {
            pd_case::<Complex64>(&mut rng, pd, checks);
            psd_case::<Complex64>(&mut rng, &mut psd, checks);
        }
    }
    Outcome {
        pass: pd.failures == 0 && psd.failures == 0,
        detail: format!(
            "PD vs KKT: {} cases, worst min rel {:.1e}, worst x {:.1e}, {} failures; \
             PSD vs reduced: {} cases, worst min rel {:.1e}, worst x {:.1e}, {} failures",
            pd.cases,
            pd.worst_min,
            pd.worst_x,
            pd.failures,
            psd.cases,
            psd.worst_min,
            psd.worst_x,
            psd.failures
        ),
    }
}

fn cor1_case<S: Scalar<Real = f64>>(
    rng: &mut ChaCha8Rng,
    diagonal: bool,
    checks: &mut Vec<Check>,
) -> Result<f64, String> {
    let n = rng.gen_range(2..=12);
    let u = if diagonal {
        Matrix::identity(n)
    } else {
        random_unitary::<S, _>(rng, n)
    };
    let lambda: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..5.0)).collect();
    let zeros = rng.gen_range(0..n);
    let a_diag: Vec<f64> = (0..n)
        .map(|i| {
            if i < zeros {
                0.0
            } else {
                rng.gen_range(0.5..3.0)
            }
        })
        .collect();
    let t = with_singular_values(&u, &lambda, &u).hermitian_part();
    let a = with_singular_values(&u, &a_diag, &u);
    let b = a.mul_vec(&random_vector::<S, _>(rng, n)).unwrap();
    let p = QpProblem::new(t, a, b).unwrap();
    let short = try_cor1_shortcut(&p)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| "shortcut not applicable".to_string())?;
    let full = minimize_posdef(&p).map_err(|e| e.to_string())?;
    checks.push(variational_check(&p, &short.xhat, rng.gen()));
    Ok(short.xhat.distance(&full.xhat))
}

fn cor1_bridge(checks: &mut Vec<Check>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for i in 0..20 {
        let r = match i % 3 {
            0 => cor1_case::<f64>(&mut rng, true, checks),
            1 => cor1_case::<f64>(&mut rng, false, checks),
            _ => cor1_case::<Complex64>(&mut rng, false, checks),
        };
        match r {
            Ok(d) if d <= 1e-8 => worst = worst.max(d),
            Ok(d) => failures.push(format!("case {i}: distance {d:.1e}")),
            Err(e) => failures.push(format!("case {i}: {e}")),
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "20 invariant-range constructions, worst ‖A†b − x̂‖ = {worst:.1e}; {failures:?}"
        ),
    }
}

fn commuting_pair<S: Scalar<Real = f64>>(rng: &mut ChaCha8Rng) -> (Matrix<S>, Matrix<S>) {
    let (m, k, p) = (
        rng.gen_range(1..=8),
        rng.gen_range(1..=8),
        rng.gen_range(1..=8),
    );
    let mut sv = |len: usize| -> Vec<f64> {
        (0..len)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    0.0
                } else {
                    rng.gen_range(0.5..4.0)
                }
            })
            .collect()
    };
    let (da, db) = (sv(m.min(k)), sv(k.min(p)));
    let (u, v, w) = (
        random_unitary::<S, _>(rng, m),
        random_unitary::<S, _>(rng, k),
        random_unitary::<S, _>(rng, p),
    );
    (
        with_singular_values(&u, &da, &v),
        with_singular_values(&v, &db, &w),
    )
}

fn generic_pair<S: Scalar<Real = f64>>(rng: &mut ChaCha8Rng) -> (Matrix<S>, Matrix<S>) {
    let k = rng.gen_range(3..=8);
    let (m, p) = (rng.gen_range(2..=8), rng.gen_range(2..=8));
    let ra = rng.gen_range(1..k.min(m + 1));
    let rb = rng.gen_range(1..k.min(p + 1));
    (
        random_low_rank(rng, m, k, ra),
        random_low_rank(rng, k, p, rb),
    )
}

fn reverse_order() -> Outcome {
    let tol = Tol::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut commuting_failures = 0;
    let mut worst_commuting = 0.0f64;
    for i in 0..50 {
        let rep = if i % 2 == 0 {
            let (a, b) = commuting_pair::<f64>(&mut rng);
            reverse_order_holds(&a, &b, &tol).unwrap()
        } else {
            let (a, b) = commuting_pair::<Complex64>(&mut rng);
            reverse_order_holds(&a, &b, &tol).unwrap()
        };
        worst_commuting = worst_commuting.max(rep.direct_residual);
        commuting_failures += usize::from(!(rep.holds && rep.direct_residual <= 1e-8));
    }

    let (mut false_pairs, mut violated, mut attempts) = (0, 0, 0);
    let mut logged = Vec::new();
    while false_pairs < 50 && attempts < 500 {
        attempts += 1;
        let rep = if attempts % 2 == 0 {
            let (a, b) = generic_pair::<f64>(&mut rng);
            reverse_order_holds(&a, &b, &tol).unwrap()
        } else {
            let (a, b) = generic_pair::<Complex64>(&mut rng);
            reverse_order_holds(&a, &b, &tol).unwrap()
        };
        if rep.holds {
            continue;
        }
        false_pairs += 1;
        if rep.direct_residual > 1e-6 {
            violated += 1;
        } else {
            logged.push(format!("{:.1e}", rep.direct_residual));
        }
    }
    Outcome {
        pass: commuting_failures == 0 && false_pairs == 50 && violated >= 45,
        detail: format!(
            "commuting: 50 pairs, {commuting_failures} failures, worst direct residual \
             {worst_commuting:.1e}; generic: {violated}/{false_pairs} violate the law \
             (not violated: {logged:?})"
        ),
    }
}

fn variational(checks: &[Check]) -> Outcome {
    let mut worst = f64::INFINITY;
    let mut failures = 0;
    let mut errors = Vec::new();
    for (i, c) in checks.iter().enumerate() {
        match c() {
            Ok(w) => {
                worst = worst.min(w);
                failures += usize::from(w.is_nan() || w < -1e-10);
            }
            Err(e) => errors.push(format!("output {i}: {e}")),
        }
    }
    Outcome {
        pass: failures == 0 && errors.is_empty(),
        detail: format!(
            "{} solver outputs, 20 feasible directions each; smallest objective change \
             {worst:.2e}; {failures} decreases beyond 1e-10; errors {errors:?}",
            checks.len()
        ),
    }
}

fn main() -> ExitCode {
    let mut checks: Vec<Check> = Vec::new();
    let mut pd = OracleStats::default();
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "singular form regression", Some(secs(1)), || {
            singular_form_regression(&mut checks)
        }),
        criterion(
            2,
            "singular form null direction",
            None,
            singular_form_null_direction,
        ),
        criterion(
            3,
            "shift section convergence",
            Some(secs(60)),
            example1_convergence_check,
        ),
        criterion(4, "Penrose equations", Some(secs(30)), penrose_suite),
        criterion(5, "oracle equivalence", Some(secs(60)), || {
            oracle_equivalence(&mut checks, &mut pd)
        }),
        criterion(6, "path agreement", None, || Outcome {
            pass: pd.cases == 100 && pd.path_failures == 0,
            detail: format!(
                "{} PD instances, worst ‖x̂_diag − x̂_root‖ = {:.1e}, {} over 1e-9",
                pd.cases, pd.worst_path, pd.path_failures
            ),
        }),
        criterion(7, "invariant-range shortcut", None, || {
            cor1_bridge(&mut checks)
        }),
        criterion(8, "reverse order law", None, reverse_order),
        criterion(9, "variational property", None, || variational(&checks)),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} acceptance criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
