use num_traits::{Float, One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dense::{eigh_with, Matrix, Vector};
use crate::error::{Error, Result};
use crate::minimizers::{classify, feasible_bound, Definiteness};
use crate::oracle::instances::random_vector;
use crate::pinv::SubspaceBasis;
use crate::scalar::{RealScalar, Scalar};
use crate::tol::TolConfig;

const REFUTE_MARGIN: f64 = 1e-10;

/// Orthonormal basis of the directions `d` that keep a feasible point
/// feasible: `N(A)` when `T` is positive definite, `N(A) ∩ R(T)` when `T`
/// is singular (so the perturbed point stays in `N(T)^⊥`).
pub fn feasible_directions<S: Scalar>(
    t: &Matrix<S>,
    a: &Matrix<S>,
    tol: &TolConfig<S::Real>,
) -> Result<Matrix<S>> {
    let e = eigh_with(t, tol.htol)?;
    match classify(&e.lambda, tol) {
        Definiteness::PositiveDefinite => Ok(SubspaceBasis::null_space_of(a, tol)?.basis().clone()),
        Definiteness::SingularPsd { .. } => {
            let gate = tol.pd_rtol(t.rows()) * e.max_abs();
            let keep: Vec<usize> = (0..e.lambda.len())
                .filter(|&i| e.lambda[i] > gate)
                .collect();
            let range = e.q.select_columns(&keep);
            let inner = SubspaceBasis::null_space_of(&a.matmul(&range)?, tol)?;
            range.matmul(inner.basis())
        }
        Definiteness::Indefinite => Err(Error::NotPositive {
            eigenvalue: e.lambda[0].to_f64_lossy(),
        }),
    }
}

/// Smallest objective change `f(x + d) − f(x)` over `n_samples` random
/// feasible directions `d` at several scales. The change is evaluated as
/// `2·Re⟨d, Tx⟩ + ⟨d, Td⟩`, which avoids cancellation against a large `f(x)`.
/// Returns `+∞` when there is no feasible direction.
pub fn worst_increment<S: Scalar>(
    t: &Matrix<S>,
    a: &Matrix<S>,
    b: &Vector<S>,
    x: &Vector<S>,
    n_samples: usize,
    seed: u64,
    tol: &TolConfig<S::Real>,
) -> Result<S::Real> {
    let residual = a.mul_vec(x)?.distance(b);
    if residual > feasible_bound(b, tol) {
        return Err(Error::Infeasible {
            residual: residual.to_f64_lossy(),
        });
    }
    let dirs = feasible_directions(t, a, tol)?;
    if dirs.cols() == 0 {
        return Ok(S::Real::infinity());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grad = t.mul_vec(x)?;
    let base = S::Real::one().max(x.norm());
    let scales = [1e-4, 1e-2, 1.0, 1e2].map(|s| S::Real::lit(s) * base);
    let two = S::Real::lit(2.0);
    let mut worst = S::Real::infinity();
    for k in 0..n_samples {
        let z = random_vector::<S, _>(&mut rng, dirs.cols());
        let d = dirs.mul_vec(&z)?;
        let norm = d.norm();
        if norm == S::Real::zero() {
            continue;
        }
        let d = d.scale(scales[k % scales.len()] / norm);
        let change = two * d.dot(&grad).re() + d.dot(&t.mul_vec(&d)?).re();
        worst = worst.min(change);
    }
    Ok(worst)
}

/// `true` when no sampled feasible perturbation lowers the objective by more
/// than `1e-10`.
pub fn grid_refute<S: Scalar>(
    t: &Matrix<S>,
    a: &Matrix<S>,
    b: &Vector<S>,
    x: &Vector<S>,
    n_samples: usize,
    seed: u64,
    tol: &TolConfig<S::Real>,
) -> Result<bool> {
    Ok(worst_increment(t, a, b, x, n_samples, seed, tol)? >= -S::Real::lit(REFUTE_MARGIN))
}
