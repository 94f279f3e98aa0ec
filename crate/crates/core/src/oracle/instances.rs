//! Random problem generators.
//!
//! Positive definite forms are `M*M + δI` (δ = 0.1); singular positive
//! semidefinite forms are `M_r*M_r` with `M_r` of `rank` rows. Right-hand
//! sides are `A·x₀` (resp. `A·P_T·x₀`) so every instance is feasible.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::dense::{Matrix, Vector};
use crate::error::Result;
use crate::minimizers::QpProblem;
use crate::pinv::projector_range;
use crate::scalar::{RealScalar, Scalar};
use crate::tol::TolConfig;

pub const PD_SHIFT: f64 = 0.1;

/// Standard normal entry; complex fields get independent real and
/// imaginary parts.
pub fn random_scalar<S: Scalar, G: Rng + ?Sized>(rng: &mut G) -> S {
    let re: f64 = rng.sample(StandardNormal);
    if S::IS_COMPLEX {
        let im: f64 = rng.sample(StandardNormal);
        S::from_parts(S::Real::lit(re), S::Real::lit(im)).expect("complex field")
    } else {
        S::from_real(S::Real::lit(re))
    }
}

pub fn random_matrix<S: Scalar, G: Rng + ?Sized>(
    rng: &mut G,
    rows: usize,
    cols: usize,
) -> Matrix<S> {
    Matrix::from_fn(rows, cols, |_, _| random_scalar(rng))
}

pub fn random_vector<S: Scalar, G: Rng + ?Sized>(rng: &mut G, n: usize) -> Vector<S> {
    Vector::from_fn(n, |_| random_scalar(rng))
}

/// Product of `rows × rank` and `rank × cols` Gaussian factors.
pub fn random_low_rank<S: Scalar, G: Rng + ?Sized>(
    rng: &mut G,
    rows: usize,
    cols: usize,
    rank: usize,
) -> Matrix<S> {
    let left = random_matrix::<S, G>(rng, rows, rank);
    let right = random_matrix::<S, G>(rng, rank, cols);
    left.matmul(&right).expect("inner dimensions agree")
}

pub fn random_pd<S: Scalar, G: Rng + ?Sized>(rng: &mut G, n: usize) -> Matrix<S> {
    let m = random_matrix::<S, G>(rng, n, n);
    let shift = Matrix::<S>::identity(n).scale(S::Real::lit(PD_SHIFT));
    m.adjoint_matmul(&m)
        .and_then(|g| g.add(&shift))
        .expect("square")
        .hermitian_part()
}

/// Positive semidefinite of the given rank.
pub fn random_psd<S: Scalar, G: Rng + ?Sized>(rng: &mut G, n: usize, rank: usize) -> Matrix<S> {
    let m = random_matrix::<S, G>(rng, rank, n);
    m.adjoint_matmul(&m).expect("shapes agree").hermitian_part()
}

/// Positive definite instance with an `m × n` constraint.
pub fn random_pd_problem<S: Scalar, G: Rng + ?Sized>(
    rng: &mut G,
    n: usize,
    m: usize,
) -> Result<QpProblem<S>> {
    let t = random_pd::<S, G>(rng, n);
    let a = random_matrix::<S, G>(rng, m, n);
    let b = a.mul_vec(&random_vector::<S, G>(rng, n))?;
    QpProblem::new(t, a, b)
}

/// Singular positive semidefinite instance with `rank(T) = n − deficiency`,
/// feasible on `N(T)^⊥`. Requires `m < n − deficiency` for the restricted
/// problem to have a nontrivial feasible set.
pub fn random_psd_problem<S: Scalar, G: Rng + ?Sized>(
    rng: &mut G,
    n: usize,
    m: usize,
    deficiency: usize,
) -> Result<QpProblem<S>> {
    let t = random_psd::<S, G>(rng, n, n - deficiency);
    let a = random_matrix::<S, G>(rng, m, n);
    let p_t = projector_range(&t, &TolConfig::default())?;
    let x0 = p_t.mul_vec(&random_vector::<S, G>(rng, n))?;
    let b = a.mul_vec(&x0)?;
    QpProblem::new(t, a, b)
}
