//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! Each off-diagonal pair is first made real by a diagonal unitary
//! similarity and then annihilated with a real plane rotation, so the same
//! code serves real symmetric and complex Hermitian input.

use num_traits::{Float, One, Zero};

use crate::dense::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Scalar};

const MAX_SWEEPS: usize = 100;

/// `A = Q · diag(λ) · Q*` with `Q` unitary and `λ` ascending.
#[derive(Debug, Clone)]
pub struct Eigen<S: Scalar> {
    pub q: Matrix<S>,
    pub lambda: Vec<S::Real>,
}

impl<S: Scalar> Eigen<S> {
    /// `Q · diag(f(λ)) · Q*`.
    pub fn apply_fn(&self, f: impl Fn(S::Real) -> S::Real) -> Matrix<S> {
        let n = self.lambda.len();
        let vals: Vec<S::Real> = self.lambda.iter().map(|&l| f(l)).collect();
        Matrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| (self.q[(i, k)] * self.q[(j, k)].conj()).scale(vals[k]))
                .sum()
        })
    }

    pub fn reconstruct(&self) -> Matrix<S> {
        self.apply_fn(|l| l)
    }

    pub fn max_abs(&self) -> S::Real {
        self.lambda
            .iter()
            .fold(S::Real::zero(), |acc, &l| acc.max(l.abs()))
    }
}

/// Eigendecomposition with the default Hermitian tolerance.
pub fn eigh<S: Scalar>(a: &Matrix<S>) -> Result<Eigen<S>> {
    eigh_with(a, S::Real::default_tol())
}

/// Eigendecomposition of a matrix that is Hermitian within
/// `‖A − A*‖ ≤ htol·‖A‖`. The Hermitian part is what gets factored.
pub fn eigh_with<S: Scalar>(a: &Matrix<S>, htol: S::Real) -> Result<Eigen<S>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            op: "eigh",
            left: a.shape(),
            right: (a.cols(), a.rows()),
        });
    }
    if let Some(k) = a.as_slice().iter().position(|x| !x.finite()) {
        return Err(Error::NonFinite {
            row: k / a.cols().max(1),
            col: k % a.cols().max(1),
        });
    }
    let norm = a.frobenius_norm();
    let residual = a.hermitian_residual();
    if residual > htol * norm {
        let rel = if norm > S::Real::zero() {
            residual / norm
        } else {
            residual
        };
        return Err(Error::NotHermitian {
            residual: rel.to_f64_lossy(),
        });
    }

    let n = a.rows();
    let mut w = a.hermitian_part();
    for i in 0..n {
        w[(i, i)] = S::from_real(w[(i, i)].re());
    }
    let mut q = Matrix::<S>::identity(n);
    let eps = S::Real::epsilon();
    let floor = eps * norm * S::Real::lit(1e-3);
    let two = S::Real::lit(2.0);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for r in p + 1..n {
                let apq = w[(p, r)];
                let g = apq.modulus();
                let app = w[(p, p)].re();
                let aqq = w[(r, r)].re();
                if g == S::Real::zero() || g <= floor || g <= eps * (app.abs() * aqq.abs()).sqrt() {
                    continue;
                }
                rotated = true;

                // Make the (p, r) entry real and positive.
                let d = apq.phase().conj();
                if S::IS_COMPLEX {
                    for k in 0..n {
                        w[(k, r)] *= d;
                        q[(k, r)] *= d;
                    }
                    let dc = d.conj();
                    for k in 0..n {
                        w[(r, k)] *= dc;
                    }
                }
                // After the phase step the pivot is real; in the real case it
                // already was (and may be negative).
                let pivot = if S::IS_COMPLEX { g } else { apq.re() };
                let theta = (aqq - app) / (two * pivot);
                let t = theta.signum() / (theta.abs() + (theta * theta + S::Real::one()).sqrt());
                let c = (t * t + S::Real::one()).sqrt().recip();
                let s = c * t;

                for k in 0..n {
                    let (kp, kr) = (w[(k, p)], w[(k, r)]);
                    w[(k, p)] = kp.scale(c) - kr.scale(s);
                    w[(k, r)] = kp.scale(s) + kr.scale(c);
                    let (qp, qr) = (q[(k, p)], q[(k, r)]);
                    q[(k, p)] = qp.scale(c) - qr.scale(s);
                    q[(k, r)] = qp.scale(s) + qr.scale(c);
                }
                for k in 0..n {
                    let (pk, rk) = (w[(p, k)], w[(r, k)]);
                    w[(p, k)] = pk.scale(c) - rk.scale(s);
                    w[(r, k)] = pk.scale(s) + rk.scale(c);
                }
                w[(p, r)] = S::zero();
                w[(r, p)] = S::zero();
                w[(p, p)] = S::from_real(w[(p, p)].re());
                w[(r, r)] = S::from_real(w[(r, r)].re());
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NonConvergence {
            routine: "eigh",
            sweeps: MAX_SWEEPS,
        });
    }

    let diag: Vec<S::Real> = (0..n).map(|i| w[(i, i)].re()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        diag[i]
            .partial_cmp(&diag[j])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(Eigen {
        q: q.select_columns(&order),
        lambda: order.iter().map(|&i| diag[i]).collect(),
    })
}
