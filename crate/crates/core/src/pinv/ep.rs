use num_traits::{Float, One};

use crate::dense::{svd, Matrix};
use crate::error::{Error, Result};
use crate::pinv::{pinv, rank_decide};
use crate::scalar::{RealScalar, Scalar};
use crate::tol::TolConfig;

/// `‖TT† − T†T‖ / max(1, ‖T‖)`; infinite for non-square input.
pub fn ep_residual<S: Scalar>(t: &Matrix<S>, tol: &TolConfig<S::Real>) -> Result<S::Real> {
    if !t.is_square() {
        return Ok(S::Real::infinity());
    }
    let p = pinv(t, tol)?;
    let left = t.matmul(&p)?;
    let right = p.matmul(t)?;
    Ok(left.distance(&right) / S::Real::one().max(t.frobenius_norm()))
}

/// Whether `T` is EP: `TT† = T†T`, equivalently `R(T) = R(T*)`.
pub fn is_ep<S: Scalar>(t: &Matrix<S>, tol: &TolConfig<S::Real>) -> Result<bool> {
    Ok(ep_residual(t, tol)? <= tol.ep_tol)
}

/// Canonical form `T = U₁·(A₁ ⊕ 0)·U₁*` of an EP matrix.
///
/// The first `rank` columns of `u1` are an orthonormal basis of `R(T)`, the
/// rest one of `N(T)`; `a1` is `T` restricted to `R(T)` in that basis.
#[derive(Debug, Clone)]
pub struct EpDecomposition<S: Scalar> {
    pub u1: Matrix<S>,
    pub a1: Matrix<S>,
    pub rank: usize,
}

impl<S: Scalar> EpDecomposition<S> {
    pub fn reconstruct(&self) -> Result<Matrix<S>> {
        let n = self.u1.rows();
        let block = self.a1.embed(n, n);
        self.u1.matmul(&block)?.matmul(&self.u1.adjoint())
    }

    /// The leading `rank` columns of `u1` (a basis of `R(T)`).
    pub fn range_basis(&self) -> Matrix<S> {
        self.u1.select_columns(&(0..self.rank).collect::<Vec<_>>())
    }
}

/// Builds the EP canonical form from the SVD of `T`: `U₁` is the full set of
/// left singular vectors (kept block first), `A₁ = U_r*·T·U_r`.
pub fn ep_decompose<S: Scalar>(
    t: &Matrix<S>,
    tol: &TolConfig<S::Real>,
) -> Result<EpDecomposition<S>> {
    let residual = ep_residual(t, tol)?;
    if residual.is_nan() || residual > tol.ep_tol {
        return Err(Error::NotEp {
            residual: residual.to_f64_lossy(),
        });
    }
    let f = svd(t)?;
    let rank = rank_decide(&f.sigma, tol, t.shape()).rank;
    let ur = f.u.select_columns(&(0..rank).collect::<Vec<_>>());
    let mut a1 = ur.adjoint_matmul(&t.matmul(&ur)?)?;
    if t.is_hermitian(tol.htol) {
        a1 = a1.hermitian_part();
    }
    Ok(EpDecomposition { u1: f.u, a1, rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolConfig<f64> {
        TolConfig::default()
    }

    #[test]
    fn hermitian_and_invertible_are_ep() {
        let h = Matrix::<f64>::from_real_rows(&[[1.0, 2.0], [2.0, -3.0]]).unwrap();
        assert!(is_ep(&h, &tol()).unwrap());
        let inv = Matrix::<f64>::from_real_rows(&[[1.0, 5.0], [0.0, 2.0]]).unwrap();
        assert!(is_ep(&inv, &tol()).unwrap());
    }

    #[test]
    fn truncated_shift_is_not_ep() {
        let l = Matrix::<f64>::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        // LL† = diag(1, 0) projects onto R(L) = span{e1}, L†L = diag(0, 1) onto R(L*) = span{e2}.
        assert!(!is_ep(&l, &tol()).unwrap());
        assert!(matches!(ep_decompose(&l, &tol()), Err(Error::NotEp { .. })));
    }

    #[test]
    fn diag_with_zero() {
        let d = ep_decompose(&Matrix::<f64>::from_real_diag(&[0.0, 3.0]), &tol()).unwrap();
        assert_eq!(d.rank, 1);
        assert!((d.a1[(0, 0)] - 3.0).abs() < 1e-15);
        assert!((d.u1[(1, 0)].abs() - 1.0).abs() < 1e-15);
        assert!(
            d.reconstruct()
                .unwrap()
                .distance(&Matrix::from_real_diag(&[0.0, 3.0]))
                < 1e-15
        );
    }

    #[test]
    fn identity_decomposes_trivially() {
        let d = ep_decompose(&Matrix::<f64>::identity(3), &tol()).unwrap();
        assert_eq!(d.rank, 3);
        assert!(d.a1.distance(&Matrix::identity(3)) < 1e-14);
    }

    #[test]
    fn paper_form_reconstructs() {
        let q = Matrix::<f64>::from_real_rows(&[
            [14.0, 20.0, 28.0],
            [20.0, 83.0, 40.0],
            [28.0, 40.0, 56.0],
        ])
        .unwrap();
        let d = ep_decompose(&q, &tol()).unwrap();
        assert_eq!(d.rank, 2);
        assert!(d.reconstruct().unwrap().distance(&q) <= 1e-10 * q.frobenius_norm());
        assert!(d.a1.is_hermitian(1e-14));
    }
}
