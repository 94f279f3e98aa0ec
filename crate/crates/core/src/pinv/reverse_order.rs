use num_traits::{Float, Zero};

use crate::dense::Matrix;
use crate::error::Result;
use crate::pinv::{pinv, pinv_parts, projector_range, projector_rangestar, RankDecision};
use crate::scalar::Scalar;
use crate::tol::TolConfig;

/// Evaluation of the reverse order law `(AB)† = B†A†`.
#[derive(Debug, Clone)]
pub struct ReverseOrderReport<R> {
    /// Both commutation conditions hold within `commute_tol`.
    pub holds: bool,
    /// `‖[A†A, BB*]‖ / ‖BB*‖`.
    pub residual_ii: R,
    /// `‖[BB†, A*A]‖ / ‖A*A‖`.
    pub residual_iii: R,
    /// `‖(AB)† − B†A†‖ / ‖(AB)†‖`, the law checked directly.
    pub direct_residual: R,
    /// Rank decision for `AB`; `ill_conditioned` is the finite-dimensional
    /// stand-in for "the range of AB is closed".
    pub product_rank: RankDecision<R>,
}

/// Tests the two commutation conditions `A†A·BB* = BB*·A†A` and
/// `BB†·A*A = A*A·BB†`. The remaining condition (closed range of `AB`) is
/// automatic for matrices and surfaces only through `product_rank`.
pub fn reverse_order_holds<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    tol: &TolConfig<S::Real>,
) -> Result<ReverseOrderReport<S::Real>> {
    let ab = a.matmul(b)?;
    let pa = projector_rangestar(a, tol)?;
    let bbs = b.matmul(&b.adjoint())?;
    let pb = projector_range(b, tol)?;
    let asa = a.adjoint_matmul(a)?;

    let residual_ii = relative(&commutator(&pa, &bbs)?, &bbs);
    let residual_iii = relative(&commutator(&pb, &asa)?, &asa);

    // Rounding in the computed product is of order ε‖A‖‖B‖, so its rank is
    // judged against that scale rather than against σmax(AB).
    let product_floor =
        tol.rank_rtol(ab.rows(), ab.cols()) * a.frobenius_norm() * b.frobenius_norm();
    let ab_tol = TolConfig {
        abs_floor: tol.abs_floor.max(product_floor),
        ..*tol
    };
    let ab_parts = pinv_parts(&ab, &ab_tol)?;
    let reversed = pinv(b, tol)?.matmul(&pinv(a, tol)?)?;
    let direct = ab_parts.pinv.distance(&reversed);
    let scale = ab_parts.pinv.frobenius_norm();
    let direct_residual = if scale > S::Real::zero() {
        direct / scale
    } else {
        direct
    };

    Ok(ReverseOrderReport {
        holds: residual_ii <= tol.commute_tol && residual_iii <= tol.commute_tol,
        residual_ii,
        residual_iii,
        direct_residual,
        product_rank: ab_parts.rank,
    })
}

fn commutator<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> Result<Matrix<S>> {
    x.matmul(y)?.sub(&y.matmul(x)?)
}

fn relative<S: Scalar>(num: &Matrix<S>, scale: &Matrix<S>) -> S::Real {
    let d = scale.frobenius_norm();
    let n = num.frobenius_norm();
    if d > S::Real::zero() {
        n / d
    } else {
        n
    }
}
