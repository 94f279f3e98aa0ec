//! Moore-Penrose pseudoinverse and the operator toolkit around it:
//! orthogonal projectors, EP decomposition, positive square roots,
//! invariant-subspace and reverse-order-law predicates, principal angles.

mod angles;
mod ep;
mod rank;
mod reverse_order;
mod sqrt;
mod subspace;

pub use angles::{principal_angle_diag, PrincipalAngle};
pub use ep::{ep_decompose, ep_residual, is_ep, EpDecomposition};
pub use rank::{rank_decide, RankDecision};
pub use reverse_order::{reverse_order_holds, ReverseOrderReport};
pub use sqrt::{sqrt_psd, sqrt_psd_eigen};
pub use subspace::{lat_invariant, lat_residual, SubspaceBasis};

use crate::dense::{svd, Matrix, Svd};
use crate::error::Result;
use num_traits::{Float, Zero};

use crate::scalar::Scalar;
use crate::tol::TolConfig;

/// Pseudoinverse together with the factorization and rank decision behind it.
#[derive(Debug, Clone)]
pub struct PinvParts<S: Scalar> {
    pub pinv: Matrix<S>,
    pub svd: Svd<S>,
    pub rank: RankDecision<S::Real>,
}

/// Moore-Penrose pseudoinverse `V·Σ⁺·U*`, inverting the singular values kept
/// by [`rank_decide`].
pub fn pinv<S: Scalar>(a: &Matrix<S>, tol: &TolConfig<S::Real>) -> Result<Matrix<S>> {
    Ok(pinv_parts(a, tol)?.pinv)
}

pub fn pinv_parts<S: Scalar>(a: &Matrix<S>, tol: &TolConfig<S::Real>) -> Result<PinvParts<S>> {
    let f = svd(a)?;
    let rank = rank_decide(&f.sigma, tol, a.shape());
    let r = rank.rank;
    let inv: Vec<S::Real> = f.sigma[..r].iter().map(|s| s.recip()).collect();
    let (m, n) = a.shape();
    let p = Matrix::from_fn(n, m, |i, j| {
        (0..r)
            .map(|k| (f.v[(i, k)] * f.u[(j, k)].conj()).scale(inv[k]))
            .sum()
    });
    Ok(PinvParts {
        pinv: p,
        svd: f,
        rank,
    })
}

/// `A·A†`, the orthogonal projector onto `R(A)`.
pub fn projector_range<S: Scalar>(a: &Matrix<S>, tol: &TolConfig<S::Real>) -> Result<Matrix<S>> {
    let basis = SubspaceBasis::range_of(a, tol)?;
    Ok(basis.projector())
}

/// `A†·A`, the orthogonal projector onto `R(A*) = N(A)^⊥`.
pub fn projector_rangestar<S: Scalar>(
    a: &Matrix<S>,
    tol: &TolConfig<S::Real>,
) -> Result<Matrix<S>> {
    let basis = SubspaceBasis::corange_of(a, tol)?;
    Ok(basis.projector())
}

/// Residuals of the four Penrose equations for a candidate `x ≈ A†`, each
/// relative to its natural scale:
/// `‖AXA − A‖/‖A‖`, `‖XAX − X‖/‖X‖`, `‖(AX)* − AX‖/(‖A‖‖X‖)`,
/// `‖(XA)* − XA‖/(‖A‖‖X‖)`.
pub fn penrose_residuals<S: Scalar>(a: &Matrix<S>, x: &Matrix<S>) -> Result<[S::Real; 4]> {
    let rel = |num: S::Real, den: S::Real| {
        if den > S::Real::zero() {
            num / den
        } else {
            num
        }
    };
    let na = a.frobenius_norm();
    let nx = x.frobenius_norm();
    let ax = a.matmul(x)?;
    let xa = x.matmul(a)?;
    let axa = ax.matmul(a)?;
    let xax = xa.matmul(x)?;
    Ok([
        rel(axa.distance(a), na),
        rel(xax.distance(x), nx),
        rel(ax.adjoint().distance(&ax), na * nx),
        rel(xa.adjoint().distance(&xa), na * nx),
    ])
}
