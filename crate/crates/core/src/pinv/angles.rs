use num_traits::{Float, FloatConst, Zero};

use crate::dense::{svd, Matrix};
use crate::diagnostics::{Diagnostic, DiagnosticCode};
use crate::error::{Error, Result};
use crate::pinv::SubspaceBasis;
use crate::scalar::{RealScalar, Scalar};
use crate::tol::TolConfig;

/// Minimal principal angle between `H = N(A) ⊖ (N(A) ∩ R(B))` and `R(B)`.
///
/// In infinite dimensions a positive angle is what keeps `R(AB)` closed. In
/// finite dimensions ranges are always closed, so a small angle is reported
/// as a warning only.
#[derive(Debug, Clone)]
pub struct PrincipalAngle<R> {
    pub angle: R,
    /// `dim(N(A) ∩ R(B))`.
    pub intersection_dim: usize,
    pub warning: Option<Diagnostic>,
}

/// Computes [`PrincipalAngle`] for the product `A·B`. Directions of `N(A)`
/// whose angle to `R(B)` is below `ktol` are treated as the intersection.
/// A trivial `H` gives `π/2`.
pub fn principal_angle_diag<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    tol: &TolConfig<S::Real>,
) -> Result<PrincipalAngle<S::Real>> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: "principal_angle_diag",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let right_angle = S::Real::FRAC_PI_2();
    let null_a = SubspaceBasis::null_space_of(a, tol)?;
    let range_b = SubspaceBasis::range_of(b, tol)?;
    let (k, l) = (null_a.dim(), range_b.dim());
    if k == 0 || l == 0 {
        return Ok(PrincipalAngle {
            angle: right_angle,
            intersection_dim: 0,
            warning: None,
        });
    }

    let na = null_a.basis();
    let qb = range_b.basis();
    let cross = na.adjoint_matmul(qb)?;
    let f = svd(&cross)?;
    // Principal vectors of N(A) are N_A·w_j; cosines are the singular values.
    let directions = na.matmul(&f.u)?;
    let coeffs = qb.adjoint_matmul(&directions)?;
    let along = qb.matmul(&coeffs)?;

    let mut intersection_dim = 0;
    let mut min_angle = right_angle;
    for j in 0..k {
        let cos = f.sigma.get(j).copied().unwrap_or_else(S::Real::zero);
        let sin = directions.column(j).sub(&along.column(j))?.norm();
        let angle = sin.atan2(cos);
        if angle <= tol.ktol {
            intersection_dim += 1;
        } else if angle < min_angle {
            min_angle = angle;
        }
    }
    let warning = (min_angle < tol.angle_warn).then(|| {
        Diagnostic::new(
            DiagnosticCode::SmallPrincipalAngle,
            "minimal principal angle between N(A) ⊖ R(B) and R(B) is nearly zero; \
             the range of the product is close to not being closed",
            Some(min_angle.to_f64_lossy()),
        )
    });
    Ok(PrincipalAngle {
        angle: min_angle,
        intersection_dim,
        warning,
    })
}
