use std::fmt;

use num_traits::{Float, Zero};

use crate::dense::{Eigen, Matrix};
use crate::diagnostics::{Diagnostic, DiagnosticCode};
use crate::error::{Error, Result};
use crate::minimizers::{
    classify, feasibility_gap, feasible_bound, objective, Definiteness, Method, MinimizationResult,
    QpProblem,
};
use crate::pinv::{lat_invariant, pinv_parts, sqrt_psd, PinvParts, SubspaceBasis};
use crate::scalar::{RealScalar, Scalar};

pub(crate) fn positive_definite_eigen<S: Scalar>(p: &QpProblem<S>) -> Result<Eigen<S>> {
    let e = p.eigen()?;
    match classify(&e.lambda, p.tol()) {
        Definiteness::PositiveDefinite => Ok(e),
        _ => {
            let scale = e.max_abs();
            Err(Error::NotPositiveDefinite {
                eigenvalue: e.lambda.first().map_or(0.0, |l| l.to_f64_lossy()),
                threshold: (p.tol().pd_rtol(p.dim()) * scale).to_f64_lossy(),
            })
        }
    }
}

pub(crate) fn require_feasible<S: Scalar>(p: &QpProblem<S>) -> Result<()> {
    let gap = feasibility_gap(p.a(), p.b(), p.tol())?;
    if gap > feasible_bound(p.b(), p.tol()) {
        return Err(Error::Infeasible {
            residual: gap.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Invertible `A` pins the constraint set to the single point `A⁻¹b`.
fn trivial_constraint<S: Scalar>(
    p: &QpProblem<S>,
    method: Method,
) -> Result<Option<MinimizationResult<S>>> {
    if !p.a().is_square() {
        return Ok(None);
    }
    let parts = pinv_parts(p.a(), p.tol())?;
    if parts.rank.rank < p.dim() {
        return Ok(None);
    }
    let x = parts.pinv.mul_vec(p.b())?;
    let value = objective(p.t(), &x)?;
    let note = Diagnostic::new(
        DiagnosticCode::TrivialConstraint,
        "A is invertible; the constraint set is the single point A⁻¹b",
        None,
    );
    MinimizationResult::assemble(p, x, value, method, vec![note]).map(Some)
}

fn conditioning_notes<S: Scalar>(parts: &PinvParts<S>, what: &str) -> Vec<Diagnostic> {
    let sigma_max = parts
        .svd
        .sigma
        .first()
        .copied()
        .unwrap_or_else(S::Real::zero);
    if parts.rank.ill_conditioned {
        vec![Diagnostic::new(
            DiagnosticCode::IllConditioned,
            format!("{what} is ill-conditioned (smallest kept / largest singular value)"),
            Some(parts.rank.kept_ratio(sigma_max).to_f64_lossy()),
        )]
    } else {
        Vec::new()
    }
}

/// Solves through the eigendecomposition `T = U*·T_k·U` (here `U* = Q`):
/// with `X = T_k^{1/2}`, `x̂ = U*X⁻¹(AU*X⁻¹)†b` and the minimum is
/// `‖(AU*X⁻¹)†b‖²`.
pub fn minimize_posdef_diag<S: Scalar>(p: &QpProblem<S>) -> Result<MinimizationResult<S>> {
    let e = positive_definite_eigen(p)?;
    require_feasible(p)?;
    if let Some(r) = trivial_constraint(p, Method::PosDefDiag)? {
        return Ok(r);
    }
    let n = p.dim();
    let inv_root: Vec<S::Real> = e.lambda.iter().map(|l| l.sqrt().recip()).collect();
    // U*·X⁻¹: eigenvector k scaled by 1/√λ_k.
    let w = Matrix::from_fn(n, n, |i, k| e.q[(i, k)].scale(inv_root[k]));
    let m = p.a().matmul(&w)?;
    let parts = pinv_parts(&m, p.tol())?;
    let y = parts.pinv.mul_vec(p.b())?;
    let x = w.mul_vec(&y)?;
    let notes = conditioning_notes(&parts, "A·U*·X⁻¹");
    MinimizationResult::assemble(p, x, y.norm_sqr(), Method::PosDefDiag, notes)
}

/// Solves through the positive square root `R` of `T`:
/// `x̂ = R⁻¹(AR⁻¹)†b`, minimum `‖(AR⁻¹)†b‖²`.
pub fn minimize_posdef<S: Scalar>(p: &QpProblem<S>) -> Result<MinimizationResult<S>> {
    let e = positive_definite_eigen(p)?;
    require_feasible(p)?;
    if let Some(r) = trivial_constraint(p, Method::PosDef)? {
        return Ok(r);
    }
    let r_inv = e.apply_fn(|l| l.sqrt().recip()).hermitian_part();
    let m = p.a().matmul(&r_inv)?;
    let parts = pinv_parts(&m, p.tol())?;
    let y = parts.pinv.mul_vec(p.b())?;
    let x = r_inv.mul_vec(&y)?;
    let notes = conditioning_notes(&parts, "A·R⁻¹");
    MinimizationResult::assemble(p, x, y.norm_sqr(), Method::PosDef, notes)
}

/// Why the range-invariance shortcut does or does not apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShortcutStatus {
    Applies,
    NotPositiveDefinite,
    /// `R(A)` lives in a different space than `T` acts on.
    RectangularConstraint,
    /// `R(A) ∉ Lat(T)`.
    RangeNotInvariant,
    /// `R(A) ∈ Lat(T)` but `R(A*) ∉ Lat(T)`: for non-normal `A` the range
    /// condition alone does not make `A†b` optimal.
    CorangeNotInvariant,
}

impl fmt::Display for ShortcutStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Applies => "applies",
            Self::NotPositiveDefinite => "T is not positive definite",
            Self::RectangularConstraint => "A is not square",
            Self::RangeNotInvariant => "R(A) is not T-invariant",
            Self::CorangeNotInvariant => "R(A) is T-invariant but R(A*) is not",
        })
    }
}

pub fn shortcut_status<S: Scalar>(p: &QpProblem<S>) -> Result<ShortcutStatus> {
    let e = p.eigen()?;
    if classify(&e.lambda, p.tol()) != Definiteness::PositiveDefinite {
        return Ok(ShortcutStatus::NotPositiveDefinite);
    }
    if !p.a().is_square() {
        return Ok(ShortcutStatus::RectangularConstraint);
    }
    let range = SubspaceBasis::range_of(p.a(), p.tol())?;
    if !lat_invariant(&range, p.t(), p.tol().lat_tol)? {
        return Ok(ShortcutStatus::RangeNotInvariant);
    }
    let corange = SubspaceBasis::corange_of(p.a(), p.tol())?;
    if !lat_invariant(&corange, p.t(), p.tol().lat_tol)? {
        return Ok(ShortcutStatus::CorangeNotInvariant);
    }
    Ok(ShortcutStatus::Applies)
}

/// When `R(A) ∈ Lat(T)`, the square-root formula collapses to `x̂ = A†b`
/// with minimum `‖R·A†b‖²`. Returns `None` whenever [`shortcut_status`] is not
/// [`ShortcutStatus::Applies`].
pub fn try_cor1_shortcut<S: Scalar>(p: &QpProblem<S>) -> Result<Option<MinimizationResult<S>>> {
    if shortcut_status(p)? != ShortcutStatus::Applies {
        return Ok(None);
    }
    require_feasible(p)?;
    let x = pinv_parts(p.a(), p.tol())?.pinv.mul_vec(p.b())?;
    let root = sqrt_psd(p.t(), p.tol())?;
    let value = root.mul_vec(&x)?.norm_sqr();
    MinimizationResult::assemble(p, x, value, Method::Cor1Shortcut, Vec::new()).map(Some)
}
