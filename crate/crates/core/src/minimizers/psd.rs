use num_traits::{Float, Zero};

use crate::dense::{Matrix, Vector};
use crate::diagnostics::{Diagnostic, DiagnosticCode};
use crate::error::{Error, Result};
use crate::minimizers::{feasibility_gap, feasible_bound, Method, MinimizationResult, QpProblem};
use crate::pinv::{ep_decompose, pinv_parts, projector_rangestar, sqrt_psd_eigen};
use crate::scalar::{RealScalar, Scalar};
use crate::tol::TolConfig;

/// Minimizes `⟨x, Tx⟩` over `{x ∈ N(T)^⊥ : Ax = b}` for singular positive
/// semidefinite `T`.
///
/// With `T = U₁(A₁⊕0)U₁*`, `R² = A₁` and `R† = R⁻¹⊕0`, the minimizer is
/// `x̂ = U₁R†(AU₁R†)†b` and the minimum `‖(AU₁R†)†b‖²`.
pub fn minimize_psd_complement<S: Scalar>(p: &QpProblem<S>) -> Result<MinimizationResult<S>> {
    let tol = p.tol();
    let n = p.dim();
    let (eig, clamped) = sqrt_psd_eigen(p.t(), tol).map_err(|e| match e {
        Error::NotPositive { eigenvalue } => Error::NotPsd { eigenvalue },
        other => other,
    })?;
    let scale = eig.max_abs();
    let gate = tol.pd_rtol(n) * scale;
    let rank = eig.lambda.iter().filter(|&&l| l > gate).count();
    if rank == n {
        return Err(Error::NotSingular);
    }

    // Same cut-off for the EP split as for the definiteness gate.
    let split_tol = TolConfig {
        rtol: Some(tol.pd_rtol(n)),
        ..*tol
    };
    let ep = ep_decompose(p.t(), &split_tol)?;
    debug_assert_eq!(ep.rank, rank);
    let range_t = ep.range_basis();
    let p_t = range_t.matmul(&range_t.adjoint())?;

    let a_on_range = p.a().matmul(&p_t)?;
    let gap = feasibility_gap(&a_on_range, p.b(), tol)?;
    if gap > feasible_bound(p.b(), tol) {
        return Err(Error::InfeasibleOnComplement {
            residual: gap.to_f64_lossy(),
        });
    }

    let mut notes = Vec::new();
    if clamped > 0 {
        notes.push(Diagnostic::new(
            DiagnosticCode::ClampedEigenvalues,
            "slightly negative eigenvalues of T were treated as zero",
            Some(clamped as f64),
        ));
    }
    notes.extend(product_conditioning(p.a(), &p_t, tol)?);

    // R† = R⁻¹ ⊕ 0, with R⁻¹ from the eigendecomposition of A₁.
    let (a1_eig, _) = sqrt_psd_eigen(&ep.a1, tol)?;
    let r_inv = a1_eig.apply_fn(|l| l.sqrt().recip()).hermitian_part();
    let r_dagger = r_inv.embed(n, n);
    let w = ep.u1.matmul(&r_dagger)?;
    let m = p.a().matmul(&w)?;
    let parts = pinv_parts(&m, tol)?;
    let y: Vector<S> = parts.pinv.mul_vec(p.b())?;
    let x = w.mul_vec(&y)?;
    MinimizationResult::assemble(p, x, y.norm_sqr(), Method::PsdComplement, notes)
}

/// Warns when `P_{A*}·P_T` is close to rank deficient (the finite-section
/// shadow of its range failing to be closed).
fn product_conditioning<S: Scalar>(
    a: &Matrix<S>,
    p_t: &Matrix<S>,
    tol: &TolConfig<S::Real>,
) -> Result<Option<Diagnostic>> {
    let p_a = projector_rangestar(a, tol)?;
    let prod = p_a.matmul(p_t)?;
    let parts = pinv_parts(&prod, tol)?;
    let sigma_max = parts
        .svd
        .sigma
        .first()
        .copied()
        .unwrap_or_else(S::Real::zero);
    Ok(parts.rank.ill_conditioned.then(|| {
        Diagnostic::new(
            DiagnosticCode::ProductNearRankDeficient,
            "P_{A*}·P_T is nearly rank deficient",
            Some(parts.rank.kept_ratio(sigma_max).to_f64_lossy()),
        )
    }))
}
