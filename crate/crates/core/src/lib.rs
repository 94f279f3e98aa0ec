//! Minimization of quadratic forms `⟨x, Tx⟩` under linear equality
//! constraints `Ax = b` through Moore-Penrose pseudoinverse formulas.
//!
//! Three solver routes are provided:
//!
//! * [`minimize_posdef_diag`]: `T` positive definite, factored as `T = U*·T_k·U`
//!   with `T_k` diagonal; `x̂ = U*X⁻¹(AU*X⁻¹)†b` where `X² = T_k`.
//! * [`minimize_posdef`]: `T` positive definite with square root `R`;
//!   `x̂ = R⁻¹(AR⁻¹)†b`.
//! * [`minimize_psd_complement`]: `T` positive semidefinite and singular, the
//!   search restricted to `N(T)^⊥`; `x̂ = U₁R†(AU₁R†)†b` where
//!   `T = U₁(A₁⊕0)U₁*` and `R² = A₁`.
//!
//! Each route is cross-checked in tests against an independent Lagrange
//! multiplier solver in [`oracle`].
//!
//! All routines are generic over [`Scalar`] (real or complex, single or
//! double precision); the aliases below fix the common instantiations.

pub mod dense;
pub mod diagnostics;
pub mod error;
pub mod l2;
pub mod minimizers;
pub mod oracle;
pub mod pinv;
pub mod scalar;
pub mod tol;

pub use dense::{eigh, svd, Eigen, Matrix, Svd, Vector};
pub use diagnostics::{Diagnostic, DiagnosticCode};
pub use error::{Error, Result};
pub use minimizers::{
    feasible, min_norm_ls, minimize_posdef, minimize_posdef_diag, minimize_psd_complement, solve,
    try_cor1_shortcut, Method, MinimizationResult, QpProblem, SolveMethod,
};
pub use pinv::{
    ep_decompose, is_ep, lat_invariant, pinv, principal_angle_diag, projector_range,
    projector_rangestar, rank_decide, reverse_order_holds, sqrt_psd, EpDecomposition,
    PrincipalAngle, RankDecision, ReverseOrderReport, SubspaceBasis,
};
pub use scalar::{RealScalar, Scalar};
pub use tol::TolConfig;

pub use num_complex::{Complex, Complex32, Complex64};

/// Complex double precision, the default field.
pub type CMatrix = Matrix<Complex64>;
pub type CVector = Vector<Complex64>;
pub type CQpProblem = QpProblem<Complex64>;
/// Real double precision.
pub type RMatrix = Matrix<f64>;
pub type RVector = Vector<f64>;
pub type RQpProblem = QpProblem<f64>;
/// Real single precision.
pub type RMatrix32 = Matrix<f32>;
pub type Tol = TolConfig<f64>;
