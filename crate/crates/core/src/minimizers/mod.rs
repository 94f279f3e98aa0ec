//! Equality-constrained minimization of `⟨x, Tx⟩`.

mod posdef;
mod psd;

use std::fmt;
use std::str::FromStr;

use num_traits::{Float, One};

use crate::dense::{eigh_with, Eigen, Matrix, Vector};
use crate::diagnostics::{Diagnostic, DiagnosticCode};
use crate::error::{Error, Result};
use crate::pinv::pinv;
use crate::scalar::{RealScalar, Scalar};
use crate::tol::TolConfig;

pub use posdef::{
    minimize_posdef, minimize_posdef_diag, shortcut_status, try_cor1_shortcut, ShortcutStatus,
};
pub use psd::minimize_psd_complement;

/// `minimize ⟨x, Tx⟩ subject to Ax = b`.
#[derive(Debug, Clone)]
pub struct QpProblem<S: Scalar> {
    t: Matrix<S>,
    a: Matrix<S>,
    b: Vector<S>,
    tol: TolConfig<S::Real>,
}

impl<S: Scalar> QpProblem<S> {
    /// Validates shapes (`T` n×n, `A` m×n, `b` of length m) and that `T` is
    /// Hermitian within the default `htol`.
    pub fn new(t: Matrix<S>, a: Matrix<S>, b: Vector<S>) -> Result<Self> {
        Self::with_tol(t, a, b, TolConfig::default())
    }

    pub fn with_tol(
        t: Matrix<S>,
        a: Matrix<S>,
        b: Vector<S>,
        tol: TolConfig<S::Real>,
    ) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::InvalidShape(format!(
                "quadratic form must be square, got {}x{}",
                t.rows(),
                t.cols()
            )));
        }
        if a.cols() != t.rows() {
            return Err(Error::DimensionMismatch {
                op: "QpProblem: A vs T",
                left: a.shape(),
                right: t.shape(),
            });
        }
        if b.dim() != a.rows() {
            return Err(Error::DimensionMismatch {
                op: "QpProblem: b vs A",
                left: (b.dim(), 1),
                right: a.shape(),
            });
        }
        let norm = t.frobenius_norm();
        let residual = t.hermitian_residual();
        if residual > tol.htol * norm {
            return Err(Error::NotHermitian {
                residual: (residual / norm).to_f64_lossy(),
            });
        }
        Ok(Self { t, a, b, tol })
    }

    pub fn t(&self) -> &Matrix<S> {
        &self.t
    }

    pub fn a(&self) -> &Matrix<S> {
        &self.a
    }

    pub fn b(&self) -> &Vector<S> {
        &self.b
    }

    pub fn tol(&self) -> &TolConfig<S::Real> {
        &self.tol
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    /// Same data with `T` replaced by `c·T`.
    pub fn scaled(&self, c: S::Real) -> Self {
        Self {
            t: self.t.scale(c),
            ..self.clone()
        }
    }

    pub(crate) fn eigen(&self) -> Result<Eigen<S>> {
        eigh_with(&self.t, self.tol.htol)
    }
}

/// Which formula produced a [`MinimizationResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// `x̂ = U*X⁻¹(AU*X⁻¹)†b` through the eigendecomposition of `T`.
    PosDefDiag,
    /// `x̂ = R⁻¹(AR⁻¹)†b` through the square root of `T`.
    PosDef,
    /// `x̂ = A†b` when `R(A)` (and `R(A*)`) are `T`-invariant.
    Cor1Shortcut,
    /// `x̂ = U₁R†(AU₁R†)†b`, restricted to `N(T)^⊥`.
    PsdComplement,
    /// `x̂ = A†b`, no quadratic form involved.
    MinNormLs,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::PosDefDiag => "posdef-diag",
            Self::PosDef => "posdef",
            Self::Cor1Shortcut => "cor1-shortcut",
            Self::PsdComplement => "psd-complement",
            Self::MinNormLs => "min-norm-ls",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Solver selection for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolveMethod {
    #[default]
    Auto,
    PosDefDiag,
    PosDef,
    PsdComplement,
}

impl FromStr for SolveMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "posdef-diag" => Ok(Self::PosDefDiag),
            "posdef" => Ok(Self::PosDef),
            "psd-complement" => Ok(Self::PsdComplement),
            other => Err(Error::InvalidInput(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinimizationResult<S: Scalar> {
    pub xhat: Vector<S>,
    /// The closed-form minimum (`‖y‖²` for the relevant `ŷ`).
    pub min_value: S::Real,
    /// `‖A·x̂ − b‖`.
    pub feasibility_residual: S::Real,
    pub method: Method,
    pub diagnostics: Vec<Diagnostic>,
}

impl<S: Scalar> MinimizationResult<S> {
    pub(crate) fn assemble(
        p: &QpProblem<S>,
        xhat: Vector<S>,
        min_value: S::Real,
        method: Method,
        diagnostics: Vec<Diagnostic>,
    ) -> Result<Self> {
        let feasibility_residual = p.a.mul_vec(&xhat)?.distance(&p.b);
        Ok(Self {
            xhat,
            min_value,
            feasibility_residual,
            method,
            diagnostics,
        })
    }

    pub fn has_diagnostic(&self, code: DiagnosticCode) -> bool {
        self.diagnostics.iter().any(|d| d.code == code)
    }
}

/// `Re⟨x, Tx⟩`.
pub fn objective<S: Scalar>(t: &Matrix<S>, x: &Vector<S>) -> Result<S::Real> {
    Ok(x.dot(&t.mul_vec(x)?).re())
}

/// `‖A·A†b − b‖`.
pub fn feasibility_gap<S: Scalar>(
    a: &Matrix<S>,
    b: &Vector<S>,
    tol: &TolConfig<S::Real>,
) -> Result<S::Real> {
    let x = pinv(a, tol)?.mul_vec(b)?;
    Ok(a.mul_vec(&x)?.distance(b))
}

/// Whether `{x : Ax = b}` is nonempty, i.e. `b ∈ R(A)` within
/// `feas_tol·max(1, ‖b‖)`.
pub fn feasible<S: Scalar>(a: &Matrix<S>, b: &Vector<S>, tol: &TolConfig<S::Real>) -> Result<bool> {
    Ok(feasibility_gap(a, b, tol)? <= feasible_bound(b, tol))
}

pub(crate) fn feasible_bound<S: Scalar>(b: &Vector<S>, tol: &TolConfig<S::Real>) -> S::Real {
    tol.feas_tol * S::Real::one().max(b.norm())
}

/// Minimum-norm least-squares solution `A†b`. Defined for inconsistent
/// systems too.
pub fn min_norm_ls<S: Scalar>(
    a: &Matrix<S>,
    b: &Vector<S>,
    tol: &TolConfig<S::Real>,
) -> Result<Vector<S>> {
    pinv(a, tol)?.mul_vec(b)
}

/// Spectrum classification shared by the dispatcher and the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    /// Positive semidefinite with `rank < n`.
    SingularPsd {
        rank: usize,
    },
    Indefinite,
}

/// Classifies ascending eigenvalues with the `pd_tol`/`neg_tol` gates.
pub fn classify<R: RealScalar>(lambda: &[R], tol: &TolConfig<R>) -> Definiteness {
    let n = lambda.len();
    let scale = lambda.iter().fold(R::zero(), |m, &l| m.max(l.abs()));
    if lambda.iter().any(|&l| l < -tol.neg_tol * scale) {
        return Definiteness::Indefinite;
    }
    let gate = tol.pd_rtol(n) * scale;
    let rank = lambda.iter().filter(|&&l| l > gate).count();
    if rank == n && n > 0 {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::SingularPsd { rank }
    }
}

/// Dispatches to one of the solvers. `Auto` picks by the spectrum of `T`:
/// positive definite goes to [`minimize_posdef`] (after trying the
/// range-invariance shortcut, whose outcome is recorded as a diagnostic),
/// singular positive semidefinite goes to [`minimize_psd_complement`].
pub fn solve<S: Scalar>(p: &QpProblem<S>, method: SolveMethod) -> Result<MinimizationResult<S>> {
    match method {
        SolveMethod::PosDefDiag => minimize_posdef_diag(p),
        SolveMethod::PosDef => minimize_posdef(p),
        SolveMethod::PsdComplement => minimize_psd_complement(p),
        SolveMethod::Auto => {
            let e = p.eigen()?;
            match classify(&e.lambda, &p.tol) {
                Definiteness::Indefinite => Err(Error::NotPositive {
                    eigenvalue: e.lambda[0].to_f64_lossy(),
                }),
                Definiteness::SingularPsd { .. } => minimize_psd_complement(p),
                Definiteness::PositiveDefinite => {
                    let mut result = minimize_posdef(p)?;
                    result.diagnostics.push(shortcut_diagnostic(p, &result)?);
                    Ok(result)
                }
            }
        }
    }
}

fn shortcut_diagnostic<S: Scalar>(
    p: &QpProblem<S>,
    reference: &MinimizationResult<S>,
) -> Result<Diagnostic> {
    let status = shortcut_status(p)?;
    Ok(match try_cor1_shortcut(p)? {
        Some(short) => {
            let gap = short.xhat.distance(&reference.xhat);
            Diagnostic::new(
                DiagnosticCode::ShortcutApplied,
                "R(A) is T-invariant; x̂ = A†b (value: distance to the square-root solution)",
                Some(gap.to_f64_lossy()),
            )
        }
        None => Diagnostic::new(
            DiagnosticCode::ShortcutSkipped,
            format!("range-invariance shortcut not applicable: {status}"),
            None,
        ),
    })
}
