use std::fmt;

/// Machine-readable classification of a [`Diagnostic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticCode {
    /// Kept singular values span more than `warn_ratio` orders.
    IllConditioned,
    /// `A` is invertible, so the constraint set is a single point.
    TrivialConstraint,
    /// A principal angle is close to zero.
    SmallPrincipalAngle,
    /// `P_{A*}P_T` is close to rank deficient.
    ProductNearRankDeficient,
    /// Range-invariance shortcut applied.
    ShortcutApplied,
    /// Range-invariance shortcut not applicable.
    ShortcutSkipped,
    /// Eigenvalues slightly below zero were clamped.
    ClampedEigenvalues,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::IllConditioned => "ill_conditioned",
            Self::TrivialConstraint => "trivial_constraint",
            Self::SmallPrincipalAngle => "small_principal_angle",
            Self::ProductNearRankDeficient => "product_near_rank_deficient",
            Self::ShortcutApplied => "cor1_shortcut_applied",
            Self::ShortcutSkipped => "cor1_shortcut_skipped",
            Self::ClampedEigenvalues => "clamped_eigenvalues",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A non-fatal observation attached to a result.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub message: String,
    pub value: Option<f64>,
}

impl Diagnostic {
    pub fn new(code: DiagnosticCode, message: impl Into<String>, value: Option<f64>) -> Self {
        Self {
            code,
            message: message.into(),
            value,
        }
    }
}
