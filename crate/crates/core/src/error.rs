use thiserror::Error;

/// Failures raised by the factorizations, the operator toolkit and the
/// minimizers. Numeric payloads are reported in `f64` regardless of the
/// scalar type the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("{routine} did not converge within {sweeps} sweeps")]
    NonConvergence {
        routine: &'static str,
        sweeps: usize,
    },
    #[error("matrix is not Hermitian (relative residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositive { eigenvalue: f64 },
    #[error(
        "matrix is not positive definite (smallest eigenvalue {eigenvalue:e} <= {threshold:e})"
    )]
    NotPositiveDefinite { eigenvalue: f64, threshold: f64 },
    #[error("quadratic form is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },
    #[error("quadratic form is nonsingular; use the positive definite solver")]
    NotSingular,
    #[error("operator is not EP (relative commutator residual {residual:e})")]
    NotEp { residual: f64 },
    #[error("constraint set is empty: b is not in the range of A (residual {residual:e})")]
    Infeasible { residual: f64 },
    #[error("no feasible point in the orthogonal complement of N(T) (residual {residual:e})")]
    InfeasibleOnComplement { residual: f64 },
    #[error("KKT system could not be solved (residual {residual:e})")]
    SingularKkt { residual: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
