use num_traits::{Float, Zero};

use crate::dense::{Matrix, Vector};
use crate::diagnostics::{Diagnostic, DiagnosticCode};
use crate::error::{Error, Result};
use crate::minimizers::{feasible_bound, Method, MinimizationResult};
use crate::scalar::{RealScalar, Scalar};
use crate::tol::TolConfig;

/// Matrix with at most one nonzero in every row and every column (a
/// weighted partial permutation: diagonals, shifts, and their products).
///
/// Its pseudoinverse is the transposed pattern with reciprocal weights,
/// which extends the diagonal rule `diag(kᵢ)† = diag(1/kᵢ or 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialOperator<S> {
    rows: usize,
    cols: usize,
    /// `(row, col, value)`.
    entries: Vec<(usize, usize, S)>,
}

impl<S: Scalar> MonomialOperator<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<(usize, usize, S)>) -> Result<Self> {
        let mut row_used = vec![false; rows];
        let mut col_used = vec![false; cols];
        for &(i, j, v) in &entries {
            if i >= rows || j >= cols {
                return Err(Error::InvalidShape(format!(
                    "entry ({i}, {j}) outside {rows}x{cols}"
                )));
            }
            if row_used[i] || col_used[j] {
                return Err(Error::InvalidInput(format!(
                    "row {i} or column {j} already holds a nonzero"
                )));
            }
            if !v.finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
            row_used[i] = true;
            col_used[j] = true;
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Square left shift with zero fill.
    pub fn left_shift(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            entries: (0..n.saturating_sub(1))
                .map(|i| (i, i + 1, S::one()))
                .collect(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn apply(&self, x: &Vector<S>) -> Result<Vector<S>> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "MonomialOperator::apply",
                left: self.shape(),
                right: (x.dim(), 1),
            });
        }
        let mut out = Vector::zeros(self.rows);
        for &(i, j, v) in &self.entries {
            out[i] = v * x[j];
        }
        Ok(out)
    }

    /// `self · diag(d)`.
    pub fn scale_columns(&self, d: &[S::Real]) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|&(i, j, v)| (i, j, v.scale(d[j])))
                .collect(),
        }
    }

    /// Pseudoinverse, dropping entries at or below `rtol·max|v|` (floored
    /// at `abs_floor`), the same rule as the dense SVD path.
    pub fn pinv(&self, tol: &TolConfig<S::Real>) -> Self {
        let vmax = self
            .entries
            .iter()
            .fold(S::Real::zero(), |m, e| m.max(e.2.modulus()));
        let threshold = (tol.rank_rtol(self.rows, self.cols) * vmax).max(tol.abs_floor);
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .filter(|e| e.2.modulus() > threshold)
                .map(|&(i, j, v)| (j, i, S::one() / v))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Matrix<S> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for &(i, j, v) in &self.entries {
            m[(i, j)] = v;
        }
        m
    }
}

/// Positive definite diagonal `T = diag(k)` with a monomial constraint:
/// the eigenbasis of `T` is the identity, so `x̂ = X⁻¹(AX⁻¹)†b` with
/// `X = diag(√k)`, all in `O(n)`.
pub fn minimize_diagonal_section<S: Scalar>(
    diag: &[S::Real],
    a: &MonomialOperator<S>,
    b: &Vector<S>,
    tol: &TolConfig<S::Real>,
) -> Result<MinimizationResult<S>> {
    let n = diag.len();
    if a.cols != n || b.dim() != a.rows {
        return Err(Error::DimensionMismatch {
            op: "minimize_diagonal_section",
            left: a.shape(),
            right: (n, b.dim()),
        });
    }
    let kmax = diag.iter().fold(S::Real::zero(), |m, &k| m.max(k.abs()));
    let gate = tol.pd_rtol(n) * kmax;
    if let Some(&k) = diag.iter().find(|&&k| k.is_nan() || k <= gate) {
        return Err(Error::NotPositiveDefinite {
            eigenvalue: k.to_f64_lossy(),
            threshold: gate.to_f64_lossy(),
        });
    }
    let x_inv: Vec<S::Real> = diag.iter().map(|k| k.sqrt().recip()).collect();
    let m = a.scale_columns(&x_inv);
    let y = m.pinv(tol).apply(b)?;
    let x = Vector::from_fn(n, |i| y[i].scale(x_inv[i]));
    let feasibility_residual = a.apply(&x)?.distance(b);
    if feasibility_residual > feasible_bound(b, tol) {
        return Err(Error::Infeasible {
            residual: feasibility_residual.to_f64_lossy(),
        });
    }
    let mut diagnostics = Vec::new();
    if a.rows == n && a.entries.len() == n {
        diagnostics.push(Diagnostic::new(
            DiagnosticCode::TrivialConstraint,
            "A is invertible; the constraint set is the single point A⁻¹b",
            None,
        ));
    }
    Ok(MinimizationResult {
        min_value: y.norm_sqr(),
        xhat: x,
        feasibility_residual,
        method: Method::PosDefDiag,
        diagnostics,
    })
}
