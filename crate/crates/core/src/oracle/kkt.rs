use num_traits::{Float, One};

use crate::dense::{eigh_with, Matrix, Vector};
use crate::error::{Error, Result};
use crate::minimizers::{feasibility_gap, feasible_bound, objective};
use crate::pinv::pinv;
use crate::scalar::{RealScalar, Scalar};
use crate::tol::TolConfig;

#[derive(Debug, Clone)]
pub struct OracleResult<S: Scalar> {
    pub x: Vector<S>,
    pub min_value: S::Real,
    /// `‖K·z − rhs‖ / max(1, ‖rhs‖)` for the saddle-point system solved.
    pub kkt_residual: S::Real,
}

/// Solves the Lagrange system `[2T A*; A 0]·[x; λ] = [0; b]` through the
/// pseudoinverse of the block matrix. For positive definite `T` the `x`
/// block is unique even when `A` is rank deficient.
pub fn kkt_solve<S: Scalar>(
    t: &Matrix<S>,
    a: &Matrix<S>,
    b: &Vector<S>,
    tol: &TolConfig<S::Real>,
) -> Result<OracleResult<S>> {
    let n = t.rows();
    let m = a.rows();
    if !t.is_square() || a.cols() != n || b.dim() != m {
        return Err(Error::DimensionMismatch {
            op: "kkt_solve",
            left: t.shape(),
            right: a.shape(),
        });
    }
    let top = t.scale(S::Real::lit(2.0)).hstack(&a.adjoint())?;
    let bottom = a.hstack(&Matrix::zeros(m, m))?;
    let k = top.vstack(&bottom)?;
    let rhs = Vector::from_fn(n + m, |i| if i < n { S::zero() } else { b[i - n] });
    let z = pinv(&k, tol)?.mul_vec(&rhs)?;
    let kkt_residual = k.mul_vec(&z)?.distance(&rhs) / S::Real::one().max(rhs.norm());
    if kkt_residual > tol.feas_tol {
        return Err(Error::SingularKkt {
            residual: kkt_residual.to_f64_lossy(),
        });
    }
    let x = Vector::from_fn(n, |i| z[i]);
    let min_value = objective(t, &x)?;
    Ok(OracleResult {
        x,
        min_value,
        kkt_residual,
    })
}

/// Minimizes over `N(T)^⊥` by writing `x = B·z` with `B` an orthonormal
/// eigenbasis of `R(T)` and solving the reduced positive definite problem
/// `min z*(B*TB)z s.t. (AB)z = b` with [`kkt_solve`].
pub fn reduced_solve<S: Scalar>(
    t: &Matrix<S>,
    a: &Matrix<S>,
    b: &Vector<S>,
    tol: &TolConfig<S::Real>,
) -> Result<OracleResult<S>> {
    let e = eigh_with(t, tol.htol)?;
    let gate = tol.pd_rtol(t.rows()) * e.max_abs();
    let keep: Vec<usize> = (0..e.lambda.len())
        .filter(|&i| e.lambda[i] > gate)
        .collect();
    let basis = e.q.select_columns(&keep);
    let t_r = basis.adjoint_matmul(&t.matmul(&basis)?)?.hermitian_part();
    let a_r = a.matmul(&basis)?;
    let gap = feasibility_gap(&a_r, b, tol)?;
    if gap > feasible_bound(b, tol) {
        return Err(Error::InfeasibleOnComplement {
            residual: gap.to_f64_lossy(),
        });
    }
    let reduced = kkt_solve(&t_r, &a_r, b, tol)?;
    let x = basis.mul_vec(&reduced.x)?;
    let min_value = objective(t, &x)?;
    Ok(OracleResult {
        x,
        min_value,
        kkt_residual: reduced.kkt_residual,
    })
}
