use num_traits::Zero;

use crate::dense::{svd, Matrix};
use crate::error::{Error, Result};
use crate::pinv::rank_decide;
use crate::scalar::{RealScalar, Scalar};
use crate::tol::TolConfig;

/// Orthonormal basis (as matrix columns) of a subspace of `C^ambient_dim`.
#[derive(Debug, Clone)]
pub struct SubspaceBasis<S: Scalar> {
    basis: Matrix<S>,
}

impl<S: Scalar> SubspaceBasis<S> {
    /// Wraps columns that are already orthonormal within `tol`.
    pub fn from_orthonormal(basis: Matrix<S>, tol: S::Real) -> Result<Self> {
        let k = basis.cols();
        let defect = basis.adjoint_matmul(&basis)?.distance(&Matrix::identity(k));
        if defect > tol * S::Real::lit(k.max(1) as f64) {
            return Err(Error::InvalidInput(format!(
                "basis columns are not orthonormal (defect {:e})",
                defect.to_f64_lossy()
            )));
        }
        Ok(Self { basis })
    }

    /// Orthonormal basis of the span of `columns`.
    pub fn span_of(columns: &Matrix<S>, tol: &TolConfig<S::Real>) -> Result<Self> {
        Self::range_of(columns, tol)
    }

    /// `R(A)`, from the leading left singular vectors.
    pub fn range_of(a: &Matrix<S>, tol: &TolConfig<S::Real>) -> Result<Self> {
        let f = svd(a)?;
        let r = rank_decide(&f.sigma, tol, a.shape()).rank;
        Ok(Self {
            basis: f.u.select_columns(&(0..r).collect::<Vec<_>>()),
        })
    }

    /// `R(A*) = N(A)^⊥`, from the leading right singular vectors.
    pub fn corange_of(a: &Matrix<S>, tol: &TolConfig<S::Real>) -> Result<Self> {
        let f = svd(a)?;
        let r = rank_decide(&f.sigma, tol, a.shape()).rank;
        Ok(Self {
            basis: f.v.select_columns(&(0..r).collect::<Vec<_>>()),
        })
    }

    /// `N(A)`, from the trailing right singular vectors.
    pub fn null_space_of(a: &Matrix<S>, tol: &TolConfig<S::Real>) -> Result<Self> {
        let f = svd(a)?;
        let r = rank_decide(&f.sigma, tol, a.shape()).rank;
        let n = a.cols();
        Ok(Self {
            basis: f.v.select_columns(&(r..n).collect::<Vec<_>>()),
        })
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// `B·B*`.
    pub fn projector(&self) -> Matrix<S> {
        let b = &self.basis;
        let (n, k) = b.shape();
        Matrix::from_fn(n, n, |i, j| {
            (0..k).map(|l| b[(i, l)] * b[(j, l)].conj()).sum()
        })
    }
}

/// `‖(I − P)·T·P‖ / ‖T‖` for the projector `P` onto `subspace`.
pub fn lat_residual<S: Scalar>(subspace: &SubspaceBasis<S>, t: &Matrix<S>) -> Result<S::Real> {
    if !t.is_square() || t.rows() != subspace.ambient_dim() {
        return Err(Error::DimensionMismatch {
            op: "lat_invariant",
            left: (subspace.ambient_dim(), subspace.dim()),
            right: t.shape(),
        });
    }
    let b = subspace.basis();
    let tb = t.matmul(b)?;
    // (I − BB*)·T·B; right-multiplying by B* does not change the norm.
    let coeff = b.adjoint_matmul(&tb)?;
    let residual = tb.sub(&b.matmul(&coeff)?)?.frobenius_norm();
    let nt = t.frobenius_norm();
    Ok(if nt > S::Real::zero() {
        residual / nt
    } else {
        residual
    })
}

/// Whether `T` maps `subspace` into itself, i.e. `subspace ∈ Lat(T)`.
pub fn lat_invariant<S: Scalar>(
    subspace: &SubspaceBasis<S>,
    t: &Matrix<S>,
    tol: S::Real,
) -> Result<bool> {
    Ok(lat_residual(subspace, t)? <= tol)
}
