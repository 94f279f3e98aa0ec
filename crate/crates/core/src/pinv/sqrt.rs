use num_traits::{Float, Zero};

use crate::dense::{eigh_with, Eigen, Matrix};
use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Scalar};
use crate::tol::TolConfig;

/// Eigendecomposition of a positive semidefinite `T` with eigenvalues in
/// `[−neg_tol·‖T‖, 0)` clamped to zero. Also returns how many were clamped.
pub fn sqrt_psd_eigen<S: Scalar>(
    t: &Matrix<S>,
    tol: &TolConfig<S::Real>,
) -> Result<(Eigen<S>, usize)> {
    let mut e = eigh_with(t, tol.htol)?;
    let scale = e.max_abs();
    let floor = -tol.neg_tol * scale;
    let mut clamped = 0;
    for l in e.lambda.iter_mut() {
        if *l < S::Real::zero() {
            if *l < floor {
                return Err(Error::NotPositive {
                    eigenvalue: l.to_f64_lossy(),
                });
            }
            *l = S::Real::zero();
            clamped += 1;
        }
    }
    Ok((e, clamped))
}

/// The unique positive semidefinite square root `R = Q·diag(√λ)·Q*`.
pub fn sqrt_psd<S: Scalar>(t: &Matrix<S>, tol: &TolConfig<S::Real>) -> Result<Matrix<S>> {
    let (e, _) = sqrt_psd_eigen(t, tol)?;
    Ok(e.apply_fn(|l| l.sqrt()).hermitian_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::l2::{diag_operator, DiagonalSpec};

    #[test]
    fn diagonal_root() {
        let r = sqrt_psd(
            &Matrix::<f64>::from_real_diag(&[4.0, 9.0]),
            &TolConfig::default(),
        )
        .unwrap();
        assert!(r.distance(&Matrix::from_real_diag(&[2.0, 3.0])) < 1e-15);
    }

    #[test]
    fn alternating_section_root() {
        let t = diag_operator::<f64>(&DiagonalSpec::new(vec![1.0, 2.0], 6).unwrap());
        let r = sqrt_psd(&t, &TolConfig::default()).unwrap();
        let s2 = 2f64.sqrt();
        assert!(r.distance(&Matrix::from_real_diag(&[1.0, s2, 1.0, s2, 1.0, s2])) < 1e-15);
    }

    #[test]
    fn negative_eigenvalue_is_rejected() {
        let t = Matrix::<f64>::from_real_diag(&[2.0, -1.0]);
        assert!(matches!(
            sqrt_psd(&t, &TolConfig::default()),
            Err(Error::NotPositive { eigenvalue }) if eigenvalue == -1.0
        ));
    }

    #[test]
    fn roundoff_negatives_are_clamped() {
        let t = Matrix::<f64>::from_real_diag(&[1.0, -1e-14]);
        let (e, clamped) = sqrt_psd_eigen(&t, &TolConfig::default()).unwrap();
        assert_eq!(clamped, 1);
        assert_eq!(e.lambda, vec![0.0, 1.0]);
    }
}
