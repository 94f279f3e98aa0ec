#![allow(dead_code)]

use qfmin_core::oracle::instances::random_matrix;
use qfmin_core::{svd, Matrix, RMatrix, RQpProblem, RVector, Scalar};
use rand::Rng;

/// The singular positive semidefinite form with null vector `(2, 0, −1)`.
pub fn singular_form() -> RMatrix {
    RMatrix::from_real_rows(&[[14.0, 20.0, 28.0], [20.0, 83.0, 40.0], [28.0, 40.0, 56.0]]).unwrap()
}

pub fn singular_form_problem() -> RQpProblem {
    RQpProblem::new(
        singular_form(),
        RMatrix::from_real_rows(&[[2.0, 1.0, -1.0]]).unwrap(),
        RVector::from_real(&[10.0]).unwrap(),
    )
    .unwrap()
}

pub fn random_unitary<S: Scalar, G: Rng + ?Sized>(rng: &mut G, n: usize) -> Matrix<S> {
    svd(&random_matrix::<S, G>(rng, n, n)).unwrap().u
}

/// `U·diag(d)·V*`.
pub fn with_singular_values<S: Scalar>(u: &Matrix<S>, d: &[S::Real], v: &Matrix<S>) -> Matrix<S> {
    let dm = Matrix::from_real_diag(d).embed(u.cols(), v.cols());
    u.matmul(&dm).unwrap().matmul(&v.adjoint()).unwrap()
}
