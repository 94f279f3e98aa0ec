//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! The columns of a tall working copy are rotated pairwise until they are
//! mutually orthogonal; their norms are then the singular values and the
//! accumulated rotations form `V`. Wide inputs are handled through the
//! adjoint. Left singular vectors for (numerically) zero singular values,
//! and the extra columns of a tall `U`, are completed to a unitary basis by
//! Gram-Schmidt against the canonical vectors.

use num_traits::{Float, One, Zero};

use crate::dense::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Scalar};

const MAX_SWEEPS: usize = 80;

/// `A = U · diag(σ) · V*` with `U` (m×m) and `V` (n×n) unitary and `σ`
/// non-negative and descending.
#[derive(Debug, Clone)]
pub struct Svd<S: Scalar> {
    pub u: Matrix<S>,
    pub sigma: Vec<S::Real>,
    pub v: Matrix<S>,
}

impl<S: Scalar> Svd<S> {
    /// `U · diag(σ) · V*`.
    pub fn reconstruct(&self) -> Matrix<S> {
        let (m, n) = (self.u.rows(), self.v.rows());
        let k = self.sigma.len();
        Matrix::from_fn(m, n, |i, j| {
            (0..k)
                .map(|l| (self.u[(i, l)] * self.v[(j, l)].conj()).scale(self.sigma[l]))
                .sum()
        })
    }
}

/// Full singular value decomposition.
pub fn svd<S: Scalar>(a: &Matrix<S>) -> Result<Svd<S>> {
    if let Some(k) = a.as_slice().iter().position(|x| !x.finite()) {
        return Err(Error::NonFinite {
            row: k / a.cols().max(1),
            col: k % a.cols().max(1),
        });
    }
    if a.rows() >= a.cols() {
        jacobi_tall(a)
    } else {
        let t = jacobi_tall(&a.adjoint())?;
        Ok(Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        })
    }
}

fn jacobi_tall<S: Scalar>(a: &Matrix<S>) -> Result<Svd<S>> {
    let (m, n) = a.shape();
    let eps = S::Real::epsilon();
    let zero = S::Real::zero();
    let two = S::Real::lit(2.0);

    let mut cols = a.columns_vec();
    let mut vcols: Vec<Vec<S>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| if i == j { S::one() } else { S::zero() })
                .collect()
        })
        .collect();

    let fro = a.frobenius_norm();
    let rel_tol = eps * S::Real::lit(m.max(1) as f64).sqrt();
    let abs_floor = (eps * fro) * (eps * fro);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = gram_entries(&cols[p], &cols[q]);
                let g = gamma.modulus();
                if g == zero || g <= rel_tol * (alpha * beta).sqrt() || g <= abs_floor {
                    continue;
                }
                rotated = true;
                let phase_conj = gamma.phase().conj();
                let zeta = (beta - alpha) / (two * g);
                let t = zeta.signum() / (zeta.abs() + (S::Real::one() + zeta * zeta).sqrt());
                let c = (S::Real::one() + t * t).sqrt().recip();
                let s = c * t;
                rotate_pair(&mut cols, p, q, phase_conj, c, s);
                rotate_pair(&mut vcols, p, q, phase_conj, c, s);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NonConvergence {
            routine: "svd",
            sweeps: MAX_SWEEPS,
        });
    }

    let norms: Vec<S::Real> = cols
        .iter()
        .map(|c| crate::dense::matrix::frobenius(c))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        norms[j]
            .partial_cmp(&norms[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let sigma: Vec<S::Real> = order.iter().map(|&j| norms[j]).collect();
    let sigma_max = sigma.first().copied().unwrap_or(zero);
    let cut = (sigma_max * eps).max(S::Real::min_positive_value());

    let mut ucols: Vec<Option<Vec<S>>> = vec![None; m];
    for (slot, &j) in order.iter().enumerate() {
        if norms[j] > cut {
            let inv = norms[j].recip();
            ucols[slot] = Some(cols[j].iter().map(|x| x.scale(inv)).collect());
        }
    }
    let ucols = complete_basis(m, ucols);

    let u = Matrix::from_columns(m, &ucols);
    let v = Matrix::from_fn(n, n, |i, k| vcols[order[k]][i]);
    Ok(Svd { u, sigma, v })
}

/// `(‖x‖², ‖y‖², ⟨x, y⟩)`.
fn gram_entries<S: Scalar>(x: &[S], y: &[S]) -> (S::Real, S::Real, S) {
    let mut alpha = S::Real::zero();
    let mut beta = S::Real::zero();
    let mut gamma = S::zero();
    for (&a, &b) in x.iter().zip(y) {
        alpha += a.modulus_sqr();
        beta += b.modulus_sqr();
        gamma += a.conj() * b;
    }
    (alpha, beta, gamma)
}

/// `x ← c·x − s·φ̄·y`, `y ← s·x + c·φ̄·y`.
fn rotate_pair<S: Scalar>(
    cols: &mut [Vec<S>],
    p: usize,
    q: usize,
    phase_conj: S,
    c: S::Real,
    s: S::Real,
) {
    let (left, right) = cols.split_at_mut(q);
    let (x, y) = (&mut left[p], &mut right[0]);
    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
        let a = *xi;
        let w = phase_conj * *yi;
        *xi = a.scale(c) - w.scale(s);
        *yi = a.scale(s) + w.scale(c);
    }
}

/// Fills the empty slots with unit vectors orthogonal to every filled slot
/// (and to each other).
pub(crate) fn complete_basis<S: Scalar>(m: usize, mut slots: Vec<Option<Vec<S>>>) -> Vec<Vec<S>> {
    let mut basis: Vec<Vec<S>> = slots.iter().flatten().cloned().collect();
    for slot in slots.iter_mut().filter(|s| s.is_none()) {
        let mut best: Option<(S::Real, Vec<S>)> = None;
        for k in 0..m {
            let mut e = vec![S::zero(); m];
            e[k] = S::one();
            orthogonalize(&mut e, &basis);
            let r = crate::dense::matrix::frobenius(&e);
            if best.as_ref().is_none_or(|(br, _)| r > *br) {
                best = Some((r, e));
            }
        }
        let (_, mut e) = best.expect("m >= 1 whenever a slot is empty");
        orthogonalize(&mut e, &basis);
        let r = crate::dense::matrix::frobenius(&e);
        let inv = r.recip();
        e.iter_mut().for_each(|x| *x = x.scale(inv));
        basis.push(e.clone());
        *slot = Some(e);
    }
    slots.into_iter().map(|s| s.expect("filled")).collect()
}

/// Two passes of modified Gram-Schmidt.
fn orthogonalize<S: Scalar>(e: &mut [S], basis: &[Vec<S>]) {
    for _ in 0..2 {
        for b in basis {
            let proj: S = b
                .iter()
                .zip(e.iter())
                .map(|(&bi, &ei)| bi.conj() * ei)
                .sum();
            for (ei, &bi) in e.iter_mut().zip(b) {
                *ei -= proj * bi;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn unitarity_defect<S: Scalar>(q: &Matrix<S>) -> S::Real {
        q.adjoint_matmul(q)
            .unwrap()
            .distance(&Matrix::identity(q.cols()))
    }

    #[test]
    fn diagonal_singular_values() {
        let s = svd(&Matrix::<f64>::from_real_diag(&[3.0, 1.0])).unwrap();
        assert_eq!(s.sigma, vec![3.0, 1.0]);
        let s = svd(&Matrix::<f64>::from_real_diag(&[1.0, 3.0])).unwrap();
        assert_eq!(s.sigma, vec![3.0, 1.0]);
    }

    #[test]
    fn zero_matrix() {
        let s = svd(&Matrix::<Complex64>::zeros(3, 2)).unwrap();
        assert!(s.sigma.iter().all(|&x| x == 0.0));
        assert!(unitarity_defect(&s.u) < 1e-14);
        assert!(unitarity_defect(&s.v) < 1e-14);
    }

    #[test]
    fn wide_and_tall_shapes() {
        let a = Matrix::<f64>::from_real_rows(&[[2.0, 1.0, -1.0]]).unwrap();
        let s = svd(&a).unwrap();
        assert_eq!(s.u.shape(), (1, 1));
        assert_eq!(s.v.shape(), (3, 3));
        assert!((s.sigma[0] - 6f64.sqrt()).abs() < 1e-14);
        assert!(s.reconstruct().distance(&a) < 1e-14);
        let s = svd(&a.adjoint()).unwrap();
        assert_eq!(s.u.shape(), (3, 3));
        assert!(unitarity_defect(&s.u) < 1e-14);
        assert!(s.reconstruct().distance(&a.adjoint()) < 1e-14);
    }

    #[test]
    fn rank_one_complex() {
        let x = [
            Complex64::new(1.0, 2.0),
            Complex64::new(-0.5, 0.0),
            Complex64::new(0.0, 1.0),
        ];
        let a = Matrix::from_fn(3, 3, |i, j| x[i] * x[j].conj());
        let s = svd(&a).unwrap();
        assert!(s.sigma[1] < 1e-14 && s.sigma[2] < 1e-14);
        assert!(s.reconstruct().distance(&a) < 1e-13);
        assert!(unitarity_defect(&s.u) < 1e-13);
    }
}
