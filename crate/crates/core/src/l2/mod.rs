//! Finite sections of operators on `l2`: diagonal operators, the left and
//! right shifts, and the convergence study for the alternating-weight
//! shift problem whose limit minimum is `7π²/24`.

mod monomial;

pub use monomial::{minimize_diagonal_section, MonomialOperator};

use rayon::prelude::*;

use crate::dense::{Matrix, Vector};
use crate::error::{Error, Result};
use crate::minimizers::{minimize_posdef, MinimizationResult, QpProblem};
use crate::scalar::{RealScalar, Scalar};
use crate::tol::TolConfig;

/// Sections up to this dimension are solved with the dense square-root
/// solver; larger ones use the structured path.
pub const DENSE_SECTION_LIMIT: usize = 128;

/// Periodic diagonal `(k₁, k₂, …)` truncated to `n` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalSpec {
    period_values: Vec<f64>,
    n: usize,
}

impl DiagonalSpec {
    pub fn new(period_values: Vec<f64>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "section size must be at least 1".into(),
            ));
        }
        if period_values.is_empty() || period_values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "diagonal pattern must be nonempty and finite".into(),
            ));
        }
        Ok(Self { period_values, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values<R: RealScalar>(&self) -> Vec<R> {
        (0..self.n)
            .map(|i| R::lit(self.period_values[i % self.period_values.len()]))
            .collect()
    }
}

/// `T(x₁, x₂, …) = (k₁x₁, k₂x₂, …)` as an `n × n` matrix.
pub fn diag_operator<S: Scalar>(spec: &DiagonalSpec) -> Matrix<S> {
    Matrix::from_real_diag(&spec.values::<S::Real>())
}

/// `L(x₁, x₂, …, x_n) = (x₂, …, x_n, 0)`: ones on the first superdiagonal.
pub fn left_shift<S: Scalar>(n: usize) -> Matrix<S> {
    Matrix::from_fn(n, n, |i, j| if j == i + 1 { S::one() } else { S::zero() })
}

/// The adjoint of [`left_shift`], which is also its pseudoinverse.
pub fn right_shift<S: Scalar>(n: usize) -> Matrix<S> {
    left_shift::<S>(n).adjoint()
}

/// `(1, 1/2, …, 1/n)`.
pub fn harmonic_b<S: Scalar>(n: usize) -> Vector<S> {
    Vector::from_fn(n, |i| S::from_real(S::Real::lit(1.0 / (i as f64 + 1.0))))
}

/// `7π²/24 = Σ 1/k² + Σ 1/(2k+1)²`.
pub fn example1_limit<R: RealScalar>() -> R {
    R::lit(7.0) * R::PI() * R::PI() / R::lit(24.0)
}

/// The section of size `n`: `T = diag(1, 2, 1, 2, …)` and the left shift,
/// both on dimension `n + 1`, with `b = (1, 1/2, …, 1/n, 0)`. Its minimizer
/// is `(0, 1, 1/2, …, 1/n)`.
pub fn example1_problem<S: Scalar>(n: usize) -> Result<QpProblem<S>> {
    let (t, b) = example1_parts::<S>(n)?;
    QpProblem::new(t, left_shift(n + 1), b)
}

fn example1_parts<S: Scalar>(n: usize) -> Result<(Matrix<S>, Vector<S>)> {
    let spec = DiagonalSpec::new(vec![1.0, 2.0], n + 1)?;
    let h = harmonic_b::<S>(n);
    let b = Vector::from_fn(n + 1, |i| if i < n { h[i] } else { S::zero() });
    Ok((diag_operator(&spec), b))
}

/// Solves the size-`n` section, densely up to [`DENSE_SECTION_LIMIT`] and
/// through [`minimize_diagonal_section`] beyond.
pub fn example1_solve<S: Scalar>(n: usize) -> Result<MinimizationResult<S>> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "section size must be at least 1".into(),
        ));
    }
    if n < DENSE_SECTION_LIMIT {
        return minimize_posdef(&example1_problem::<S>(n)?);
    }
    let spec = DiagonalSpec::new(vec![1.0, 2.0], n + 1)?;
    let h = harmonic_b::<S>(n);
    let b = Vector::from_fn(n + 1, |i| if i < n { h[i] } else { S::zero() });
    minimize_diagonal_section(
        &spec.values::<S::Real>(),
        &MonomialOperator::left_shift(n + 1),
        &b,
        &TolConfig::default(),
    )
}

/// Minimum values of the truncated problems against the limit.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationSeries<R> {
    pub sizes: Vec<usize>,
    pub min_values: Vec<R>,
    pub limit: R,
    /// `|min_value − limit|`.
    pub errors: Vec<R>,
}

/// Runs [`example1_solve`] for each size (in parallel; results are merged
/// by index). Sizes must be positive and strictly ascending.
pub fn example1_convergence<R: RealScalar>(sizes: &[usize]) -> Result<TruncationSeries<R>> {
    if sizes.is_empty() {
        return Err(Error::InvalidInput("no section sizes given".into()));
    }
    if sizes[0] == 0 || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "section sizes must be positive and strictly ascending".into(),
        ));
    }
    let min_values = sizes
        .par_iter()
        .map(|&n| example1_solve::<R>(n).map(|r| r.min_value))
        .collect::<Result<Vec<R>>>()?;
    let limit = example1_limit::<R>();
    let errors = min_values.iter().map(|&v| (v - limit).abs()).collect();
    Ok(TruncationSeries {
        sizes: sizes.to_vec(),
        min_values,
        limit,
        errors,
    })
}
