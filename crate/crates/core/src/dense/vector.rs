use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::dense::matrix::frobenius;
use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Scalar};

/// Dense column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S> {
    data: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    /// Rejects non-finite entries.
    pub fn new(data: Vec<S>) -> Result<Self> {
        if let Some(k) = data.iter().position(|x| !x.finite()) {
            return Err(Error::NonFinite { row: k, col: 0 });
        }
        Ok(Self { data })
    }

    pub fn from_real(data: &[f64]) -> Result<Self> {
        Self::new(
            data.iter()
                .map(|&x| S::from_real(S::Real::lit(x)))
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            data: vec![S::zero(); n],
        }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> S) -> Self {
        Self {
            data: (0..n).map(f).collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<S> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.data.iter()
    }

    pub fn norm(&self) -> S::Real {
        frobenius(&self.data)
    }

    pub fn norm_sqr(&self) -> S::Real {
        self.data
            .iter()
            .fold(S::Real::zero(), |acc, x| acc + x.modulus_sqr())
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn dot(&self, other: &Self) -> S {
        debug_assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a.conj() * b)
            .sum()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with("vector add", rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with("vector sub", rhs, |a, b| a - b)
    }

    pub fn scale(&self, factor: S::Real) -> Self {
        Self {
            data: self.data.iter().map(|x| x.scale(factor)).collect(),
        }
    }

    /// `‖self − other‖`; infinite when the lengths differ.
    pub fn distance(&self, other: &Self) -> S::Real {
        match self.sub(other) {
            Ok(d) => d.norm(),
            Err(_) => <S::Real as num_traits::Float>::infinity(),
        }
    }

    /// Largest `|self_i − other_i|`.
    pub fn max_abs_diff(&self, other: &Self) -> S::Real {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).modulus())
            .fold(S::Real::zero(), |acc, x| if x > acc { x } else { acc })
    }

    fn zip_with(&self, op: &'static str, rhs: &Self, f: impl Fn(S, S) -> S) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                op,
                left: (self.dim(), 1),
                right: (rhs.dim(), 1),
            });
        }
        Ok(Self {
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.data[i]
    }
}

impl<S> IndexMut<usize> for Vector<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.data[i]
    }
}

impl<S: Scalar> From<Vector<S>> for Vec<S> {
    fn from(v: Vector<S>) -> Self {
        v.data
    }
}
