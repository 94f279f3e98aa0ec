//! Scalar abstraction shared by every matrix routine.
//!
//! All routines are written against [`Scalar`], which covers real (`f32`,
//! `f64`) and complex (`Complex<f32>`, `Complex<f64>`) fields. Real problems
//! simply instantiate with a real type; the algorithms never branch on which
//! field they run over.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign, Zero};

/// A field element usable as a matrix entry.
pub trait Scalar:
    Copy + PartialEq + Debug + Send + Sync + 'static + NumAssign + std::ops::Neg<Output = Self> + Sum
{
    /// Underlying real type (the type of moduli, norms and eigenvalues).
    type Real: RealScalar;

    /// `true` for complex fields.
    const IS_COMPLEX: bool;

    fn from_real(re: Self::Real) -> Self;

    /// Builds `re + i·im`. Real fields only accept `im == 0`.
    fn from_parts(re: Self::Real, im: Self::Real) -> Option<Self>;

    fn re(self) -> Self::Real;
    fn im(self) -> Self::Real;
    fn conj(self) -> Self;

    /// `|z|`, computed without intermediate overflow.
    fn modulus(self) -> Self::Real;

    /// `|z|²`.
    fn modulus_sqr(self) -> Self::Real {
        let (re, im) = (self.re(), self.im());
        re * re + im * im
    }

    fn scale(self, factor: Self::Real) -> Self;

    fn finite(self) -> bool {
        Float::is_finite(self.re()) && Float::is_finite(self.im())
    }

    /// `z / |z|`, or one for zero.
    fn phase(self) -> Self {
        let m = self.modulus();
        if m == Self::Real::zero() {
            Self::one()
        } else {
            self.scale(m.recip())
        }
    }
}

/// A real field: the `Real` type of every [`Scalar`].
pub trait RealScalar: Scalar<Real = Self> + Float + FloatConst + Display + PartialOrd {
    /// Lossy conversion from an `f64` literal or tolerance.
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    /// Default relative tolerance for checks that should hold to
    /// "factorization accuracy": 1e-10 in double precision, looser in single.
    fn default_tol() -> Self {
        let floor = Self::epsilon() * Self::lit(1e3);
        Self::lit(1e-10).max(floor)
    }
}

macro_rules! real_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            type Real = $t;
            const IS_COMPLEX: bool = false;

            #[inline]
            fn from_real(re: $t) -> Self {
                re
            }
            #[inline]
            fn from_parts(re: $t, im: $t) -> Option<Self> {
                (im == 0.0).then_some(re)
            }
            #[inline]
            fn re(self) -> $t {
                self
            }
            #[inline]
            fn im(self) -> $t {
                0.0
            }
            #[inline]
            fn conj(self) -> Self {
                self
            }
            #[inline]
            fn modulus(self) -> $t {
                self.abs()
            }
            #[inline]
            fn modulus_sqr(self) -> $t {
                self * self
            }
            #[inline]
            fn scale(self, factor: $t) -> Self {
                self * factor
            }
            #[inline]
            fn finite(self) -> bool {
                <$t>::is_finite(self)
            }
        }

        impl RealScalar for $t {}
    };
}

real_scalar!(f32);
real_scalar!(f64);

impl<R: RealScalar> Scalar for Complex<R>
where
    Complex<R>: NumAssign + Sum,
{
    type Real = R;
    const IS_COMPLEX: bool = true;

    #[inline]
    fn from_real(re: R) -> Self {
        Complex::new(re, R::zero())
    }
    #[inline]
    fn from_parts(re: R, im: R) -> Option<Self> {
        Some(Complex::new(re, im))
    }
    #[inline]
    fn re(self) -> R {
        self.re
    }
    #[inline]
    fn im(self) -> R {
        self.im
    }
    #[inline]
    fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }
    #[inline]
    fn modulus(self) -> R {
        self.re.hypot(self.im)
    }
    #[inline]
    fn scale(self, factor: R) -> Self {
        Complex::new(self.re * factor, self.im * factor)
    }
}
