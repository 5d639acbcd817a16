//! Scalar abstractions.
//!
//! Every algorithm in this crate is written against [`Scalar`], which is
//! implemented for `f32`, `f64` and their complex counterparts. Structures
//! that stay real under conversion (Cauchy-like with real data, the
//! Toeplitz+Hankel reduction through sine/cosine transforms) therefore run
//! entirely in real arithmetic, while Fourier-based reductions lift their
//! input to [`Complex`].

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive, Zero};

/// Real floating point type underlying a [`Scalar`].
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + rustfft::FftNum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    /// Lossy conversion from an index or count.
    fn from_usize_lossy(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize representable")
    }

    /// Widening conversion used for hashing and reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Field element the solvers operate on: a real float or a complex float.
pub trait Scalar:
    NumAssign + Copy + Neg<Output = Self> + Default + Debug + Send + Sync + 'static
{
    type Real: Real;

    /// `true` for complex scalars.
    const IS_COMPLEX: bool;

    fn from_real(re: Self::Real) -> Self;

    /// Builds a scalar from its parts; real types discard `im`.
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;

    fn re(self) -> Self::Real;

    fn im(self) -> Self::Real;

    fn conj(self) -> Self;

    /// Squared modulus.
    fn norm_sqr(self) -> Self::Real;

    /// Modulus, computed without undue overflow.
    fn modulus(self) -> Self::Real;

    fn to_complex(self) -> Complex<Self::Real> {
        Complex::new(self.re(), self.im())
    }

    /// Real types keep only the real part.
    fn from_complex(z: Complex<Self::Real>) -> Self {
        Self::from_parts(z.re, z.im)
    }

    fn is_finite(self) -> bool {
        self.re().is_finite() && self.im().is_finite()
    }

    fn from_f64_lit(x: f64) -> Self {
        Self::from_real(Self::Real::lit(x))
    }

    /// Bit pattern identifying the value exactly, with `-0.0` folded onto
    /// `+0.0` so that numerically equal knots compare equal.
    fn exact_key(self) -> [u64; 2] {
        let fold = |x: f64| if x == 0.0 { 0u64 } else { x.to_bits() };
        [fold(self.re().as_f64()), fold(self.im().as_f64())]
    }
}

macro_rules! impl_real_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            type Real = $t;
            const IS_COMPLEX: bool = false;

            #[inline]
            fn from_real(re: $t) -> Self {
                re
            }
            #[inline]
            fn from_parts(re: $t, _im: $t) -> Self {
                re
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
            fn norm_sqr(self) -> $t {
                self * self
            }
            #[inline]
            fn modulus(self) -> $t {
                self.abs()
            }
        }
    };
}

impl<R: Real> Scalar for Complex<R> {
    type Real = R;
    const IS_COMPLEX: bool = true;

    #[inline]
    fn from_real(re: R) -> Self {
        Complex::new(re, R::zero())
    }
    #[inline]
    fn from_parts(re: R, im: R) -> Self {
        Complex::new(re, im)
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
    fn norm_sqr(self) -> R {
        self.re * self.re + self.im * self.im
    }
    #[inline]
    fn modulus(self) -> R {
        Float::hypot(self.re, self.im)
    }
}

impl_real_scalar!(f32);
impl_real_scalar!(f64);

/// Largest modulus in a slice (`0` when empty).
pub fn max_modulus<T: Scalar>(xs: &[T]) -> T::Real {
    xs.iter()
        .fold(T::Real::zero(), |m, &x| Float::max(m, x.modulus()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_scalars_drop_imaginary_parts() {
        assert_eq!(<f64 as Scalar>::from_parts(1.5, 7.0), 1.5);
        assert_eq!(<f64 as Scalar>::from_complex(Complex::new(2.0, 3.0)), 2.0);
        assert_eq!(2.0f64.im(), 0.0);
    }

    #[test]
    fn complex_conj_and_modulus() {
        let z = Complex::new(3.0f64, -4.0);
        assert_eq!(z.conj(), Complex::new(3.0, 4.0));
        assert_eq!(Scalar::modulus(z), 5.0);
        assert_eq!(Scalar::norm_sqr(z), 25.0);
    }

    #[test]
    fn exact_key_folds_signed_zero() {
        assert_eq!((-0.0f64).exact_key(), 0.0f64.exact_key());
        assert_ne!(1.0f64.exact_key(), (1.0f64 + f64::EPSILON).exact_key());
    }
}
