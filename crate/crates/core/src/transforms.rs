//! Unitary transforms diagonalizing the displacement operators.
//!
//! * `F_phi = diag(phi^{-k/n}) F_1` with `F_1 = (n^{-1/2} w^{-kl})`, `w = e^{2 pi i/n}`,
//!   diagonalizes the phi-circulant shift `Z_phi`.
//! * `S = (sqrt(2/(n+1)) sin(k l pi/(n+1)))` (DST-I) diagonalizes `Y_0`.
//! * `C = (sqrt(2/n) q_l cos((2k-1)(l-1) pi/(2n)))` (DCT-III, with `C^T` the
//!   DCT-II) diagonalizes `Y_1`.
//!
//! All transforms accept any length. The Fourier engine is `rustfft`, which
//! handles composite lengths by mixed radix and large prime factors by
//! Bluestein/Rader. Sine and cosine products are evaluated directly up to
//! [`DIRECT_CUTOFF`] and through a length-proportional DFT above it. Plans
//! are built per call, so every function here is safe to call concurrently.

use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex;
use num_traits::{Float, Zero};
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Sizes up to this use the direct O(n^2) sine/cosine evaluation.
pub const DIRECT_CUTOFF: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `X_k = sum_j x_j e^{-2 pi i jk/n}`.
    Forward,
    /// Exact inverse of `Forward`, including the `1/n` factor.
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierMode {
    Apply,
    ApplyAdjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosineMode {
    Apply,
    ApplyTranspose,
}

/// Unit-modulus displacement parameter `phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase<R: Real>(Complex<R>);

impl<R: Real> Phase<R> {
    /// Accepts `phi` when `| |phi| - 1 | <= max(1e-14, 4 eps)`.
    pub fn new(phi: Complex<R>) -> Result<Self> {
        let tol = Float::max(R::lit(1e-14), R::epsilon() * R::lit(4.0));
        let m = phi.norm();
        if !m.is_finite() || Float::abs(m - R::one()) > tol {
            return Err(Error::PhaseNotUnimodular {
                modulus: m.as_f64(),
            });
        }
        Ok(Phase(phi))
    }

    /// `e^{i theta}`.
    pub fn from_angle(theta: R) -> Self {
        Phase(Complex::from_polar(R::one(), theta))
    }

    pub fn one() -> Self {
        Phase(Complex::new(R::one(), R::zero()))
    }

    pub fn minus_one() -> Self {
        Phase(Complex::new(-R::one(), R::zero()))
    }

    pub fn value(self) -> Complex<R> {
        self.0
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn angle(self) -> R {
        let theta = Float::atan2(self.0.im, self.0.re);
        if theta <= -R::PI() {
            R::PI()
        } else {
            theta
        }
    }

    pub fn conj(self) -> Self {
        Phase(self.0.conj())
    }

    /// Minimal-phase n-th root `e^{i theta/n}`.
    pub fn root(self, n: usize) -> Complex<R> {
        Complex::from_polar(R::one(), self.angle() / R::from_usize_lossy(n))
    }
}

/// Discrete Fourier transform of arbitrary length.
pub fn dft<R: Real>(x: &[Complex<R>], direction: Direction) -> Result<Vec<Complex<R>>> {
    if x.is_empty() {
        return Err(Error::EmptyVector);
    }
    let n = x.len();
    let mut planner = FftPlanner::new();
    let mut buf = x.to_vec();
    match direction {
        Direction::Forward => planner.plan_fft_forward(n).process(&mut buf),
        Direction::Inverse => {
            planner.plan_fft_inverse(n).process(&mut buf);
            let scale = R::one() / R::from_usize_lossy(n);
            buf.iter_mut().for_each(|z| *z = z.scale(scale));
        }
    }
    Ok(buf)
}

/// Prepared `F_phi` of a fixed order.
#[derive(Clone)]
pub struct FourierTransform<R: Real> {
    n: usize,
    phase: Phase<R>,
    forward: Arc<dyn Fft<R>>,
    inverse: Arc<dyn Fft<R>>,
    // e^{-i theta k/n}
    twiddle: Vec<Complex<R>>,
    scale: R,
}

impl<R: Real> FourierTransform<R> {
    pub fn new(n: usize, phase: Phase<R>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        let mut planner = FftPlanner::new();
        let theta = phase.angle();
        let nr = R::from_usize_lossy(n);
        let twiddle = (0..n)
            .map(|k| Complex::from_polar(R::one(), -theta * R::from_usize_lossy(k) / nr))
            .collect();
        Ok(FourierTransform {
            n,
            phase,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            twiddle,
            scale: R::one() / Float::sqrt(nr),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn phase(&self) -> Phase<R> {
        self.phase
    }

    /// `x <- F_phi x`.
    pub fn apply_in_place(&self, x: &mut [Complex<R>]) {
        debug_assert_eq!(x.len(), self.n);
        self.forward.process(x);
        for (z, w) in x.iter_mut().zip(&self.twiddle) {
            *z *= w.scale(self.scale);
        }
    }

    /// `x <- F_phi^* x`.
    pub fn apply_adjoint_in_place(&self, x: &mut [Complex<R>]) {
        debug_assert_eq!(x.len(), self.n);
        for (z, w) in x.iter_mut().zip(&self.twiddle) {
            *z *= w.conj();
        }
        self.inverse.process(x);
        x.iter_mut().for_each(|z| *z = z.scale(self.scale));
    }

    pub fn apply_mode_in_place(&self, x: &mut [Complex<R>], mode: FourierMode) {
        match mode {
            FourierMode::Apply => self.apply_in_place(x),
            FourierMode::ApplyAdjoint => self.apply_adjoint_in_place(x),
        }
    }

    /// Applies the transform to every column of `x`.
    pub fn apply_columns(&self, x: &mut Array2<Complex<R>>, mode: FourierMode) {
        let mut buf = vec![Complex::zero(); self.n];
        for mut col in x.columns_mut() {
            for (b, v) in buf.iter_mut().zip(col.iter()) {
                *b = *v;
            }
            self.apply_mode_in_place(&mut buf, mode);
            for (v, b) in col.iter_mut().zip(&buf) {
                *v = *b;
            }
        }
    }
}

/// `F_phi X` or `F_phi^* X`, column by column.
pub fn ftimes<R: Real>(
    x: &Array2<Complex<R>>,
    phi: Phase<R>,
    mode: FourierMode,
) -> Result<Array2<Complex<R>>> {
    let plan = FourierTransform::new(x.nrows(), phi)?;
    let mut out = x.clone();
    plan.apply_columns(&mut out, mode);
    Ok(out)
}

/// The `n` values `phi^{1/n} w^k`, `k = 0..n-1`.
pub fn nroots1<R: Real>(n: usize, phi: Phase<R>) -> Result<Vec<Complex<R>>> {
    if n == 0 {
        return Err(Error::InvalidArgument("nroots1 needs n >= 1".into()));
    }
    let theta = phi.angle();
    let nr = R::from_usize_lossy(n);
    let two_pi = R::PI() + R::PI();
    Ok((0..n)
        .map(|k| Complex::from_polar(R::one(), (theta + two_pi * R::from_usize_lossy(k)) / nr))
        .collect())
}

/// Eigenvalues `2 cos(k pi/(n+1))`, `k = 1..n`, of `Y_0` (ordered as `S`).
pub fn sine_knots<R: Real>(n: usize) -> Vec<R> {
    let h = R::PI() / R::from_usize_lossy(n + 1);
    (1..=n)
        .map(|k| R::lit(2.0) * Float::cos(h * R::from_usize_lossy(k)))
        .collect()
}

/// Eigenvalues `2 cos((k-1) pi/n)`, `k = 1..n`, of `Y_1` (ordered as `C`).
pub fn cosine_knots<R: Real>(n: usize) -> Vec<R> {
    let h = R::PI() / R::from_usize_lossy(n);
    (0..n)
        .map(|k| R::lit(2.0) * Float::cos(h * R::from_usize_lossy(k)))
        .collect()
}

/// Prepared DST-I `S` of order `n`.
#[derive(Clone)]
pub struct SineTransform<R: Real> {
    n: usize,
    kernel: TrigKernel<R>,
}

/// Prepared DCT `C` (and `C^T`) of order `n`.
#[derive(Clone)]
pub struct CosineTransform<R: Real> {
    n: usize,
    kernel: TrigKernel<R>,
}

#[derive(Clone)]
enum TrigKernel<R: Real> {
    // table of the periodic trig function over one period
    Direct(Vec<R>),
    Fft {
        forward: Arc<dyn Fft<R>>,
        inverse: Arc<dyn Fft<R>>,
        twiddle: Vec<Complex<R>>,
    },
}

impl<R: Real> SineTransform<R> {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        let period = 2 * (n + 1);
        let kernel = if n <= DIRECT_CUTOFF {
            let h = R::PI() / R::from_usize_lossy(n + 1);
            TrigKernel::Direct(
                (0..period)
                    .map(|m| Float::sin(h * R::from_usize_lossy(m)))
                    .collect(),
            )
        } else {
            let mut planner = FftPlanner::new();
            TrigKernel::Fft {
                forward: planner.plan_fft_forward(period),
                inverse: planner.plan_fft_inverse(period),
                twiddle: Vec::new(),
            }
        };
        Ok(SineTransform { n, kernel })
    }

    /// `out <- S x` for real data.
    pub fn apply_real(&self, x: &[R], out: &mut [R]) {
        let n = self.n;
        let scale = Float::sqrt(R::lit(2.0) / R::from_usize_lossy(n + 1));
        match &self.kernel {
            TrigKernel::Direct(table) => {
                let period = table.len();
                for (k, o) in out.iter_mut().enumerate() {
                    let mut acc = R::zero();
                    let mut idx = 0usize;
                    let step = k + 1;
                    for &xl in x {
                        idx += step;
                        if idx >= period {
                            idx -= period;
                        }
                        acc += table[idx] * xl;
                    }
                    *o = acc * scale;
                }
            }
            TrigKernel::Fft { forward, .. } => {
                let period = 2 * (n + 1);
                let mut buf = vec![Complex::<R>::zero(); period];
                for (l, &xl) in x.iter().enumerate() {
                    buf[l + 1] = Complex::new(xl, R::zero());
                    buf[period - 1 - l] = Complex::new(-xl, R::zero());
                }
                forward.process(&mut buf);
                let half = R::lit(0.5);
                for (k, o) in out.iter_mut().enumerate() {
                    *o = -buf[k + 1].im * half * scale;
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

impl<R: Real> CosineTransform<R> {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        let kernel = if n <= DIRECT_CUTOFF {
            let period = 4 * n;
            let h = R::PI() / R::from_usize_lossy(2 * n);
            TrigKernel::Direct(
                (0..period)
                    .map(|m| Float::cos(h * R::from_usize_lossy(m)))
                    .collect(),
            )
        } else {
            let mut planner = FftPlanner::new();
            let h = R::PI() / R::from_usize_lossy(2 * n);
            TrigKernel::Fft {
                forward: planner.plan_fft_forward(2 * n),
                inverse: planner.plan_fft_inverse(2 * n),
                // e^{i pi m/(2n)}
                twiddle: (0..n)
                    .map(|m| Complex::from_polar(R::one(), h * R::from_usize_lossy(m)))
                    .collect(),
            }
        };
        Ok(CosineTransform { n, kernel })
    }

    fn q(m: usize) -> R {
        if m == 0 {
            Float::sqrt(R::lit(0.5))
        } else {
            R::one()
        }
    }

    /// `out <- C x` (DCT-III) for real data.
    pub fn apply_real(&self, x: &[R], out: &mut [R]) {
        let n = self.n;
        let scale = Float::sqrt(R::lit(2.0) / R::from_usize_lossy(n));
        match &self.kernel {
            TrigKernel::Direct(table) => {
                let period = table.len();
                for (j, o) in out.iter_mut().enumerate() {
                    let mut acc = R::zero();
                    for (m, &xm) in x.iter().enumerate() {
                        acc += Self::q(m) * table[((2 * j + 1) * m) % period] * xm;
                    }
                    *o = acc * scale;
                }
            }
            TrigKernel::Fft {
                inverse, twiddle, ..
            } => {
                let mut buf = vec![Complex::<R>::zero(); 2 * n];
                for (m, &xm) in x.iter().enumerate() {
                    buf[m] = twiddle[m].scale(Self::q(m) * xm);
                }
                inverse.process(&mut buf);
                for (j, o) in out.iter_mut().enumerate() {
                    *o = buf[j].re * scale;
                }
            }
        }
    }

    /// `out <- C^T x` (DCT-II) for real data.
    pub fn apply_transpose_real(&self, x: &[R], out: &mut [R]) {
        let n = self.n;
        let scale = Float::sqrt(R::lit(2.0) / R::from_usize_lossy(n));
        match &self.kernel {
            TrigKernel::Direct(table) => {
                let period = table.len();
                for (m, o) in out.iter_mut().enumerate() {
                    let mut acc = R::zero();
                    for (j, &xj) in x.iter().enumerate() {
                        acc += table[((2 * j + 1) * m) % period] * xj;
                    }
                    *o = acc * scale * Self::q(m);
                }
            }
            TrigKernel::Fft {
                forward, twiddle, ..
            } => {
                let mut buf = vec![Complex::<R>::zero(); 2 * n];
                for (j, &xj) in x.iter().enumerate() {
                    buf[j] = Complex::new(xj, R::zero());
                    buf[2 * n - 1 - j] = Complex::new(xj, R::zero());
                }
                forward.process(&mut buf);
                let half = R::lit(0.5);
                for (m, o) in out.iter_mut().enumerate() {
                    *o = (twiddle[m].conj() * buf[m]).re * half * scale * Self::q(m);
                }
            }
        }
    }

    pub fn apply_mode_real(&self, x: &[R], out: &mut [R], mode: CosineMode) {
        match mode {
            CosineMode::Apply => self.apply_real(x, out),
            CosineMode::ApplyTranspose => self.apply_transpose_real(x, out),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Applies a real linear map to each column of `x`, treating real and
/// imaginary parts separately so that real data stays exactly real.
pub(crate) fn map_real_parts<T, F>(x: &Array2<T>, kernel: F) -> Array2<T>
where
    T: Scalar,
    F: Fn(&[T::Real], &mut [T::Real]),
{
    let (n, d) = x.dim();
    let mut out = Array2::<T>::zeros((n, d));
    let mut src = vec![T::Real::zero(); n];
    let mut re = vec![T::Real::zero(); n];
    let mut im = vec![T::Real::zero(); n];
    for j in 0..d {
        for (i, v) in src.iter_mut().enumerate() {
            *v = x[[i, j]].re();
        }
        kernel(&src, &mut re);
        if T::IS_COMPLEX {
            for (i, v) in src.iter_mut().enumerate() {
                *v = x[[i, j]].im();
            }
            kernel(&src, &mut im);
        }
        for i in 0..n {
            out[[i, j]] = T::from_parts(re[i], im[i]);
        }
    }
    out
}

/// `S X`; `S` is real, symmetric and involutory.
pub fn stimes<T: Scalar>(x: &Array2<T>) -> Result<Array2<T>> {
    let plan = SineTransform::<T::Real>::new(x.nrows())?;
    Ok(map_real_parts(x, |src, dst| plan.apply_real(src, dst)))
}

/// `C X` or `C^T X`; `C` is real orthogonal.
pub fn ctimes<T: Scalar>(x: &Array2<T>, mode: CosineMode) -> Result<Array2<T>> {
    let plan = CosineTransform::<T::Real>::new(x.nrows())?;
    Ok(map_real_parts(x, |src, dst| {
        plan.apply_mode_real(src, dst, mode)
    }))
}
