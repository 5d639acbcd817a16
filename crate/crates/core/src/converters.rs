//! Generators of classical structured matrices and reductions to Cauchy-like form.
//!
//! If `E = U D_t U^{-1}` and `F = V D_s V^{-1}` with unitary `U`, `V`, then
//! `E A - A F = G H^*` turns into `D_t C - C D_s = (U^* G)(V^* H)^*` for
//! `C = U^* A V`, and `A x = b` becomes `C x~ = U^* b` with `x = V x~`.
//!
//! | class                 | E        | F          | U       | V       |
//! |-----------------------|----------|------------|---------|---------|
//! | Toeplitz-like         | `Z_xi`   | `Z_eta`    | `F_xi`  | `F_eta` |
//! | Toeplitz+Hankel-like  | `Y_0`    | `Y_1`      | `S`     | `C`     |
//! | Vandermonde-like      | `D_w`    | `Z_phi^*`  | `I`     | `F_phi` |

use ndarray::Array2;
use num_complex::Complex;
use num_traits::{Float, FloatConst, One};

use crate::displacement::{
    exact_index, CauchyLike, Toeplitz, ToeplitzHankel, ToeplitzHankelLike, ToeplitzLike,
    Vandermonde, VandermondeLike,
};
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::transforms::{
    cosine_knots, map_real_parts, nroots1, sine_knots, CosineMode, CosineTransform, FourierMode,
    FourierTransform, Phase, SineTransform,
};

/// A unitary change of basis appearing in `C = U^* A V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis<R: Real> {
    Identity,
    /// `F_phi`.
    Fourier(Phase<R>),
    /// DST-I `S` (symmetric and involutory).
    Sine,
    /// DCT `C` (real orthogonal).
    Cosine,
}

impl<R: Real> Basis<R> {
    fn transform<T: Scalar<Real = R>>(&self, x: &Array2<T>, adjoint: bool) -> Result<Array2<T>> {
        let n = x.nrows();
        match *self {
            Basis::Identity => Ok(x.clone()),
            Basis::Fourier(phase) => {
                if !T::IS_COMPLEX {
                    return Err(Error::InvalidArgument(
                        "Fourier basis needs complex data".into(),
                    ));
                }
                let plan = FourierTransform::new(n, phase)?;
                let mut z = x.mapv(|v| v.to_complex());
                let mode = if adjoint {
                    FourierMode::ApplyAdjoint
                } else {
                    FourierMode::Apply
                };
                plan.apply_columns(&mut z, mode);
                Ok(z.mapv(T::from_complex))
            }
            Basis::Sine => {
                let plan = SineTransform::<R>::new(n)?;
                Ok(map_real_parts(x, |a, b| plan.apply_real(a, b)))
            }
            Basis::Cosine => {
                let plan = CosineTransform::<R>::new(n)?;
                let mode = if adjoint {
                    CosineMode::ApplyTranspose
                } else {
                    CosineMode::Apply
                };
                Ok(map_real_parts(x, |a, b| plan.apply_mode_real(a, b, mode)))
            }
        }
    }

    /// `M X` for the basis matrix `M`.
    pub fn apply<T: Scalar<Real = R>>(&self, x: &Array2<T>) -> Result<Array2<T>> {
        self.transform(x, false)
    }

    /// `M^* X`, which is also `M^{-1} X`.
    pub fn apply_adjoint<T: Scalar<Real = R>>(&self, x: &Array2<T>) -> Result<Array2<T>> {
        self.transform(x, true)
    }
}

/// Output of a reduction: `C = U^* A V` plus the bases needed to map
/// right-hand sides in and solutions back out.
#[derive(Debug, Clone)]
pub struct Conversion<T: Scalar> {
    pub cauchy: CauchyLike<T>,
    /// `U`; right-hand sides are mapped by `U^*`.
    pub left: Basis<T::Real>,
    /// `V`; solutions are recovered as `x = V x~`.
    pub right: Basis<T::Real>,
    /// `U^* b` when a right-hand side was supplied.
    pub rhs: Option<Array2<T>>,
}

impl<T: Scalar> Conversion<T> {
    /// `x = V x~`.
    pub fn recover(&self, x_tilde: &Array2<T>) -> Result<Array2<T>> {
        self.right.apply(x_tilde)
    }

    /// `U^* b`.
    pub fn transform_rhs(&self, b: &Array2<T>) -> Result<Array2<T>> {
        self.left.apply_adjoint(b)
    }
}

/// Entrywise lift to complex scalars.
pub fn lift<T: Scalar>(a: &Array2<T>) -> Array2<Complex<T::Real>> {
    a.mapv(|v| v.to_complex())
}

fn check_rhs<T>(n: usize, b: Option<&Array2<T>>) -> Result<()> {
    match b {
        Some(b) if b.nrows() != n => Err(Error::DimensionMismatch(format!(
            "right-hand side has {} rows, expected {n}",
            b.nrows()
        ))),
        _ => Ok(()),
    }
}

/// `G`, `H` with `Z_1 T - T Z_{-1} = G H^*`.
pub fn toeplitz_generators<T: Scalar>(t: &Toeplitz<T>) -> Result<(Array2<T>, Array2<T>)> {
    t.check_consistent()?;
    let n = t.n();
    let mut g = Array2::<T>::zeros((n, 2));
    let mut h = Array2::<T>::zeros((n, 2));
    g[[0, 0]] = t.coeff(0);
    g[[0, 1]] = T::one();
    for i in 1..n {
        g[[i, 0]] = t.coeff(i as isize - n as isize) + t.coeff(i as isize);
    }
    for i in 0..n - 1 {
        let k = i as isize;
        h[[i, 1]] = (t.coeff(n as isize - 1 - k) - t.coeff(-1 - k)).conj();
    }
    h[[n - 1, 0]] = T::one();
    h[[n - 1, 1]] = t.coeff(0).conj();
    Ok((g, h))
}

/// `G`, `H` (rank 4) with `Y_0 K - K Y_1 = G H^*`; needs `n >= 2`.
pub fn th_generators<T: Scalar>(k: &ToeplitzHankel<T>) -> Result<(Array2<T>, Array2<T>)> {
    let n = k.n();
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    let ni = n as isize;
    let t = |i: isize| k.t_coeff(i);
    let h = |i: usize| k.h_coeff(i);

    let mut g = Array2::<T>::zeros((n, 4));
    g[[0, 0]] = t(0) - t(1) + h(0);
    g[[0, 1]] = -T::one();
    g[[0, 3]] = t(1 - ni) + h(n - 1) - h(n);
    for i in 1..n - 1 {
        let ii = i as isize;
        g[[i, 0]] = t(ii) - t(ii + 1) + h(i) - h(i - 1);
        g[[i, 3]] = t(ii + 1 - ni) - t(ii - ni) + h(n - 1 + i) - h(n + i);
    }
    g[[n - 1, 0]] = t(ni - 1) + h(n - 1) - h(n - 2);
    g[[n - 1, 2]] = -T::one();
    g[[n - 1, 3]] = t(0) - t(-1) + h(2 * n - 2);

    // rows of H^*, then conjugated into H
    let mut hs = Array2::<T>::zeros((4, n));
    hs[[0, 0]] = -T::one();
    hs[[3, n - 1]] = -T::one();
    hs[[1, 0]] = t(-1);
    hs[[1, n - 1]] = h(n - 2);
    hs[[2, 0]] = h(n);
    hs[[2, n - 1]] = t(1);
    for j in 1..n - 1 {
        let jj = j as isize;
        hs[[1, j]] = t(-jj - 1) + h(j - 1);
        hs[[2, j]] = t(ni - jj) + h(n + j);
    }
    Ok((g, hs.t().mapv(|v| v.conj())))
}

/// Indices `i` whose node makes `w_i` coincide with a right knot
/// `conj(phi^{1/n} w^k)` of the Cauchy-like reduction, i.e. `w_i^n = conj(phi)`
/// up to rounding in the power.
pub fn node_collisions<T: Scalar>(w: &[T], phi: Complex<T::Real>) -> Vec<usize> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let target = phi.conj();
    let knots: Vec<Complex<T::Real>> = match Phase::new(phi) {
        Ok(p) => nroots1(n, p)
            .map(|v| v.into_iter().map(|z| z.conj()).collect())
            .unwrap_or_default(),
        Err(_) => Vec::new(),
    };
    let knot_index = exact_index(&knots);
    let eps = T::Real::epsilon();
    let nr = T::Real::from_usize_lossy(n);
    let four = T::Real::lit(4.0);
    w.iter()
        .enumerate()
        .filter(|(_, wi)| {
            let z = wi.to_complex();
            if knot_index.contains_key(&z.exact_key()) {
                return true;
            }
            let p = z.powu(n as u32);
            let tol = four * nr * eps * Float::max(T::Real::one(), p.norm());
            (p - target).norm() <= tol
        })
        .map(|(i, _)| i)
        .collect()
}

/// A generator pair `(G, H)`.
pub type Generators<T> = (Array2<T>, Array2<T>);

/// `G = (w_i^n - conj(phi))`, `H = e_1`, with `D_w W - W Z_phi^* = G H^*`.
pub fn vandermonde_generators<T: Scalar>(
    w: &Vandermonde<T>,
    phi: Phase<T::Real>,
) -> Result<Generators<Complex<T::Real>>> {
    if let Some(&index) = node_collisions(w.nodes(), phi.value()).first() {
        return Err(Error::NodeCollision { index });
    }
    let n = w.n();
    let target = phi.value().conj();
    let g = Array2::from_shape_fn((n, 1), |(i, _)| {
        w.nodes()[i].to_complex().powu(n as u32) - target
    });
    let mut h = Array2::zeros((n, 1));
    h[[0, 0]] = Complex::one();
    Ok((g, h))
}

/// `(xi, eta)` maximizing the minimal knot separation for a square system.
///
/// Knots `xi^{1/n} w^k` and `eta^{1/n} w^k` interleave on the unit circle;
/// `eta = -xi` places each right knot halfway between two left knots, which
/// gives the largest possible separation `2 sin(pi/(2n))`.
pub fn optimal_toeplitz_parameters<R: Real>() -> (Phase<R>, Phase<R>) {
    (Phase::one(), Phase::minus_one())
}

/// Default `phi` for Vandermonde reductions: the point of the 64-point
/// unit-circle grid that maximizes `min_i |w_i^n - conj(phi)|` (first wins ties).
pub fn default_vandermonde_phase<T: Scalar>(w: &[T]) -> Phase<T::Real> {
    const GRID: usize = 64;
    let n = w.len();
    let powers: Vec<Complex<T::Real>> = w.iter().map(|z| z.to_complex().powu(n as u32)).collect();
    let two_pi = T::Real::PI() + T::Real::PI();
    let mut best = (Phase::one(), T::Real::neg_infinity());
    for m in 0..GRID {
        let theta = two_pi * T::Real::from_usize_lossy(m) / T::Real::from_usize_lossy(GRID);
        let cand = if m == 0 {
            Phase::one()
        } else if 2 * m == GRID {
            Phase::minus_one()
        } else {
            Phase::from_angle(theta)
        };
        let target = cand.value().conj();
        let score = powers.iter().fold(T::Real::infinity(), |acc, p| {
            let d = (*p - target).norm();
            if d.is_nan() {
                acc
            } else {
                Float::min(acc, d)
            }
        });
        if score > best.1 {
            best = (cand, score);
        }
    }
    best.0
}

/// Toeplitz-like to Cauchy-like: `C = F_xi^* A F_eta`.
pub fn tl2cl<T: Scalar>(
    repr: &ToeplitzLike<T>,
    b: Option<&Array2<T>>,
) -> Result<Conversion<Complex<T::Real>>> {
    let n = repr.n();
    check_rhs(n, b)?;
    let xi = Phase::new(repr.xi())?;
    let eta = Phase::new(repr.eta())?;
    if xi.value() == eta.value() {
        return Err(Error::EqualDisplacementParameters);
    }
    let fxi = FourierTransform::new(n, xi)?;
    let feta = FourierTransform::new(n, eta)?;
    let mut g = lift(repr.g());
    let mut h = lift(repr.h());
    fxi.apply_columns(&mut g, FourierMode::ApplyAdjoint);
    feta.apply_columns(&mut h, FourierMode::ApplyAdjoint);
    let rhs = b.map(|b| {
        let mut bt = lift(b);
        fxi.apply_columns(&mut bt, FourierMode::ApplyAdjoint);
        bt
    });
    Ok(Conversion {
        cauchy: CauchyLike::new(nroots1(n, xi)?, nroots1(n, eta)?, g, h)?,
        left: Basis::Fourier(xi),
        right: Basis::Fourier(eta),
        rhs,
    })
}

/// Toeplitz to Cauchy-like through the `(Z_1, Z_{-1})` generators.
pub fn t2cl<T: Scalar>(
    t: &Toeplitz<T>,
    b: Option<&Array2<T>>,
) -> Result<Conversion<Complex<T::Real>>> {
    let (g, h) = toeplitz_generators(t)?;
    let (one, minus_one) = (Phase::<T::Real>::one(), Phase::<T::Real>::minus_one());
    let repr = ToeplitzLike::new(g, h, one.value(), minus_one.value())?;
    tl2cl(&repr, b)
}

/// Toeplitz+Hankel-like to Cauchy-like: `C = S A C`, entirely in the scalar type of the input.
pub fn thl2cl<T: Scalar>(
    repr: &ToeplitzHankelLike<T>,
    b: Option<&Array2<T>>,
) -> Result<Conversion<T>> {
    let n = repr.n();
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    check_rhs(n, b)?;
    let sine = SineTransform::<T::Real>::new(n)?;
    let cosine = CosineTransform::<T::Real>::new(n)?;
    let g = map_real_parts(repr.g(), |a, o| sine.apply_real(a, o));
    let h = map_real_parts(repr.h(), |a, o| cosine.apply_transpose_real(a, o));
    let rhs = b.map(|b| map_real_parts(b, |a, o| sine.apply_real(a, o)));
    let t = sine_knots::<T::Real>(n)
        .into_iter()
        .map(T::from_real)
        .collect();
    let s = cosine_knots::<T::Real>(n)
        .into_iter()
        .map(T::from_real)
        .collect();
    Ok(Conversion {
        cauchy: CauchyLike::new(t, s, g, h)?,
        left: Basis::Sine,
        right: Basis::Cosine,
        rhs,
    })
}

/// Toeplitz+Hankel to Cauchy-like.
pub fn th2cl<T: Scalar>(k: &ToeplitzHankel<T>, b: Option<&Array2<T>>) -> Result<Conversion<T>> {
    let (g, h) = th_generators(k)?;
    thl2cl(&ToeplitzHankelLike::new(g, h)?, b)
}

/// Vandermonde-like to Cauchy-like: `C = A F_phi`, left knots `w`,
/// right knots `conj(phi^{1/n} w^k)`.
pub fn vl2cl<T: Scalar>(
    repr: &VandermondeLike<T>,
    b: Option<&Array2<T>>,
) -> Result<Conversion<Complex<T::Real>>> {
    let n = repr.n();
    check_rhs(n, b)?;
    let phi = Phase::new(repr.phi())?;
    if let Some(&index) = node_collisions(repr.nodes(), phi.value()).first() {
        return Err(Error::NodeCollision { index });
    }
    let f = FourierTransform::new(n, phi)?;
    let mut h = lift(repr.h());
    f.apply_columns(&mut h, FourierMode::ApplyAdjoint);
    let t = repr.nodes().iter().map(|z| z.to_complex()).collect();
    let s = nroots1(n, phi)?.into_iter().map(|z| z.conj()).collect();
    Ok(Conversion {
        cauchy: CauchyLike::new(t, s, lift(repr.g()), h)?,
        left: Basis::Identity,
        right: Basis::Fourier(phi),
        rhs: b.map(lift),
    })
}

/// Vandermonde to Cauchy-like; `phi` defaults to [`default_vandermonde_phase`].
pub fn v2cl<T: Scalar>(
    w: &Vandermonde<T>,
    phi: Option<Phase<T::Real>>,
    b: Option<&Array2<T>>,
) -> Result<Conversion<Complex<T::Real>>> {
    let phi = phi.unwrap_or_else(|| default_vandermonde_phase(w.nodes()));
    let (g, h) = vandermonde_generators(w, phi)?;
    let nodes = w.nodes().iter().map(|z| z.to_complex()).collect();
    let repr = VandermondeLike::new(nodes, phi.value(), g, h)?;
    vl2cl(&repr, b.map(lift).as_ref())
}
