//! Dense reference implementations for verification.
//!
//! Nothing here calls the fast paths of this crate: transforms are
//! assembled entry by entry, displacement operators are applied from their
//! definitions, and linear systems are solved by LU with partial pivoting.

use ndarray::{linalg::general_mat_mul, s, Array2, ArrayView2, ArrayViewMut2, Axis};
use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

const PANEL: usize = 96;

/// LU factorization with partial pivoting, stored in place: unit lower
/// triangular `L` below the diagonal, `U` on and above it.
#[derive(Debug, Clone)]
pub struct DenseLu<T> {
    lu: Array2<T>,
    /// Row `k` of `LU` is row `perm[k]` of `A`.
    perm: Vec<usize>,
}

fn check_square<T>(a: &ArrayView2<T>) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(a.nrows())
}

impl<T: Scalar> DenseLu<T> {
    /// Right-looking blocked factorization; trailing updates go through GEMM.
    pub fn factor(a: &Array2<T>) -> Result<Self> {
        let n = check_square(&a.view())?;
        let mut lu = a.as_standard_layout().into_owned();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut k0 = 0;
        while k0 < n {
            let k1 = (k0 + PANEL).min(n);
            for j in k0..k1 {
                let mut p = j;
                let mut best = T::Real::zero();
                for i in j..n {
                    let m = lu[[i, j]].norm_sqr();
                    if m > best {
                        best = m;
                        p = i;
                    }
                }
                if best == T::Real::zero() {
                    return Err(Error::SingularMatrix { step: j });
                }
                if p != j {
                    swap_rows(&mut lu.view_mut(), p, j);
                    perm.swap(p, j);
                }
                let inv = T::one() / lu[[j, j]];
                for i in j + 1..n {
                    let lij = lu[[i, j]] * inv;
                    lu[[i, j]] = lij;
                    if lij != T::zero() {
                        for c in j + 1..k1 {
                            let ujc = lu[[j, c]];
                            lu[[i, c]] -= lij * ujc;
                        }
                    }
                }
            }
            if k1 < n {
                // U12 <- L11^{-1} A12
                for i in k0..k1 {
                    for p in k0..i {
                        let lip = lu[[i, p]];
                        if lip == T::zero() {
                            continue;
                        }
                        let (top, mut bottom) = lu.view_mut().split_at(Axis(0), i);
                        let src = top.slice(s![p, k1..]);
                        let mut dst = bottom.slice_mut(s![0, k1..]);
                        dst.zip_mut_with(&src, |d, &v| *d -= lip * v);
                    }
                }
                let (top, mut bottom) = lu.view_mut().split_at(Axis(0), k1);
                let u12 = top.slice(s![k0..k1, k1..]);
                let (l21, mut a22) = bottom.view_mut().split_at(Axis(1), k1);
                let l21 = l21.slice(s![.., k0..k1]);
                general_mat_mul(-T::one(), &l21, &u12, T::one(), &mut a22.view_mut());
            }
            k0 = k1;
        }
        Ok(DenseLu { lu, perm })
    }

    pub fn n(&self) -> usize {
        self.lu.nrows()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// The `U` factor.
    pub fn u(&self) -> Array2<T> {
        let n = self.n();
        Array2::from_shape_fn(
            (n, n),
            |(i, j)| if i <= j { self.lu[[i, j]] } else { T::zero() },
        )
    }

    pub fn solve(&self, b: &Array2<T>) -> Result<Array2<T>> {
        let n = self.n();
        if b.nrows() != n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, expected {n}",
                b.nrows()
            )));
        }
        let mut x = b.select(Axis(0), &self.perm);
        for i in 0..n {
            for p in 0..i {
                let lip = self.lu[[i, p]];
                if lip == T::zero() {
                    continue;
                }
                let (top, mut bottom) = x.view_mut().split_at(Axis(0), i);
                bottom
                    .row_mut(0)
                    .zip_mut_with(&top.row(p), |d, &v| *d -= lip * v);
            }
        }
        for i in (0..n).rev() {
            for p in i + 1..n {
                let uip = self.lu[[i, p]];
                if uip == T::zero() {
                    continue;
                }
                let (mut top, bottom) = x.view_mut().split_at(Axis(0), i + 1);
                top.row_mut(i)
                    .zip_mut_with(&bottom.row(p - i - 1), |d, &v| *d -= uip * v);
            }
            let inv = T::one() / self.lu[[i, i]];
            x.row_mut(i).mapv_inplace(|v| v * inv);
        }
        Ok(x)
    }
}

fn swap_rows<T: Copy>(a: &mut ArrayViewMut2<T>, i: usize, j: usize) {
    let (lo, hi) = (i.min(j), i.max(j));
    let (mut top, mut bottom) = a.view_mut().split_at(Axis(0), hi);
    let mut r1 = top.row_mut(lo);
    let mut r2 = bottom.row_mut(0);
    for (x, y) in r1.iter_mut().zip(r2.iter_mut()) {
        std::mem::swap(x, y);
    }
}

/// `A^{-1} B` by LU with partial pivoting.
pub fn dense_solve<T: Scalar>(a: &Array2<T>, b: &Array2<T>) -> Result<Array2<T>> {
    DenseLu::factor(a)?.solve(b)
}

/// `A^{-1}`.
pub fn dense_inverse<T: Scalar>(a: &Array2<T>) -> Result<Array2<T>> {
    dense_solve(a, &Array2::eye(a.nrows()))
}

/// `U` of the unpivoted factorization `A = L U`.
pub fn dense_lu_nopivot_u<T: Scalar>(a: &Array2<T>) -> Result<Array2<T>> {
    let n = check_square(&a.view())?;
    let mut u = a.to_owned();
    for k in 0..n {
        let d = u[[k, k]];
        if d == T::zero() {
            return Err(Error::SingularLeadingMinor { step: k });
        }
        for i in k + 1..n {
            let l = u[[i, k]] / d;
            u[[i, k]] = T::zero();
            for j in k + 1..n {
                let ukj = u[[k, j]];
                u[[i, j]] -= l * ukj;
            }
        }
    }
    Ok(u)
}

/// Maximum absolute column sum.
pub fn norm1<T: Scalar>(a: &Array2<T>) -> T::Real {
    a.columns()
        .into_iter()
        .map(|c| c.iter().fold(T::Real::zero(), |acc, v| acc + v.modulus()))
        .fold(T::Real::zero(), Float::max)
}

/// Maximum absolute row sum.
pub fn norm_inf<T: Scalar>(a: &Array2<T>) -> T::Real {
    a.rows()
        .into_iter()
        .map(|r| r.iter().fold(T::Real::zero(), |acc, v| acc + v.modulus()))
        .fold(T::Real::zero(), Float::max)
}

/// Largest entry modulus.
pub fn max_abs<T: Scalar>(a: &Array2<T>) -> T::Real {
    a.iter()
        .fold(T::Real::zero(), |m, v| Float::max(m, v.modulus()))
}

/// `max|x - y| / max|y|`.
pub fn rel_error<T: Scalar>(x: &Array2<T>, y: &Array2<T>) -> T::Real {
    let num = x.iter().zip(y.iter()).fold(T::Real::zero(), |m, (a, b)| {
        Float::max(m, (*a - *b).modulus())
    });
    num / max_abs(y)
}

/// `||A||_1 ||A^{-1}||_1`; infinite for singular `A`.
pub fn dense_cond1<T: Scalar>(a: &Array2<T>) -> T::Real {
    match dense_inverse(a) {
        Ok(inv) => norm1(a) * norm1(&inv),
        Err(_) => T::Real::infinity(),
    }
}

/// Order-`p` Schur complement `A22 - A21 A11^{-1} A12`.
pub fn dense_schur_complement<T: Scalar>(a: &Array2<T>, p: usize) -> Result<Array2<T>> {
    let a11 = a.slice(s![..p, ..p]).to_owned();
    let a12 = a.slice(s![..p, p..]).to_owned();
    let a21 = a.slice(s![p.., ..p]).to_owned();
    let a22 = a.slice(s![p.., p..]).to_owned();
    Ok(a22 - a21.dot(&dense_solve(&a11, &a12)?))
}

/// Dense `F_phi = diag(phi^{-k/n}) (n^{-1/2} e^{-2 pi i kl/n})`.
pub fn dense_fourier<R: Real>(n: usize, phi: Complex<R>) -> Array2<Complex<R>> {
    let theta = phi.arg();
    let nn = R::from_usize_lossy(n);
    let scale = R::one() / Float::sqrt(nn);
    let two_pi = R::PI() + R::PI();
    Array2::from_shape_fn((n, n), |(k, l)| {
        let ang =
            -theta * R::from_usize_lossy(k) / nn - two_pi * R::from_usize_lossy((k * l) % n) / nn;
        Complex::from_polar(scale, ang)
    })
}

/// Dense DST-I `(sqrt(2/(n+1)) sin((k+1)(l+1) pi/(n+1)))`.
pub fn dense_sine<R: Real>(n: usize) -> Array2<R> {
    let m = R::from_usize_lossy(n + 1);
    let scale = Float::sqrt(R::lit(2.0) / m);
    Array2::from_shape_fn((n, n), |(k, l)| {
        let idx = ((k + 1) * (l + 1)) % (2 * (n + 1));
        scale * Float::sin(R::from_usize_lossy(idx) * R::PI() / m)
    })
}

/// Dense DCT-III `(sqrt(2/n) q_l cos((2k+1) l pi/(2n)))`, `q_0 = 1/sqrt(2)`.
pub fn dense_cosine<R: Real>(n: usize) -> Array2<R> {
    let nn = R::from_usize_lossy(n);
    let scale = Float::sqrt(R::lit(2.0) / nn);
    Array2::from_shape_fn((n, n), |(k, l)| {
        let q = if l == 0 { R::FRAC_1_SQRT_2() } else { R::one() };
        let idx = ((2 * k + 1) * l) % (4 * n);
        scale * q * Float::cos(R::from_usize_lossy(idx) * R::PI() / (nn + nn))
    })
}

/// Displacement operator, applied from its definition.
#[derive(Debug, Clone, PartialEq)]
pub enum Operator<T: Scalar> {
    /// `diag(d)`.
    Diagonal(Vec<T>),
    /// `Z_phi`: ones on the subdiagonal, `phi` in the top right corner.
    Shift(T),
    /// `Z_phi^*`.
    ShiftAdjoint(T),
    /// Symmetric tridiagonal with unit off-diagonals and `delta` in both diagonal corners.
    Y(T),
}

impl<T: Scalar> Operator<T> {
    /// The `n x n` matrix.
    pub fn to_dense(&self, n: usize) -> Array2<T> {
        self.left(&Array2::eye(n))
    }

    /// `E A`.
    pub fn left(&self, a: &Array2<T>) -> Array2<T> {
        let (n, m) = a.dim();
        let mut out = Array2::zeros((n, m));
        if n == 0 {
            return out;
        }
        match self {
            Operator::Diagonal(d) => {
                for i in 0..n {
                    for j in 0..m {
                        out[[i, j]] = d[i] * a[[i, j]];
                    }
                }
            }
            Operator::Shift(phi) => {
                for j in 0..m {
                    out[[0, j]] = *phi * a[[n - 1, j]];
                    for i in 1..n {
                        out[[i, j]] = a[[i - 1, j]];
                    }
                }
            }
            Operator::ShiftAdjoint(phi) => {
                for j in 0..m {
                    for i in 0..n - 1 {
                        out[[i, j]] = a[[i + 1, j]];
                    }
                    out[[n - 1, j]] = phi.conj() * a[[0, j]];
                }
            }
            Operator::Y(delta) => {
                for j in 0..m {
                    for i in 0..n {
                        let mut v = T::zero();
                        if i > 0 {
                            v += a[[i - 1, j]];
                        }
                        if i + 1 < n {
                            v += a[[i + 1, j]];
                        }
                        out[[i, j]] = v;
                    }
                    out[[0, j]] += *delta * a[[0, j]];
                    out[[n - 1, j]] += *delta * a[[n - 1, j]];
                }
            }
        }
        out
    }

    /// `A F`, computed as `(F^* A^*)^*`.
    pub fn right(&self, a: &Array2<T>) -> Array2<T> {
        adjoint(&self.adjoint().left(&adjoint(a)))
    }

    pub fn adjoint(&self) -> Self {
        match self {
            Operator::Diagonal(d) => Operator::Diagonal(d.iter().map(|v| v.conj()).collect()),
            Operator::Shift(phi) => Operator::ShiftAdjoint(*phi),
            Operator::ShiftAdjoint(phi) => Operator::Shift(*phi),
            Operator::Y(delta) => Operator::Y(delta.conj()),
        }
    }
}

/// Conjugate transpose.
pub fn adjoint<T: Scalar>(a: &Array2<T>) -> Array2<T> {
    a.t().mapv(|v| v.conj())
}

/// `||E A - A F - G H^*||_inf`.
pub fn displacement_residual<T: Scalar>(
    e: &Operator<T>,
    f: &Operator<T>,
    a: &Array2<T>,
    g: &Array2<T>,
    h: &Array2<T>,
) -> T::Real {
    let r = e.left(a) - f.right(a) - g.dot(&adjoint(h));
    norm_inf(&r)
}

/// Matrix `A` with `E A - A F = G H^*`, given unitary `U`, `V` that
/// diagonalize `E` and `F`. The eigenvalues are read off `U^* E U` and
/// `V^* F V`; entries of `U^* A V` follow from the diagonal equation.
pub fn dense_from_generators<T: Scalar>(
    e: &Operator<T>,
    u: &Array2<T>,
    f: &Operator<T>,
    v: &Array2<T>,
    g: &Array2<T>,
    h: &Array2<T>,
) -> Result<Array2<T>> {
    let n = u.nrows();
    let te = adjoint(u).dot(&e.left(u));
    let sf = adjoint(v).dot(&f.left(v));
    let core = adjoint(u).dot(g).dot(&adjoint(&adjoint(v).dot(h)));
    let mut c = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let den = te[[i, i]] - sf[[j, j]];
            if den == T::zero() {
                return Err(Error::NonReconstructable { i, j });
            }
            c[[i, j]] = core[[i, j]] / den;
        }
    }
    Ok(u.dot(&c).dot(&adjoint(v)))
}
