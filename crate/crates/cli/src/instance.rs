//! Structured instances: random generation, dense assembly and solving.
//!
//! Generation draws from [`Stream`] in the order listed per structure, then
//! the right-hand side (`n x d`, row-major):
//!
//! * `cauchy_like`: `t_k = (1 + 0.1u) e^{2 pi i k/n}` for all `k`, then
//!   `s_k = (1 + 0.1u) e^{2 pi i (k + 1/2)/n}`, then `G` and `H` (`n x r`);
//! * `toeplitz`: first column, first row (its entry 0 replaced by the column's);
//! * `toeplitz_like`: `G`, `H`; `xi = 1`, `eta = -1`;
//! * `toeplitz_hankel`: `t` then `h`, both of length `2n - 1`;
//! * `toeplitz_hankel_like`: `G`, `H`;
//! * `vandermonde`: `w_k = (1 + 0.01u) e^{2 pi i (k + 0.25v)/n}`, `u` drawn before `v`;
//! * `vandermonde_like`: nodes as above, then `G`, `H`; `phi` from the
//!   library's default grid rule.
//!
//! Here `u`, `v` are symmetric uniforms and matrix entries are complex
//! draws, real part first.

use cauchylike::converters::default_vandermonde_phase;
use cauchylike::oracle::{
    dense_cosine, dense_fourier, dense_from_generators, dense_sine, Operator,
};
use cauchylike::solvers::lift_report;
use cauchylike::{
    clsolve_with, thlsolve, thsolve, tlsolve, tsolve, vlsolve, vsolve, CauchyLike, Phase,
    SolveOptions, SolveReport, Toeplitz, ToeplitzHankel, ToeplitzHankelLike, ToeplitzLike,
    Validate, Vandermonde, VandermondeLike,
};
use clap::ValueEnum;
use ndarray::Array2;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::rng::Stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Kind {
    CauchyLike,
    Toeplitz,
    ToeplitzLike,
    ToeplitzHankel,
    ToeplitzHankelLike,
    Vandermonde,
    VandermondeLike,
}

#[derive(Debug, Clone)]
pub enum Instance {
    CauchyLike(CauchyLike<Complex64>),
    Toeplitz(Toeplitz<Complex64>),
    ToeplitzLike(ToeplitzLike<Complex64>),
    ToeplitzHankel(ToeplitzHankel<Complex64>),
    ToeplitzHankelLike(ToeplitzHankelLike<Complex64>),
    Vandermonde(Vandermonde<Complex64>),
    VandermondeLike(VandermondeLike<Complex64>),
}

fn unit(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// Nodes close to the `n`-th roots of unity.
pub fn vandermonde_nodes(n: usize, st: &mut Stream) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let radius = 1.0 + 0.01 * st.sym();
            let jitter = 0.25 * st.sym();
            Complex64::from_polar(radius, 2.0 * PI * (k as f64 + jitter) / n as f64)
        })
        .collect()
}

/// Well separated knots on two interleaved circles.
pub fn cauchy_knots(n: usize, st: &mut Stream) -> (Vec<Complex64>, Vec<Complex64>) {
    let t = (0..n)
        .map(|k| unit(2.0 * PI * k as f64 / n as f64) * (1.0 + 0.1 * st.sym()))
        .collect();
    let s = (0..n)
        .map(|k| unit(2.0 * PI * (k as f64 + 0.5) / n as f64) * (1.0 + 0.1 * st.sym()))
        .collect();
    (t, s)
}

fn real_parts(a: &Array2<Complex64>) -> Option<Array2<f64>> {
    a.iter().all(|z| z.im == 0.0).then(|| a.mapv(|z| z.re))
}

fn real_vec(v: &[Complex64]) -> Option<Vec<f64>> {
    v.iter()
        .all(|z| z.im == 0.0)
        .then(|| v.iter().map(|z| z.re).collect())
}

impl Instance {
    pub fn generate(kind: Kind, n: usize, r: usize, st: &mut Stream) -> cauchylike::Result<Self> {
        let (one, minus_one) = (Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0));
        Ok(match kind {
            Kind::CauchyLike => {
                let (t, s) = cauchy_knots(n, st);
                let g = st.complex_matrix(n, r);
                let h = st.complex_matrix(n, r);
                Instance::CauchyLike(CauchyLike::new(t, s, g, h)?)
            }
            Kind::Toeplitz => {
                let col = st.complex_vec(n);
                let mut row = st.complex_vec(n);
                if n > 0 {
                    row[0] = col[0];
                }
                Instance::Toeplitz(Toeplitz::new(col, row)?)
            }
            Kind::ToeplitzLike => {
                let g = st.complex_matrix(n, r);
                let h = st.complex_matrix(n, r);
                Instance::ToeplitzLike(ToeplitzLike::new(g, h, one, minus_one)?)
            }
            Kind::ToeplitzHankel => {
                let m = (2 * n).saturating_sub(1);
                let t = st.complex_vec(m);
                let h = st.complex_vec(m);
                Instance::ToeplitzHankel(ToeplitzHankel::new(t, h)?)
            }
            Kind::ToeplitzHankelLike => {
                let g = st.complex_matrix(n, r);
                let h = st.complex_matrix(n, r);
                Instance::ToeplitzHankelLike(ToeplitzHankelLike::new(g, h)?)
            }
            Kind::Vandermonde => Instance::Vandermonde(Vandermonde::new(vandermonde_nodes(n, st))?),
            Kind::VandermondeLike => {
                let w = vandermonde_nodes(n, st);
                let phi = default_vandermonde_phase(&w).value();
                let g = st.complex_matrix(n, r);
                let h = st.complex_matrix(n, r);
                Instance::VandermondeLike(VandermondeLike::new(w, phi, g, h)?)
            }
        })
    }

    pub fn kind(&self) -> Kind {
        match self {
            Instance::CauchyLike(_) => Kind::CauchyLike,
            Instance::Toeplitz(_) => Kind::Toeplitz,
            Instance::ToeplitzLike(_) => Kind::ToeplitzLike,
            Instance::ToeplitzHankel(_) => Kind::ToeplitzHankel,
            Instance::ToeplitzHankelLike(_) => Kind::ToeplitzHankelLike,
            Instance::Vandermonde(_) => Kind::Vandermonde,
            Instance::VandermondeLike(_) => Kind::VandermondeLike,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Instance::CauchyLike(c) => c.n(),
            Instance::Toeplitz(t) => t.n(),
            Instance::ToeplitzLike(t) => t.n(),
            Instance::ToeplitzHankel(k) => k.n(),
            Instance::ToeplitzHankelLike(k) => k.n(),
            Instance::Vandermonde(v) => v.n(),
            Instance::VandermondeLike(v) => v.n(),
        }
    }

    pub fn diagnostics(&self) -> cauchylike::Diagnostics {
        match self {
            Instance::CauchyLike(c) => c.validate(),
            Instance::Toeplitz(t) => t.validate(),
            Instance::ToeplitzLike(t) => t.validate(),
            Instance::ToeplitzHankel(k) => k.validate(),
            Instance::ToeplitzHankelLike(k) => k.validate(),
            Instance::Vandermonde(v) => v.validate(),
            Instance::VandermondeLike(v) => v.validate(),
        }
    }

    /// Dense matrix assembled by the reference implementations.
    pub fn dense(&self) -> cauchylike::Result<Array2<Complex64>> {
        let n = self.n();
        match self {
            Instance::CauchyLike(c) => c.to_dense(),
            Instance::Toeplitz(t) => t.to_dense(),
            Instance::ToeplitzHankel(k) => Ok(k.to_dense()),
            Instance::Vandermonde(v) => Ok(v.to_dense()),
            Instance::ToeplitzLike(t) => dense_from_generators(
                &Operator::Shift(t.xi()),
                &dense_fourier(n, t.xi()),
                &Operator::Shift(t.eta()),
                &dense_fourier(n, t.eta()),
                t.g(),
                t.h(),
            ),
            Instance::ToeplitzHankelLike(k) => {
                let sine = dense_sine::<f64>(n).mapv(|v| Complex64::new(v, 0.0));
                let cosine = dense_cosine::<f64>(n).mapv(|v| Complex64::new(v, 0.0));
                let (zero, one) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
                dense_from_generators(
                    &Operator::Y(zero),
                    &sine,
                    &Operator::Y(one),
                    &cosine,
                    k.g(),
                    k.h(),
                )
            }
            Instance::VandermondeLike(v) => dense_from_generators(
                &Operator::Diagonal(v.nodes().to_vec()),
                &Array2::eye(n),
                &Operator::ShiftAdjoint(v.phi()),
                &dense_fourier(n, v.phi()),
                v.g(),
                v.h(),
            ),
        }
    }

    /// Solves with the structure's own reduction. Cauchy-like and
    /// Toeplitz+Hankel data with zero imaginary parts run in real arithmetic.
    pub fn solve(
        &self,
        b: &Array2<Complex64>,
        opts: &SolveOptions,
        phi: Option<Complex64>,
    ) -> cauchylike::Result<SolveReport<Complex64>> {
        let opts = *opts;
        match self {
            Instance::CauchyLike(c) => {
                let real = (
                    real_vec(c.t()),
                    real_vec(c.s()),
                    real_parts(c.g()),
                    real_parts(c.h()),
                    real_parts(b),
                );
                if let (Some(t), Some(s), Some(g), Some(h), Some(br)) = real {
                    let cr = CauchyLike::new(t, s, g, h)?;
                    return Ok(lift_report(clsolve_with(&cr, &br, &opts)?));
                }
                clsolve_with(c, b, &opts)
            }
            Instance::Toeplitz(t) => {
                let real = (real_vec(t.col()), real_vec(t.row()), real_parts(b));
                if let (Some(col), Some(row), Some(br)) = real {
                    let mut rep = tsolve(&Toeplitz::new(col, row)?, &br, opts)?;
                    // real matrix and right-hand side: drop the rounding-level imaginary parts
                    rep.x.mapv_inplace(|z| Complex64::new(z.re, 0.0));
                    return Ok(rep);
                }
                tsolve(t, b, opts)
            }
            Instance::ToeplitzLike(t) => tlsolve(t, b, opts),
            Instance::ToeplitzHankel(k) => {
                let real = (real_vec(k.t()), real_vec(k.h()), real_parts(b));
                if let (Some(t), Some(h), Some(br)) = real {
                    return Ok(lift_report(thsolve(
                        &ToeplitzHankel::new(t, h)?,
                        &br,
                        opts,
                    )?));
                }
                thsolve(k, b, opts)
            }
            Instance::ToeplitzHankelLike(k) => {
                let real = (real_parts(k.g()), real_parts(k.h()), real_parts(b));
                if let (Some(g), Some(h), Some(br)) = real {
                    let kr = ToeplitzHankelLike::new(g, h)?;
                    return Ok(lift_report(thlsolve(&kr, &br, opts)?));
                }
                thlsolve(k, b, opts)
            }
            Instance::Vandermonde(v) => {
                let phi = phi.map(Phase::new).transpose()?;
                vsolve(v, b, opts, phi)
            }
            Instance::VandermondeLike(v) => vlsolve(v, b, opts),
        }
    }

    /// Right knots replaced by [`cauchylike::gsa::collapse_knots`]; other structures unchanged.
    pub fn collapsed(&self, tol: f64) -> cauchylike::Result<Self> {
        match self {
            Instance::CauchyLike(c) if tol > 0.0 => Ok(Instance::CauchyLike(
                c.with_s(cauchylike::gsa::collapse_knots(c.s(), tol))?,
            )),
            other => Ok(other.clone()),
        }
    }
}
