//! The six numerical experiments, at configurable scale.
//!
//! * `t1`: four structures, random complex data, partial pivoting: error, condition, time.
//! * `t2`: random real Toeplitz systems, error and time against size for every pivot code.
//! * `t3`: the Gaussian Toeplitz matrix `sqrt(sigma/(2 pi)) exp(-sigma (i-j)^2 / 2)`, `sigma = 0.3`.
//! * `t4`: right-generator growth for a nearly singular Toeplitz-like family. The
//!   matrix is Toeplitz with entries `sum_m c_m a_m^{i-j}` over `n - 20` unimodular
//!   `a_m` (rank `n - 20`); its generators get a `1e-12` relative perturbation.
//! * `t5`: the two-generator Cauchy-like example with knots `t = nroots1(n, 1)`,
//!   `s = nroots1(n, -1)`, `G1 = [e, e + tau f]`, `H1 = [e, -e]` against the
//!   cancellation-free `G2 = -tau f`, `H2 = e`.
//! * `t6`: almost multiple knots: `n/5` equispaced right knots on the unit
//!   circle, each repeated 5 times with relative perturbations below `tau`.

use std::f64::consts::PI;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Result};
use cauchylike::converters::{tl2cl, toeplitz_generators};
use cauchylike::gsa::collapse_knots;
use cauchylike::oracle::{dense_cond1, dense_solve, max_abs, rel_error};
use cauchylike::transforms::nroots1;
use cauchylike::{
    clsolve_with, thsolve, tsolve, CauchyLike, Complex64, Phase, PivotStrategy, SolveOptions,
    SolvePath, Toeplitz, ToeplitzHankel, ToeplitzLike,
};
use clap::ValueEnum;
use ndarray::Array2;

use crate::bench::write_csv;
use crate::instance::{Instance, Kind};
use crate::rng::Stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
}

#[derive(Debug, Clone)]
pub struct ReproConfig {
    /// Problem sizes; each experiment has its own default.
    pub sizes: Option<Vec<usize>>,
    pub seed: u64,
    /// Largest size for which dense reference solutions are computed.
    pub oracle_cap: usize,
    pub gu_period: usize,
    /// Overrides the `t6` collapse tolerance.
    pub collapse_tol: Option<f64>,
}

impl Default for ReproConfig {
    fn default() -> Self {
        ReproConfig {
            sizes: None,
            seed: 1,
            oracle_cap: 2048,
            gu_period: PivotStrategy::DEFAULT_GU_PERIOD,
            collapse_tol: None,
        }
    }
}

impl ReproConfig {
    fn sizes_or(&self, default: &[usize]) -> Vec<usize> {
        self.sizes.clone().unwrap_or_else(|| default.to_vec())
    }

    fn size_or(&self, default: usize) -> usize {
        self.sizes
            .as_ref()
            .and_then(|s| s.first().copied())
            .unwrap_or(default)
    }

    fn gu(&self) -> PivotStrategy {
        PivotStrategy::Gu {
            period: self.gu_period,
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t0 = Instant::now();
    let out = f();
    (out, t0.elapsed().as_secs_f64())
}

fn lift(a: &Array2<f64>) -> Array2<Complex64> {
    a.mapv(|v| Complex64::new(v, 0.0))
}

fn err_or_nan<E>(r: std::result::Result<f64, E>) -> f64 {
    r.unwrap_or(f64::NAN)
}

fn fmt(x: f64) -> String {
    format!("{x:e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct T1Row {
    pub structure: &'static str,
    pub n: usize,
    pub cond: f64,
    pub error: f64,
    /// `cond * n * 1e-13`.
    pub bound: f64,
    pub seconds: f64,
}

pub fn t1(cfg: &ReproConfig) -> Result<Vec<T1Row>> {
    let n = cfg.size_or(512);
    let cases = [
        ("vandermonde", Kind::Vandermonde),
        ("toeplitz", Kind::Toeplitz),
        ("toeplitz_hankel", Kind::ToeplitzHankel),
        ("cauchy_like", Kind::CauchyLike),
    ];
    let mut rows = Vec::new();
    for (idx, (name, kind)) in cases.into_iter().enumerate() {
        let mut st = Stream::new(cfg.seed.wrapping_add(idx as u64));
        let inst = Instance::generate(kind, n, 5, &mut st)?;
        let x_true = st.complex_matrix(n, 1);
        let a = inst.dense()?;
        let b = a.dot(&x_true);
        let (rep, seconds) =
            timed(|| inst.solve(&b, &SolveOptions::new(PivotStrategy::Partial), None));
        let error = rel_error(&rep?.x, &x_true);
        let cond = if n <= cfg.oracle_cap {
            dense_cond1(&a)
        } else {
            f64::NAN
        };
        rows.push(T1Row {
            structure: name,
            n,
            cond,
            error,
            bound: cond * n as f64 * 1e-13,
            seconds,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub method: String,
    pub error: f64,
    pub seconds: f64,
}

fn real_toeplitz(n: usize, st: &mut Stream) -> Result<Toeplitz<f64>> {
    let col: Vec<f64> = (0..n).map(|_| st.sym()).collect();
    let mut row: Vec<f64> = (0..n).map(|_| st.sym()).collect();
    row[0] = col[0];
    Ok(Toeplitz::new(col, row)?)
}

fn toeplitz_rhs(
    t: &Toeplitz<f64>,
    x: &Array2<f64>,
    dense: Option<&Array2<f64>>,
) -> Result<Array2<f64>> {
    Ok(match dense {
        Some(a) => a.dot(x),
        None => t.matmul(x)?,
    })
}

pub fn t2(cfg: &ReproConfig) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for n in cfg.sizes_or(&[128, 256, 512, 1024]) {
        let mut st = Stream::new(cfg.seed ^ n as u64);
        let t = real_toeplitz(n, &mut st)?;
        let x_true = st.real_matrix(n, 1);
        let dense = (n <= cfg.oracle_cap).then(|| t.to_dense()).transpose()?;
        let b = toeplitz_rhs(&t, &x_true, dense.as_ref())?;
        let xt = lift(&x_true);
        for code in 0..=5 {
            let piv = PivotStrategy::from_code(code, cfg.gu_period)?;
            if piv == PivotStrategy::Complete && dense.is_none() {
                continue;
            }
            let (rep, seconds) = timed(|| tsolve(&t, &b, piv));
            rows.push(SweepRow {
                n,
                method: format!("piv{code}"),
                error: err_or_nan(rep.map(|r| rel_error(&r.x, &xt))),
                seconds,
            });
        }
        if let Some(a) = &dense {
            let (x, seconds) = timed(|| dense_solve(a, &b));
            rows.push(SweepRow {
                n,
                method: "dense".into(),
                error: err_or_nan(x.map(|x| rel_error(&x, &x_true))),
                seconds,
            });
        }
    }
    Ok(rows)
}

/// First column of the Gaussian Toeplitz matrix.
pub fn gaussian_column(n: usize, sigma: f64) -> Vec<f64> {
    let scale = (sigma / (2.0 * PI)).sqrt();
    (0..n)
        .map(|k| scale * (-0.5 * sigma * (k * k) as f64).exp())
        .collect()
}

pub fn gaussian_toeplitz(n: usize) -> Result<Toeplitz<f64>> {
    Ok(Toeplitz::symmetric(gaussian_column(n, 0.3))?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct T3Row {
    pub n: usize,
    pub method: String,
    pub error: f64,
    pub seconds: f64,
    pub cond: f64,
}

pub fn t3(cfg: &ReproConfig) -> Result<Vec<T3Row>> {
    let mut rows = Vec::new();
    for n in cfg.sizes_or(&[128, 256, 512, 1024]) {
        let mut st = Stream::new(cfg.seed ^ n as u64);
        let t = gaussian_toeplitz(n)?;
        let x_true = st.real_matrix(n, 1);
        let dense = (n <= cfg.oracle_cap).then(|| t.to_dense()).transpose()?;
        let cond = dense.as_ref().map_or(f64::NAN, dense_cond1);
        let b = toeplitz_rhs(&t, &x_true, dense.as_ref())?;
        let xt = lift(&x_true);
        let mut push = |method: &str, error: f64, seconds: f64| {
            rows.push(T3Row {
                n,
                method: method.into(),
                error,
                seconds,
                cond,
            })
        };
        let (rep, s) = timed(|| tsolve(&t, &b, PivotStrategy::Partial));
        push(
            "tsolve_partial",
            err_or_nan(rep.map(|r| rel_error(&r.x, &xt))),
            s,
        );
        let (rep, s) = timed(|| tsolve(&t, &b, cfg.gu()));
        push(
            "tsolve_gu",
            err_or_nan(rep.map(|r| rel_error(&r.x, &xt))),
            s,
        );
        let mut coeffs: Vec<f64> = t.col().iter().rev().copied().collect();
        coeffs.extend_from_slice(&t.col()[1..]);
        let th = ToeplitzHankel::new(coeffs, vec![0.0; 2 * n - 1])?;
        let (rep, s) = timed(|| thsolve(&th, &b, PivotStrategy::Partial));
        push(
            "thsolve_partial",
            err_or_nan(rep.map(|r| rel_error(&r.x, &x_true))),
            s,
        );
        if let Some(a) = &dense {
            let (x, s) = timed(|| dense_solve(a, &b));
            push("dense", err_or_nan(x.map(|x| rel_error(&x, &x_true))), s);
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct T4Result {
    /// Per step: largest live right-generator entry for partial, Gu and complete pivoting.
    pub growth: Vec<[f64; 3]>,
    /// Error against the dense solution of the same Cauchy-like matrix, per method.
    pub errors: [f64; 3],
    pub right_ratios: [f64; 3],
}

pub fn t4(cfg: &ReproConfig) -> Result<T4Result> {
    let n = cfg.size_or(512);
    if n <= 20 {
        bail!("t4 needs n > 20");
    }
    let mut st = Stream::new(cfg.seed);
    let k = n - 20;
    let a: Vec<Complex64> = (0..k)
        .map(|_| Complex64::from_polar(1.0, PI * st.sym()))
        .collect();
    let c: Vec<Complex64> = (0..k).map(|_| st.complex() / (k as f64).sqrt()).collect();
    let col: Vec<Complex64> = (0..n)
        .map(|i| {
            a.iter()
                .zip(&c)
                .map(|(am, cm)| cm * am.powu(i as u32))
                .sum()
        })
        .collect();
    let row: Vec<Complex64> = (0..n)
        .map(|j| {
            a.iter()
                .zip(&c)
                .map(|(am, cm)| cm * am.conj().powu(j as u32))
                .sum()
        })
        .collect();
    let t = Toeplitz::new(col, row)?;
    let (mut g, mut h) = toeplitz_generators(&t)?;
    let (gs, hs) = (max_abs(&g), max_abs(&h));
    g.mapv_inplace(|v| v + st.complex() * (1e-12 * gs));
    h.mapv_inplace(|v| v + st.complex() * (1e-12 * hs));
    let (one, minus_one) = (
        Phase::<f64>::one().value(),
        Phase::<f64>::minus_one().value(),
    );
    let conv = tl2cl(&ToeplitzLike::new(g, h, one, minus_one)?, None)?;
    let cl = conv.cauchy;
    let b = st.complex_matrix(n, 1);
    let reference = if n <= cfg.oracle_cap {
        Some(dense_solve(&cl.to_dense()?, &b)?)
    } else {
        None
    };
    let methods = [PivotStrategy::Partial, cfg.gu(), PivotStrategy::Complete];
    let mut growth = vec![[f64::NAN; 3]; n + 1];
    let mut errors = [f64::NAN; 3];
    let mut right_ratios = [f64::NAN; 3];
    for (m, piv) in methods.into_iter().enumerate() {
        let rep = clsolve_with(&cl, &b, &SolveOptions::new(piv).track_growth(true))?;
        let tr = rep.growth.as_ref().expect("growth requested");
        for (step, v) in tr.right.iter().enumerate() {
            growth[step][m] = *v;
        }
        right_ratios[m] = tr.right_ratio();
        if let Some(x) = &reference {
            errors[m] = rel_error(&rep.x, x);
        }
    }
    Ok(T4Result {
        growth,
        errors,
        right_ratios,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct T5Row {
    pub method: String,
    /// Error with the generators `G1`, `H1`.
    pub error_sb: f64,
    /// Error with the generators `G2`, `H2`.
    pub error_alt: f64,
    pub left_ratio: f64,
    pub right_ratio: f64,
}

/// The two representations of the example matrix.
pub fn sweet_brent_pair(
    n: usize,
    tau: f64,
) -> Result<(CauchyLike<Complex64>, CauchyLike<Complex64>)> {
    let t = nroots1::<f64>(n, Phase::one())?;
    let s = nroots1::<f64>(n, Phase::minus_one())?;
    let scale = 1.0 / (n as f64).sqrt();
    let e = |_: usize| Complex64::new(scale, 0.0);
    let f = |i: usize| Complex64::new(if i % 2 == 0 { -scale } else { scale }, 0.0);
    let g1 = Array2::from_shape_fn(
        (n, 2),
        |(i, q)| if q == 0 { e(i) } else { e(i) + f(i) * tau },
    );
    let h1 = Array2::from_shape_fn((n, 2), |(i, q)| if q == 0 { e(i) } else { -e(i) });
    let g2 = Array2::from_shape_fn((n, 1), |(i, _)| -f(i) * tau);
    let h2 = Array2::from_shape_fn((n, 1), |(i, _)| e(i));
    Ok((
        CauchyLike::new(t.clone(), s.clone(), g1, h1)?,
        CauchyLike::new(t, s, g2, h2)?,
    ))
}

pub fn t5(cfg: &ReproConfig) -> Result<Vec<T5Row>> {
    let n = cfg.size_or(512);
    let (c1, c2) = sweet_brent_pair(n, 1e-12)?;
    let x_true = Array2::from_elem((n, 1), Complex64::new(1.0, 0.0));
    let b = c2.to_dense()?.dot(&x_true);
    let methods = [
        ("partial", PivotStrategy::Partial),
        ("sweet_brent", PivotStrategy::SweetBrent),
        ("gu", cfg.gu()),
        ("complete", PivotStrategy::Complete),
    ];
    let mut rows = Vec::new();
    for (name, piv) in methods {
        let opts = SolveOptions::new(piv).track_growth(true);
        let r1 = clsolve_with(&c1, &b, &opts)?;
        let r2 = clsolve_with(&c2, &b, &opts)?;
        let tr = r1.growth.expect("growth requested");
        rows.push(T5Row {
            method: name.into(),
            error_sb: rel_error(&r1.x, &x_true),
            error_alt: rel_error(&r2.x, &x_true),
            left_ratio: tr.left_ratio(),
            right_ratio: tr.right_ratio(),
        });
    }
    if n <= cfg.oracle_cap {
        rows.push(T5Row {
            method: "dense".into(),
            error_sb: rel_error(&dense_solve(&c1.to_dense()?, &b)?, &x_true),
            error_alt: rel_error(&dense_solve(&c2.to_dense()?, &b)?, &x_true),
            left_ratio: f64::NAN,
            right_ratio: f64::NAN,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct T6Row {
    pub tau: f64,
    pub partial: f64,
    pub gu: f64,
    pub complete: f64,
    /// Partial pivoting after collapsing the right knots.
    pub collapsed: f64,
    pub dense: f64,
    /// The plain path refused the knots (exact repeats).
    pub plain_rejected: bool,
    /// The gathered path solved the uncollapsed system.
    pub gathered_ok: bool,
}

pub const T6_TAUS: [f64; 10] = [
    1e-8, 1e-9, 1e-10, 1e-11, 1e-12, 1e-13, 1e-14, 1e-15, 1e-16, 0.0,
];

pub fn t6(cfg: &ReproConfig) -> Result<Vec<T6Row>> {
    let mult = 5;
    let n = cfg.size_or(260);
    if n % mult != 0 || n == 0 {
        bail!("t6 needs a size divisible by {mult}");
    }
    let (m, r) = (n / mult, 5);
    let mut st = Stream::new(cfg.seed);
    let t: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, PI * (2 * k + 1) as f64 / n as f64))
        .collect();
    let g = st.complex_matrix(n, r);
    let h = st.complex_matrix(n, r);
    let x_true = st.complex_matrix(n, 1);
    // |0.7 z| < 1 for both parts in [-1, 1)
    let delta: Vec<Complex64> = (0..n).map(|_| st.complex() * 0.7).collect();
    let mut rows = Vec::new();
    for tau in T6_TAUS {
        let s: Vec<Complex64> = (0..n)
            .map(|j| {
                let base = Complex64::from_polar(1.0, 2.0 * PI * (j % m) as f64 / m as f64);
                if j < m {
                    base
                } else {
                    base * (Complex64::new(1.0, 0.0) + delta[j] * tau)
                }
            })
            .collect();
        let cl = CauchyLike::new(t.clone(), s.clone(), g.clone(), h.clone())?;
        let a = cl.to_dense()?;
        let b = a.dot(&x_true);
        let solve = |c: &CauchyLike<Complex64>, opts: SolveOptions| {
            err_or_nan(clsolve_with(c, &b, &opts).map(|r| rel_error(&r.x, &x_true)))
        };
        let tol = cfg.collapse_tol.unwrap_or(tau + 8.0 * f64::EPSILON);
        let collapsed = cl.with_s(collapse_knots(&s, tol))?;
        rows.push(T6Row {
            tau,
            partial: solve(&cl, SolveOptions::new(PivotStrategy::Partial)),
            gu: solve(&cl, SolveOptions::new(cfg.gu())),
            complete: solve(&cl, SolveOptions::new(PivotStrategy::Complete)),
            collapsed: solve(&collapsed, SolveOptions::new(PivotStrategy::Partial)),
            dense: err_or_nan(dense_solve(&a, &b).map(|x| rel_error(&x, &x_true))),
            plain_rejected: clsolve_with(
                &cl,
                &b,
                &SolveOptions::new(PivotStrategy::Partial).path(SolvePath::Plain),
            )
            .is_err(),
            gathered_ok: clsolve_with(
                &cl,
                &b,
                &SolveOptions::new(PivotStrategy::Partial).path(SolvePath::Gathered),
            )
            .is_ok(),
        });
    }
    Ok(rows)
}

/// Runs one experiment and writes its CSV files into `out`.
pub fn run(exp: Experiment, cfg: &ReproConfig, out: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(out)?;
    let mut written = Vec::new();
    let mut emit = |name: &str, header: &str, lines: Vec<String>| -> Result<()> {
        let path = out.join(name);
        write_csv(&path, header, &lines)?;
        written.push(path.display().to_string());
        Ok(())
    };
    match exp {
        Experiment::T1 => {
            let lines = t1(cfg)?
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{},{}",
                        r.structure,
                        r.n,
                        fmt(r.cond),
                        fmt(r.error),
                        fmt(r.bound),
                        fmt(r.seconds)
                    )
                })
                .collect();
            emit("t1.csv", "structure,n,cond,error,bound,seconds", lines)?;
        }
        Experiment::T2 => {
            let lines = t2(cfg)?
                .iter()
                .map(|r| format!("{},{},{},{}", r.n, r.method, fmt(r.error), fmt(r.seconds)))
                .collect();
            emit("t2.csv", "n,method,error,seconds", lines)?;
        }
        Experiment::T3 => {
            let lines = t3(cfg)?
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{}",
                        r.n,
                        r.method,
                        fmt(r.error),
                        fmt(r.seconds),
                        fmt(r.cond)
                    )
                })
                .collect();
            emit("t3.csv", "n,method,error,seconds,cond", lines)?;
        }
        Experiment::T4 => {
            let res = t4(cfg)?;
            let lines = res
                .growth
                .iter()
                .enumerate()
                .map(|(k, g)| format!("{k},{},{},{}", fmt(g[0]), fmt(g[1]), fmt(g[2])))
                .collect();
            emit("t4_growth.csv", "step,partial,gu,complete", lines)?;
            let lines = ["partial", "gu", "complete"]
                .iter()
                .enumerate()
                .map(|(m, name)| {
                    format!("{name},{},{}", fmt(res.errors[m]), fmt(res.right_ratios[m]))
                })
                .collect();
            emit("t4_errors.csv", "method,error,right_ratio", lines)?;
        }
        Experiment::T5 => {
            let lines = t5(cfg)?
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{}",
                        r.method,
                        fmt(r.error_sb),
                        fmt(r.error_alt),
                        fmt(r.left_ratio),
                        fmt(r.right_ratio)
                    )
                })
                .collect();
            emit(
                "t5.csv",
                "method,error_sb,error_alt,left_ratio,right_ratio",
                lines,
            )?;
        }
        Experiment::T6 => {
            let lines = t6(cfg)?
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{},{},{},{}",
                        fmt(r.tau),
                        fmt(r.partial),
                        fmt(r.gu),
                        fmt(r.complete),
                        fmt(r.collapsed),
                        fmt(r.dense),
                        r.plain_rejected,
                        r.gathered_ok
                    )
                })
                .collect();
            emit(
                "t6.csv",
                "tau,partial,gu,complete,collapsed,dense,plain_rejected,gathered_ok",
                lines,
            )?;
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(sizes: &[usize]) -> ReproConfig {
        ReproConfig {
            sizes: Some(sizes.to_vec()),
            ..Default::default()
        }
    }

    #[test]
    fn t1_small_within_bounds() {
        for r in t1(&small(&[64])).unwrap() {
            assert!(r.error <= r.bound, "{r:?}");
        }
    }

    #[test]
    fn t5_small_shows_cancellation() {
        let rows = t5(&small(&[64])).unwrap();
        let partial = &rows[0];
        assert!(
            partial.error_alt < 1e-12 && partial.error_sb > 1e-8,
            "{partial:?}"
        );
    }

    #[test]
    fn t6_exact_duplicates_need_the_gathered_path() {
        let rows = t6(&small(&[60])).unwrap();
        let exact = rows.last().unwrap();
        assert_eq!(exact.tau, 0.0);
        assert!(exact.plain_rejected && exact.gathered_ok);
        assert!(rows[0].gathered_ok && !rows[0].plain_rejected);
    }

    #[test]
    fn gaussian_column_decays() {
        let c = gaussian_column(4, 0.3);
        assert!((c[0] - (0.3 / (2.0 * PI)).sqrt()).abs() < 1e-15);
        assert!(c.windows(2).all(|w| w[1] < w[0]));
    }
}
