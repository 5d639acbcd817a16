//! One-call structured solvers: reduce to Cauchy-like form, run the
//! generalized Schur algorithm, map the solution back through `V`.

use ndarray::Array2;
use num_complex::Complex;

use crate::converters::{
    default_vandermonde_phase, lift, t2cl, th2cl, thl2cl, tl2cl, v2cl, vl2cl, Conversion,
};
use crate::displacement::{
    Toeplitz, ToeplitzHankel, ToeplitzHankelLike, ToeplitzLike, Vandermonde, VandermondeLike,
};
use crate::error::Result;
use crate::gsa::{clsolve_with, SolveOptions, SolveReport};
use crate::scalar::Scalar;
use crate::transforms::Phase;

fn solve_converted<T: Scalar>(conv: Conversion<T>, opts: &SolveOptions) -> Result<SolveReport<T>> {
    let rhs = conv
        .rhs
        .as_ref()
        .expect("conversion built with a right-hand side");
    let mut report = clsolve_with(&conv.cauchy, rhs, opts)?;
    report.x = conv.recover(&report.x)?;
    Ok(report)
}

/// Solves `T X = B` for a Toeplitz matrix.
pub fn tsolve<T: Scalar>(
    t: &Toeplitz<T>,
    b: &Array2<T>,
    opts: impl Into<SolveOptions>,
) -> Result<SolveReport<Complex<T::Real>>> {
    solve_converted(t2cl(t, Some(b))?, &opts.into())
}

/// Solves `A X = B` for a Toeplitz-like matrix.
pub fn tlsolve<T: Scalar>(
    repr: &ToeplitzLike<T>,
    b: &Array2<T>,
    opts: impl Into<SolveOptions>,
) -> Result<SolveReport<Complex<T::Real>>> {
    solve_converted(tl2cl(repr, Some(b))?, &opts.into())
}

/// Solves `(T + H) X = B`; real data stays real throughout.
pub fn thsolve<T: Scalar>(
    k: &ToeplitzHankel<T>,
    b: &Array2<T>,
    opts: impl Into<SolveOptions>,
) -> Result<SolveReport<T>> {
    solve_converted(th2cl(k, Some(b))?, &opts.into())
}

/// Solves `A X = B` for a Toeplitz+Hankel-like matrix.
pub fn thlsolve<T: Scalar>(
    repr: &ToeplitzHankelLike<T>,
    b: &Array2<T>,
    opts: impl Into<SolveOptions>,
) -> Result<SolveReport<T>> {
    solve_converted(thl2cl(repr, Some(b))?, &opts.into())
}

/// Solves `W X = B` with `W = (w_i^{n-1-j})`. The `phi` used (given or
/// chosen by [`default_vandermonde_phase`]) is returned in the report.
pub fn vsolve<T: Scalar>(
    w: &Vandermonde<T>,
    b: &Array2<T>,
    opts: impl Into<SolveOptions>,
    phi: Option<Phase<T::Real>>,
) -> Result<SolveReport<Complex<T::Real>>> {
    let phi = phi.unwrap_or_else(|| default_vandermonde_phase(w.nodes()));
    let mut report = solve_converted(v2cl(w, Some(phi), Some(b))?, &opts.into())?;
    report.phi = Some(phi.value());
    Ok(report)
}

/// Solves `A X = B` for a Vandermonde-like matrix.
pub fn vlsolve<T: Scalar>(
    repr: &VandermondeLike<T>,
    b: &Array2<T>,
    opts: impl Into<SolveOptions>,
) -> Result<SolveReport<Complex<T::Real>>> {
    let mut report = solve_converted(vl2cl(repr, Some(b))?, &opts.into())?;
    report.phi = Some(repr.phi());
    Ok(report)
}

/// Lifts a real solve result to complex scalars.
pub fn lift_report<T: Scalar>(r: SolveReport<T>) -> SolveReport<Complex<T::Real>> {
    SolveReport {
        x: lift(&r.x),
        rcond_u: r.rcond_u,
        ill_conditioned: r.ill_conditioned,
        row_perm: r.row_perm,
        col_perm: r.col_perm,
        growth: r.growth,
        gu_skipped_refreshes: r.gu_skipped_refreshes,
        phi: r.phi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsa::PivotStrategy;
    use crate::oracle::{
        dense_cosine, dense_fourier, dense_from_generators, dense_sine, dense_solve, max_abs,
        norm_inf, rel_error, Operator,
    };
    use ndarray::array;

    type C64 = Complex<f64>;

    fn lcg(seed: &mut u64) -> f64 {
        *seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((*seed >> 11) as f64) / ((1u64 << 53) as f64) * 2.0 - 1.0
    }

    fn rand_c(rows: usize, cols: usize, seed: &mut u64) -> Array2<C64> {
        Array2::from_shape_fn((rows, cols), |_| C64::new(lcg(seed), lcg(seed)))
    }

    const P: PivotStrategy = PivotStrategy::Partial;

    #[test]
    fn tsolve_examples() {
        let t = Toeplitz::new(vec![2.0f64], vec![2.0]).unwrap();
        let x = tsolve(&t, &array![[4.0f64]], P).unwrap().x;
        assert!((x[[0, 0]] - C64::new(2.0, 0.0)).norm() < 1e-14);
        let t = Toeplitz::symmetric(vec![2.0f64, 1.0]).unwrap();
        let x = tsolve(&t, &array![[3.0], [3.0]], P).unwrap().x;
        assert!(x.iter().all(|v| (v - C64::new(1.0, 0.0)).norm() < 1e-14));
        assert!(tsolve(
            &Toeplitz::new(vec![1.0, 2.0], vec![3.0, 2.0]).unwrap(),
            &array![[1.0], [1.0]],
            P
        )
        .is_err());
    }

    #[test]
    fn tsolve_random_real_matches_dense() {
        let n = 64;
        let mut sd = 5;
        let col: Vec<f64> = (0..n).map(|_| lcg(&mut sd)).collect();
        let mut row: Vec<f64> = (0..n).map(|_| lcg(&mut sd)).collect();
        row[0] = col[0];
        let t = Toeplitz::new(col, row).unwrap();
        let b = Array2::from_shape_fn((n, 2), |_| lcg(&mut sd));
        let want = dense_solve(&t.to_dense().unwrap(), &b).unwrap();
        for code in 0..=5 {
            let piv = PivotStrategy::from_code(code, 10).unwrap();
            let x = tsolve(&t, &b, piv).unwrap().x;
            assert!(rel_error(&x, &lift(&want)) <= 1e-9, "piv {code}");
        }
    }

    #[test]
    fn tlsolve_matches_dense_reconstruction() {
        let n = 24;
        let mut sd = 17;
        let g = rand_c(n, 2, &mut sd);
        let h = rand_c(n, 2, &mut sd);
        let (xi, eta) = (C64::new(1.0, 0.0), C64::new(-1.0, 0.0));
        let a = dense_from_generators(
            &Operator::Shift(xi),
            &dense_fourier(n, xi),
            &Operator::Shift(eta),
            &dense_fourier(n, eta),
            &g,
            &h,
        )
        .unwrap();
        let repr = ToeplitzLike::new(g, h, xi, eta).unwrap();
        let b = rand_c(n, 1, &mut sd);
        let x = tlsolve(&repr, &b, P).unwrap().x;
        assert!(rel_error(&x, &dense_solve(&a, &b).unwrap()) <= 1e-8);
    }

    #[test]
    fn thsolve_examples() {
        let n = 5;
        let mut t = vec![0.0; 2 * n - 1];
        t[n - 1] = 1.0;
        let k = ToeplitzHankel::new(t, vec![0.0; 2 * n - 1]).unwrap();
        let b = Array2::from_shape_fn((n, 2), |(i, j)| (i + 3 * j) as f64);
        let x = thsolve(&k, &b, P).unwrap().x;
        assert!(max_abs(&(x - &b)) < 1e-13);
    }

    #[test]
    fn thsolve_random_and_hankel_match_dense() {
        for (n, hankel_only) in [(32, false), (16, true)] {
            let mut sd = n as u64 + 100;
            let t: Vec<f64> = (0..2 * n - 1)
                .map(|_| if hankel_only { 0.0 } else { lcg(&mut sd) })
                .collect();
            let h: Vec<f64> = (0..2 * n - 1).map(|_| lcg(&mut sd)).collect();
            let k = ToeplitzHankel::new(t, h).unwrap();
            let b = Array2::from_shape_fn((n, 1), |_| lcg(&mut sd));
            let want = dense_solve(&k.to_dense(), &b).unwrap();
            let x: Array2<f64> = thsolve(&k, &b, P).unwrap().x;
            assert!(rel_error(&x, &want) <= 1e-8, "n = {n}");
        }
    }

    #[test]
    fn thlsolve_matches_dense_reconstruction() {
        let n = 12;
        let mut sd = 3;
        let g = Array2::from_shape_fn((n, 4), |_| lcg(&mut sd));
        let h = Array2::from_shape_fn((n, 4), |_| lcg(&mut sd));
        let a = dense_from_generators(
            &Operator::Y(0.0),
            &dense_sine(n),
            &Operator::Y(1.0),
            &dense_cosine(n),
            &g,
            &h,
        )
        .unwrap();
        let b = Array2::from_shape_fn((n, 1), |_| lcg(&mut sd));
        let x = thlsolve(&ToeplitzHankelLike::new(g, h).unwrap(), &b, P)
            .unwrap()
            .x;
        assert!(rel_error(&x, &dense_solve(&a, &b).unwrap()) <= 1e-8);
    }

    #[test]
    fn vsolve_examples() {
        let v = Vandermonde::new(vec![3.0f64]).unwrap();
        let rep = vsolve(&v, &array![[6.0f64]], P, None).unwrap();
        assert!((rep.x[[0, 0]] - C64::new(6.0, 0.0)).norm() < 1e-14);
        assert!(rep.phi.is_some());
        let v = Vandermonde::new(vec![2.0f64, 3.0]).unwrap();
        let x = vsolve(&v, &array![[3.0], [4.0]], P, None).unwrap().x;
        assert!(x.iter().all(|z| (z - C64::new(1.0, 0.0)).norm() < 1e-13));
        let dup = Vandermonde::new(vec![2.0, 2.0]).unwrap();
        assert!(vsolve(&dup, &array![[1.0], [1.0]], P, None)
            .unwrap_err()
            .is_singularity());
    }

    #[test]
    fn vsolve_random_complex_nodes() {
        let n = 64;
        let mut sd = 77;
        let w: Vec<C64> = (0..n)
            .map(|_| C64::from_polar(0.5 + 1.5 * (lcg(&mut sd) + 1.0) / 2.0, 3.2 * lcg(&mut sd)))
            .collect();
        // nodes near the unit circle keep W well conditioned; moduli span [0.5, 2]
        let w: Vec<C64> = w
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let r = 0.5f64.max(2.0f64.min(z.norm().powf(1.0 / 16.0)));
                C64::from_polar(
                    r,
                    2.0 * std::f64::consts::PI * (i as f64 + 0.3 * lcg(&mut sd)) / n as f64,
                )
            })
            .collect();
        let v = Vandermonde::new(w).unwrap();
        let b = rand_c(n, 1, &mut sd);
        let want = dense_solve(&v.to_dense(), &b).unwrap();
        let x = vsolve(&v, &b, P, None).unwrap().x;
        assert!(rel_error(&x, &want) <= 1e-7);
    }

    #[test]
    fn vlsolve_matches_dense_reconstruction() {
        let n = 10;
        let mut sd = 9;
        let w: Vec<C64> = (0..n)
            .map(|i| C64::from_polar(0.8 + 0.02 * i as f64, i as f64))
            .collect();
        let g = rand_c(n, 2, &mut sd);
        let h = rand_c(n, 2, &mut sd);
        let phi = C64::new(0.0, 1.0);
        let a = dense_from_generators(
            &Operator::Diagonal(w.clone()),
            &Array2::eye(n),
            &Operator::ShiftAdjoint(phi),
            &dense_fourier(n, phi),
            &g,
            &h,
        )
        .unwrap();
        let b = rand_c(n, 1, &mut sd);
        let rep = vlsolve(&VandermondeLike::new(w, phi, g, h).unwrap(), &b, P).unwrap();
        assert_eq!(rep.phi, Some(phi));
        assert!(rel_error(&rep.x, &dense_solve(&a, &b).unwrap()) <= 1e-8);
    }

    #[test]
    fn end_to_end_residuals() {
        let n = 128;
        let mut sd = 1234;
        let col = rand_c(n, 1, &mut sd).column(0).to_vec();
        let mut row = rand_c(n, 1, &mut sd).column(0).to_vec();
        row[0] = col[0];
        let t = Toeplitz::new(col, row).unwrap();
        let a = t.to_dense().unwrap();
        let b = rand_c(n, 3, &mut sd);
        let x = tsolve(&t, &b, P).unwrap().x;
        let res = norm_inf(&(a.dot(&x) - &b));
        assert!(res <= 1e-8 * norm_inf(&a) * norm_inf(&x));
        // three columns at once equal three single solves
        for c in 0..3 {
            let bc = b.slice(ndarray::s![.., c..c + 1]).to_owned();
            let xc = tsolve(&t, &bc, P).unwrap().x;
            for i in 0..n {
                assert!((xc[[i, 0]] - x[[i, c]]).norm() <= 1e-12 * max_abs(&x));
            }
        }
    }
}
