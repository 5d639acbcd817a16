mod common;

use cauchylike::converters::{
    t2cl, th2cl, th_generators, thl2cl, tl2cl, toeplitz_generators, v2cl, vandermonde_generators,
    vl2cl, Basis, Conversion,
};
use cauchylike::displacement::cl2full;
use cauchylike::oracle::{
    adjoint, dense_cosine, dense_fourier, dense_from_generators, dense_sine, displacement_residual,
    norm_inf, Operator,
};
use cauchylike::{
    Phase, Scalar, Toeplitz, ToeplitzHankel, ToeplitzHankelLike, ToeplitzLike, Vandermonde,
    VandermondeLike,
};
use common::{c, Lcg};
use ndarray::Array2;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn basis_dense(b: &Basis<f64>, n: usize) -> Array2<C64> {
    match *b {
        Basis::Identity => Array2::eye(n),
        Basis::Fourier(phi) => dense_fourier(n, phi.value()),
        Basis::Sine => dense_sine::<f64>(n).mapv(|v| c(v, 0.0)),
        Basis::Cosine => dense_cosine::<f64>(n).mapv(|v| c(v, 0.0)),
    }
}

/// Displacement residual of the converted matrix and `||cl2full - U^* A V||`, both over `||A||`.
fn check<T: Scalar<Real = f64>>(conv: &Conversion<T>, a: &Array2<C64>) -> (f64, f64) {
    let n = a.nrows();
    let cl = &conv.cauchy;
    let lift = |m: &Array2<T>| m.mapv(|v| v.to_complex());
    let cd = lift(&cl2full(cl).unwrap());
    let t: Vec<C64> = cl.t().iter().map(|v| v.to_complex()).collect();
    let s: Vec<C64> = cl.s().iter().map(|v| v.to_complex()).collect();
    let res = displacement_residual(
        &Operator::Diagonal(t),
        &Operator::Diagonal(s),
        &cd,
        &lift(cl.g()),
        &lift(cl.h()),
    );
    let want = adjoint(&basis_dense(&conv.left, n))
        .dot(a)
        .dot(&basis_dense(&conv.right, n));
    let na = norm_inf(a).max(f64::MIN_POSITIVE);
    (res / na, norm_inf(&(cd - want)) / na)
}

fn assert_small((res, basis): (f64, f64), n: usize, what: &str) {
    let tol = 1e-12 * n as f64;
    assert!(
        res <= tol,
        "{what}: displacement residual {res:e} at n = {n}"
    );
    assert!(basis <= tol, "{what}: basis identity {basis:e} at n = {n}");
}

fn toeplitz(n: usize, g: &mut Lcg) -> Toeplitz<C64> {
    let col = g.cvec(n);
    let mut row = g.cvec(n);
    row[0] = col[0];
    Toeplitz::new(col, row).unwrap()
}

#[test]
fn generator_residuals_against_operator_definitions() {
    for n in [2, 5, 16, 33] {
        let mut g = Lcg(n as u64);
        let t = toeplitz(n, &mut g);
        let a = t.to_dense().unwrap();
        let (gg, hh) = toeplitz_generators(&t).unwrap();
        let r = displacement_residual(
            &Operator::Shift(c(1.0, 0.0)),
            &Operator::Shift(c(-1.0, 0.0)),
            &a,
            &gg,
            &hh,
        );
        assert!(r <= 1e-13 * norm_inf(&a), "toeplitz n = {n}");

        let k = ToeplitzHankel::new(g.rvec(2 * n - 1), g.rvec(2 * n - 1)).unwrap();
        let a = k.to_dense();
        let (gg, hh) = th_generators(&k).unwrap();
        let r = displacement_residual(&Operator::Y(0.0), &Operator::Y(1.0), &a, &gg, &hh);
        assert!(r <= 1e-12 * norm_inf(&a), "t+h n = {n}");

        let w: Vec<C64> = g.cvec(n).into_iter().map(|z| z * 0.8).collect();
        let v = Vandermonde::new(w.clone()).unwrap();
        let phi = Phase::from_angle(0.3);
        let (gg, hh) = vandermonde_generators(&v, phi).unwrap();
        let a = v.to_dense();
        let r = displacement_residual(
            &Operator::Diagonal(w),
            &Operator::ShiftAdjoint(phi.value()),
            &a,
            &gg,
            &hh,
        );
        assert!(r <= 1e-12 * norm_inf(&a), "vandermonde n = {n}");
    }
}

#[test]
fn real_toeplitz_plus_hankel_converts_in_real_arithmetic() {
    let n = 9;
    let mut g = Lcg(5);
    let k = ToeplitzHankel::new(g.rvec(2 * n - 1), g.rvec(2 * n - 1)).unwrap();
    let conv: Conversion<f64> = th2cl(&k, None).unwrap();
    assert_small(
        check(&conv, &k.to_dense().mapv(|v| c(v, 0.0))),
        n,
        "th2cl real",
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn t2cl_identities(n in 1usize..=64, seed: u64) {
        let t = toeplitz(n, &mut Lcg(seed));
        assert_small(check(&t2cl(&t, None).unwrap(), &t.to_dense().unwrap()), n, "t2cl");
    }

    #[test]
    fn tl2cl_identities(n in 1usize..=64, r in 1usize..=4, seed: u64, xi in -3.0f64..3.0, shift in 0.3f64..6.0) {
        let mut g = Lcg(seed);
        let (xi, eta) = (Phase::from_angle(xi), Phase::from_angle(xi + shift));
        let repr = ToeplitzLike::new(g.cmat(n, r), g.cmat(n, r), xi.value(), eta.value()).unwrap();
        let conv = tl2cl(&repr, None).unwrap();
        let a = dense_from_generators(
            &Operator::Shift(xi.value()),
            &dense_fourier(n, xi.value()),
            &Operator::Shift(eta.value()),
            &dense_fourier(n, eta.value()),
            repr.g(),
            repr.h(),
        ).unwrap();
        assert_small(check(&conv, &a), n, "tl2cl");
    }

    #[test]
    fn th2cl_identities(n in 2usize..=64, seed: u64) {
        let mut g = Lcg(seed);
        let k = ToeplitzHankel::new(g.cvec(2 * n - 1), g.cvec(2 * n - 1)).unwrap();
        assert_small(check(&th2cl(&k, None).unwrap(), &k.to_dense()), n, "th2cl");
    }

    #[test]
    fn thl2cl_identities(n in 2usize..=64, r in 1usize..=4, seed: u64) {
        let mut g = Lcg(seed);
        let repr = ToeplitzHankelLike::new(g.cmat(n, r), g.cmat(n, r)).unwrap();
        let conv = thl2cl(&repr, None).unwrap();
        let a = dense_from_generators(
            &Operator::Y(c(0.0, 0.0)),
            &dense_sine::<f64>(n).mapv(|v| c(v, 0.0)),
            &Operator::Y(c(1.0, 0.0)),
            &dense_cosine::<f64>(n).mapv(|v| c(v, 0.0)),
            repr.g(),
            repr.h(),
        ).unwrap();
        assert_small(check(&conv, &a), n, "thl2cl");
    }

    #[test]
    fn v2cl_identities(n in 1usize..=64, seed: u64, theta in -3.0f64..3.0) {
        let mut g = Lcg(seed);
        let w: Vec<C64> = g.cvec(n).into_iter().map(|z| z * 0.7).collect();
        let v = Vandermonde::new(w).unwrap();
        let conv = v2cl(&v, Some(Phase::from_angle(theta)), None);
        // a node power may land on conj(phi); that is reported, not mis-converted
        if let Ok(conv) = conv {
            assert_small(check(&conv, &v.to_dense()), n, "v2cl");
        }
    }

    #[test]
    fn vl2cl_identities(n in 1usize..=64, r in 1usize..=4, seed: u64, theta in -3.0f64..3.0) {
        let mut g = Lcg(seed);
        let w: Vec<C64> = g.cvec(n).into_iter().map(|z| z * 0.7).collect();
        let phi = Phase::from_angle(theta);
        let repr = VandermondeLike::new(w.clone(), phi.value(), g.cmat(n, r), g.cmat(n, r)).unwrap();
        if let Ok(conv) = vl2cl(&repr, None) {
            let a = dense_from_generators(
                &Operator::Diagonal(w),
                &Array2::eye(n),
                &Operator::ShiftAdjoint(phi.value()),
                &dense_fourier(n, phi.value()),
                repr.g(),
                repr.h(),
            ).unwrap();
            assert_small(check(&conv, &a), n, "vl2cl");
        }
    }

    #[test]
    fn transformed_rhs_matches_left_basis(n in 1usize..=40, seed: u64) {
        let mut g = Lcg(seed);
        let t = toeplitz(n, &mut g);
        let b = g.cmat(n, 2);
        let conv = t2cl(&t, Some(&b)).unwrap();
        let want = adjoint(&basis_dense(&conv.left, n)).dot(&b);
        prop_assert!(norm_inf(&(conv.rhs.unwrap() - want)) <= 1e-12 * n as f64 * norm_inf(&b));
    }
}
