#![allow(dead_code)]

use std::f64::consts::PI;

use cauchylike::CauchyLike;
use ndarray::Array2;
use num_complex::Complex64 as C64;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Small deterministic generator for test data.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn sym(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64) / ((1u64 << 53) as f64) * 2.0 - 1.0
    }

    pub fn cx(&mut self) -> C64 {
        let re = self.sym();
        c(re, self.sym())
    }

    pub fn cvec(&mut self, n: usize) -> Vec<C64> {
        (0..n).map(|_| self.cx()).collect()
    }

    pub fn rvec(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.sym()).collect()
    }

    pub fn cmat(&mut self, rows: usize, cols: usize) -> Array2<C64> {
        Array2::from_shape_fn((rows, cols), |_| self.cx())
    }

    pub fn rmat(&mut self, rows: usize, cols: usize) -> Array2<f64> {
        Array2::from_shape_fn((rows, cols), |_| self.sym())
    }
}

/// Cauchy-like matrix with jittered knots on two interleaved circles.
pub fn random_cauchy_like(n: usize, r: usize, seed: u64) -> CauchyLike<C64> {
    let mut g = Lcg(seed);
    let step = 2.0 * PI / n as f64;
    let t = (0..n)
        .map(|k| C64::from_polar(1.0 + 0.1 * g.sym(), step * (k as f64 + 0.2 * g.sym())))
        .collect();
    let s = (0..n)
        .map(|k| C64::from_polar(1.0 + 0.1 * g.sym(), step * (k as f64 + 0.5 + 0.2 * g.sym())))
        .collect();
    CauchyLike::new(t, s, g.cmat(n, r), g.cmat(n, r)).unwrap()
}

pub fn max_abs_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

pub fn real_max_abs_diff(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn lift(a: &Array2<f64>) -> Array2<C64> {
    a.mapv(|v| c(v, 0.0))
}
