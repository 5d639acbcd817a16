//! Displacement-structured representations.
//!
//! A Cauchy-like matrix `C` satisfies `D_t C - C D_s = G H^*` and, when no
//! left knot equals a right knot, is fully determined by its knots and
//! generators:
//!
//! ```text
//! C[i, j] = (G[i, :] . conj(H[j, :])) / (t[i] - s[j])
//! ```
//!
//! Row `i` of `G` holds `phi_i^*` and row `j` of `H` holds `psi_j^*`.
//!
//! Constructors only check shapes. Semantic requirements (distinct knots,
//! unimodular parameters, consistent Toeplitz data) are enforced by the
//! operations that need them and can be inspected up front with
//! [`validate_repr`].

use std::collections::HashMap;
use std::fmt;

use ndarray::{Array2, ArrayView2};
use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::scalar::{max_modulus, Real, Scalar};
use crate::transforms::{dft, Direction};

/// Cauchy-like matrix in knot/generator form.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyLike<T: Scalar> {
    t: Vec<T>,
    s: Vec<T>,
    g: Array2<T>,
    h: Array2<T>,
}

fn check_generators<T>(n: usize, g: &Array2<T>, h: &Array2<T>) -> Result<()> {
    if g.nrows() != n || h.nrows() != n {
        return Err(Error::DimensionMismatch(format!(
            "generators have {} and {} rows, expected {n}",
            g.nrows(),
            h.nrows()
        )));
    }
    if g.ncols() != h.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "G has {} columns but H has {}",
            g.ncols(),
            h.ncols()
        )));
    }
    if g.ncols() == 0 {
        return Err(Error::DimensionMismatch(
            "generators need at least one column".into(),
        ));
    }
    Ok(())
}

#[inline]
pub(crate) fn row_dot_conj<T: Scalar>(g: ArrayView2<T>, i: usize, h: ArrayView2<T>, j: usize) -> T {
    let mut acc = T::zero();
    for q in 0..g.ncols() {
        acc += g[[i, q]] * h[[j, q]].conj();
    }
    acc
}

impl<T: Scalar> CauchyLike<T> {
    pub fn new(t: Vec<T>, s: Vec<T>, g: Array2<T>, h: Array2<T>) -> Result<Self> {
        let n = t.len();
        if s.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "t has {n} knots but s has {}",
                s.len()
            )));
        }
        check_generators(n, &g, &h)?;
        Ok(CauchyLike { t, s, g, h })
    }

    /// Classical Cauchy matrix `1/(t_i - s_j)`: unit generators of rank one.
    pub fn cauchy(t: Vec<T>, s: Vec<T>) -> Result<Self> {
        let n = t.len();
        let ones = Array2::from_elem((n, 1), T::one());
        Self::new(t, s, ones.clone(), ones)
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    /// Displacement rank (generator column count).
    pub fn rank(&self) -> usize {
        self.g.ncols()
    }

    pub fn t(&self) -> &[T] {
        &self.t
    }

    pub fn s(&self) -> &[T] {
        &self.s
    }

    pub fn g(&self) -> &Array2<T> {
        &self.g
    }

    pub fn h(&self) -> &Array2<T> {
        &self.h
    }

    pub fn into_parts(self) -> (Vec<T>, Vec<T>, Array2<T>, Array2<T>) {
        (self.t, self.s, self.g, self.h)
    }

    /// Same matrix data with the right knots replaced.
    pub fn with_s(&self, s: Vec<T>) -> Result<Self> {
        Self::new(self.t.clone(), s, self.g.clone(), self.h.clone())
    }

    /// Entry `(i, j)`, zero-based.
    pub fn entry(&self, i: usize, j: usize) -> Result<T> {
        let n = self.n();
        if i >= n || j >= n {
            return Err(Error::InvalidArgument(format!(
                "entry ({i}, {j}) out of range for n = {n}"
            )));
        }
        let den = self.t[i] - self.s[j];
        if den == T::zero() {
            return Err(Error::NonReconstructable { i, j });
        }
        Ok(row_dot_conj(self.g.view(), i, self.h.view(), j) / den)
    }

    /// First `(i, j)` with `t_i = s_j` exactly.
    pub fn first_collision(&self) -> Option<(usize, usize)> {
        let right = exact_index(&self.s);
        self.t
            .iter()
            .enumerate()
            .find_map(|(i, ti)| right.get(&ti.exact_key()).map(|js| (i, js[0])))
    }

    /// Dense materialization.
    pub fn to_dense(&self) -> Result<Array2<T>> {
        if let Some((i, j)) = self.first_collision() {
            return Err(Error::NonReconstructable { i, j });
        }
        let n = self.n();
        let (g, h) = (self.g.view(), self.h.view());
        Ok(Array2::from_shape_fn((n, n), |(i, j)| {
            row_dot_conj(g, i, h, j) / (self.t[i] - self.s[j])
        }))
    }

    /// `C V` without forming `C`, in `O(n^2 (r + d))`.
    pub fn matmul(&self, v: &Array2<T>) -> Result<Array2<T>> {
        let n = self.n();
        if v.nrows() != n {
            return Err(Error::DimensionMismatch(format!(
                "operand has {} rows, expected {n}",
                v.nrows()
            )));
        }
        if let Some((i, j)) = self.first_collision() {
            return Err(Error::NonReconstructable { i, j });
        }
        let d = v.ncols();
        let mut out = Array2::<T>::zeros((n, d));
        let (g, h) = (self.g.view(), self.h.view());
        for i in 0..n {
            for j in 0..n {
                let c = row_dot_conj(g, i, h, j) / (self.t[i] - self.s[j]);
                for q in 0..d {
                    out[[i, q]] += c * v[[j, q]];
                }
            }
        }
        Ok(out)
    }

    /// Representation of `C^*`: knots `(conj s, conj t)`, generators `(-H, G)`.
    pub fn adjoint(&self) -> Self {
        CauchyLike {
            t: self.s.iter().map(|z| z.conj()).collect(),
            s: self.t.iter().map(|z| z.conj()).collect(),
            g: self.h.mapv(|z| -z),
            h: self.g.clone(),
        }
    }
}

/// `C[i, j]` (zero-based).
pub fn cl_entry<T: Scalar>(repr: &CauchyLike<T>, i: usize, j: usize) -> Result<T> {
    repr.entry(i, j)
}

/// Dense `C`.
pub fn cl2full<T: Scalar>(repr: &CauchyLike<T>) -> Result<Array2<T>> {
    repr.to_dense()
}

/// `C V`.
pub fn cltimes<T: Scalar>(repr: &CauchyLike<T>, v: &Array2<T>) -> Result<Array2<T>> {
    repr.matmul(v)
}

/// Toeplitz matrix `T = (t_{i-j})` from its first column and first row.
#[derive(Debug, Clone, PartialEq)]
pub struct Toeplitz<T: Scalar> {
    col: Vec<T>,
    row: Vec<T>,
}

impl<T: Scalar> Toeplitz<T> {
    pub fn new(col: Vec<T>, row: Vec<T>) -> Result<Self> {
        if col.is_empty() {
            return Err(Error::EmptyVector);
        }
        if col.len() != row.len() {
            return Err(Error::DimensionMismatch(format!(
                "first column has {} entries but first row has {}",
                col.len(),
                row.len()
            )));
        }
        Ok(Toeplitz { col, row })
    }

    /// Symmetric (Hermitian when `conj` data is supplied) Toeplitz from one vector.
    pub fn symmetric(col: Vec<T>) -> Result<Self> {
        let row = col.clone();
        Self::new(col, row)
    }

    pub fn n(&self) -> usize {
        self.col.len()
    }

    pub fn col(&self) -> &[T] {
        &self.col
    }

    pub fn row(&self) -> &[T] {
        &self.row
    }

    pub fn is_consistent(&self) -> bool {
        self.col[0] == self.row[0]
    }

    pub(crate) fn check_consistent(&self) -> Result<()> {
        if self.is_consistent() {
            Ok(())
        } else {
            Err(Error::InconsistentToeplitz)
        }
    }

    /// `t_k` for `k = 1-n..n-1`.
    pub fn coeff(&self, k: isize) -> T {
        if k >= 0 {
            self.col[k as usize]
        } else {
            self.row[(-k) as usize]
        }
    }

    pub fn to_dense(&self) -> Result<Array2<T>> {
        self.check_consistent()?;
        let n = self.n();
        Ok(Array2::from_shape_fn((n, n), |(i, j)| {
            self.coeff(i as isize - j as isize)
        }))
    }

    /// `T V` through a length-`2n` circulant embedding.
    pub fn matmul(&self, v: &Array2<T>) -> Result<Array2<T>> {
        self.check_consistent()?;
        let n = self.n();
        if v.nrows() != n {
            return Err(Error::DimensionMismatch(format!(
                "operand has {} rows, expected {n}",
                v.nrows()
            )));
        }
        let m = 2 * n;
        let mut c = vec![Complex::<T::Real>::zero(); m];
        for (ck, v) in c.iter_mut().zip(&self.col) {
            *ck = v.to_complex();
        }
        for k in 1..n {
            c[m - k] = self.row[k].to_complex();
        }
        let spectrum = dft(&c, Direction::Forward)?;
        let mut out = Array2::<T>::zeros((n, v.ncols()));
        let mut buf = vec![Complex::<T::Real>::zero(); m];
        for (q, col) in v.columns().into_iter().enumerate() {
            buf.iter_mut().for_each(|z| *z = Complex::zero());
            for (b, x) in buf.iter_mut().zip(col.iter()) {
                *b = x.to_complex();
            }
            let mut y = dft(&buf, Direction::Forward)?;
            y.iter_mut().zip(&spectrum).for_each(|(a, b)| *a *= b);
            let y = dft(&y, Direction::Inverse)?;
            for i in 0..n {
                out[[i, q]] = T::from_complex(y[i]);
            }
        }
        Ok(out)
    }
}

/// `T V` for a Toeplitz `T`.
pub fn ttimes<T: Scalar>(t: &Toeplitz<T>, v: &Array2<T>) -> Result<Array2<T>> {
    t.matmul(v)
}

/// Toeplitz-like matrix: `Z_xi A - A Z_eta = G H^*`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzLike<T: Scalar> {
    g: Array2<T>,
    h: Array2<T>,
    xi: Complex<T::Real>,
    eta: Complex<T::Real>,
}

impl<T: Scalar> ToeplitzLike<T> {
    pub fn new(
        g: Array2<T>,
        h: Array2<T>,
        xi: Complex<T::Real>,
        eta: Complex<T::Real>,
    ) -> Result<Self> {
        check_generators(g.nrows(), &g, &h)?;
        Ok(ToeplitzLike { g, h, xi, eta })
    }

    pub fn n(&self) -> usize {
        self.g.nrows()
    }

    pub fn rank(&self) -> usize {
        self.g.ncols()
    }

    pub fn g(&self) -> &Array2<T> {
        &self.g
    }

    pub fn h(&self) -> &Array2<T> {
        &self.h
    }

    pub fn xi(&self) -> Complex<T::Real> {
        self.xi
    }

    pub fn eta(&self) -> Complex<T::Real> {
        self.eta
    }
}

/// Toeplitz+Hankel matrix `K = (t_{i-j} + h_{i+j})`.
///
/// `t` holds `t_{1-n}, ..., t_{n-1}` and `h` holds `h_0, ..., h_{2n-2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzHankel<T: Scalar> {
    t: Vec<T>,
    h: Vec<T>,
}

impl<T: Scalar> ToeplitzHankel<T> {
    pub fn new(t: Vec<T>, h: Vec<T>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::EmptyVector);
        }
        if t.len() % 2 == 0 || t.len() != h.len() {
            return Err(Error::DimensionMismatch(format!(
                "t and h need equal odd lengths 2n-1, got {} and {}",
                t.len(),
                h.len()
            )));
        }
        Ok(ToeplitzHankel { t, h })
    }

    pub fn n(&self) -> usize {
        self.t.len().div_ceil(2)
    }

    pub fn t(&self) -> &[T] {
        &self.t
    }

    pub fn h(&self) -> &[T] {
        &self.h
    }

    /// `t_k`, `k = 1-n..n-1`.
    pub fn t_coeff(&self, k: isize) -> T {
        self.t[(k + self.n() as isize - 1) as usize]
    }

    /// `h_k`, `k = 0..2n-2`.
    pub fn h_coeff(&self, k: usize) -> T {
        self.h[k]
    }

    pub fn to_dense(&self) -> Array2<T> {
        let n = self.n();
        Array2::from_shape_fn((n, n), |(i, j)| {
            self.t_coeff(i as isize - j as isize) + self.h[i + j]
        })
    }
}

/// Toeplitz+Hankel-like matrix: `Y_0 A - A Y_1 = G H^*`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzHankelLike<T: Scalar> {
    g: Array2<T>,
    h: Array2<T>,
}

impl<T: Scalar> ToeplitzHankelLike<T> {
    pub fn new(g: Array2<T>, h: Array2<T>) -> Result<Self> {
        check_generators(g.nrows(), &g, &h)?;
        Ok(ToeplitzHankelLike { g, h })
    }

    pub fn n(&self) -> usize {
        self.g.nrows()
    }

    pub fn rank(&self) -> usize {
        self.g.ncols()
    }

    pub fn g(&self) -> &Array2<T> {
        &self.g
    }

    pub fn h(&self) -> &Array2<T> {
        &self.h
    }
}

/// Vandermonde matrix `W = (w_i^{n-j})`, `i, j = 1..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vandermonde<T: Scalar> {
    w: Vec<T>,
}

impl<T: Scalar> Vandermonde<T> {
    pub fn new(w: Vec<T>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Vandermonde { w })
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn nodes(&self) -> &[T] {
        &self.w
    }

    /// First pair of equal nodes.
    pub fn first_duplicate(&self) -> Option<(usize, usize)> {
        first_repeat(&self.w)
    }

    pub fn to_dense(&self) -> Array2<T> {
        let n = self.n();
        let mut a = Array2::<T>::zeros((n, n));
        for (i, &wi) in self.w.iter().enumerate() {
            let mut p = T::one();
            for j in (0..n).rev() {
                a[[i, j]] = p;
                p *= wi;
            }
        }
        a
    }
}

/// Vandermonde-like matrix: `D_w A - A Z_phi^* = G H^*`.
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeLike<T: Scalar> {
    w: Vec<T>,
    phi: Complex<T::Real>,
    g: Array2<T>,
    h: Array2<T>,
}

impl<T: Scalar> VandermondeLike<T> {
    pub fn new(w: Vec<T>, phi: Complex<T::Real>, g: Array2<T>, h: Array2<T>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyVector);
        }
        check_generators(w.len(), &g, &h)?;
        Ok(VandermondeLike { w, phi, g, h })
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn rank(&self) -> usize {
        self.g.ncols()
    }

    pub fn nodes(&self) -> &[T] {
        &self.w
    }

    pub fn phi(&self) -> Complex<T::Real> {
        self.phi
    }

    pub fn g(&self) -> &Array2<T> {
        &self.g
    }

    pub fn h(&self) -> &Array2<T> {
        &self.h
    }
}

/// Exact-value index: key -> positions in order of appearance.
pub(crate) fn exact_index<T: Scalar>(xs: &[T]) -> HashMap<[u64; 2], Vec<usize>> {
    let mut map: HashMap<[u64; 2], Vec<usize>> = HashMap::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        map.entry(x.exact_key()).or_default().push(i);
    }
    map
}

/// First `(i, j)`, `i < j`, with `xs[i] = xs[j]` exactly (smallest `j`).
pub(crate) fn first_repeat<T: Scalar>(xs: &[T]) -> Option<(usize, usize)> {
    let mut seen: HashMap<[u64; 2], usize> = HashMap::with_capacity(xs.len());
    for (j, x) in xs.iter().enumerate() {
        if let Some(&i) = seen.get(&x.exact_key()) {
            return Some((i, j));
        }
        seen.insert(x.exact_key(), j);
    }
    None
}

/// Which knot vector a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotSide {
    Left,
    Right,
}

/// One violated requirement. Indices are zero-based.
#[derive(Debug, Clone, PartialEq)]
pub enum Issue {
    NonFinite {
        field: &'static str,
    },
    /// `t_i = s_j` exactly: entry `(i, j)` is not reconstructable.
    KnotCollision {
        i: usize,
        j: usize,
    },
    /// `0 < |t_i - s_j| <= 1e-13 max|knot|`.
    NearKnotCollision {
        i: usize,
        j: usize,
        distance: f64,
    },
    /// A knot value repeated more often than the displacement rank allows.
    ExcessMultiplicity {
        side: KnotSide,
        first: usize,
        multiplicity: usize,
        rank: usize,
    },
    NonUnimodular {
        name: &'static str,
        modulus: f64,
    },
    EqualParameters,
    DuplicateNodes {
        i: usize,
        j: usize,
    },
    /// Node `w_index` makes a left knot equal to a right knot after conversion.
    NodeCollision {
        index: usize,
    },
    InconsistentToeplitz,
    TooSmall {
        n: usize,
        min: usize,
    },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::NonFinite { field } => write!(f, "non-finite entries in {field}"),
            Issue::KnotCollision { i, j } => write!(f, "knot collision t[{i}] = s[{j}]"),
            Issue::NearKnotCollision { i, j, distance } => {
                write!(f, "near knot collision |t[{i}] - s[{j}]| = {distance:e}")
            }
            Issue::ExcessMultiplicity {
                side,
                first,
                multiplicity,
                rank,
            } => {
                let name = match side {
                    KnotSide::Left => "t",
                    KnotSide::Right => "s",
                };
                write!(
                    f,
                    "{name}[{first}] repeated {multiplicity} times > rank {rank} (structurally singular)"
                )
            }
            Issue::NonUnimodular { name, modulus } => {
                write!(f, "parameter {name} not unimodular: |{name}| = {modulus}")
            }
            Issue::EqualParameters => write!(f, "displacement parameters xi and eta are equal"),
            Issue::DuplicateNodes { i, j } => write!(f, "duplicate nodes w[{i}] = w[{j}]"),
            Issue::NodeCollision { index } => write!(f, "node w[{index}] collides with phi"),
            Issue::InconsistentToeplitz => write!(f, "first column and first row disagree"),
            Issue::TooSmall { n, min } => write!(f, "size {n} below minimum {min}"),
        }
    }
}

/// Findings of [`validate_repr`]; empty when the representation is clean.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub issues: Vec<Issue>,
    /// Findings dropped once [`Diagnostics::CAP`] per kind was reached.
    pub suppressed: usize,
}

impl Diagnostics {
    /// Per-kind reporting cap for pairwise findings.
    pub const CAP: usize = 32;

    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }

    fn push_capped(&mut self, count: &mut usize, issue: Issue) {
        if *count < Self::CAP {
            self.issues.push(issue);
        } else {
            self.suppressed += 1;
        }
        *count += 1;
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return write!(f, "clean");
        }
        for issue in &self.issues {
            writeln!(f, "{issue}")?;
        }
        if self.suppressed > 0 {
            writeln!(f, "({} more findings suppressed)", self.suppressed)?;
        }
        Ok(())
    }
}

/// Representations that can report their violated invariants.
pub trait Validate {
    fn validate(&self) -> Diagnostics;
}

/// Reports violated invariants of any structured representation, never failing.
pub fn validate_repr<V: Validate + ?Sized>(repr: &V) -> Diagnostics {
    repr.validate()
}

fn all_finite<'a, T: Scalar + 'a>(xs: impl IntoIterator<Item = &'a T>) -> bool {
    xs.into_iter().all(|x| x.is_finite())
}

fn check_finite<'a, T: Scalar + 'a>(
    d: &mut Diagnostics,
    field: &'static str,
    xs: impl IntoIterator<Item = &'a T>,
) {
    if !all_finite(xs) {
        d.issues.push(Issue::NonFinite { field });
    }
}

fn check_phase<R: Real>(d: &mut Diagnostics, name: &'static str, z: Complex<R>) {
    if crate::transforms::Phase::new(z).is_err() {
        d.issues.push(Issue::NonUnimodular {
            name,
            modulus: z.norm().as_f64(),
        });
    }
}

/// Exact and near collisions between `t` and `s`, plus multiplicities above `rank`.
pub(crate) fn knot_findings<T: Scalar>(d: &mut Diagnostics, t: &[T], s: &[T], rank: usize) {
    let right = exact_index(s);
    let mut count = 0;
    for (i, ti) in t.iter().enumerate() {
        if let Some(js) = right.get(&ti.exact_key()) {
            for &j in js {
                d.push_capped(&mut count, Issue::KnotCollision { i, j });
            }
        }
    }

    let scale = Float::max(max_modulus(t), max_modulus(s)).as_f64();
    let delta = 1e-13 * scale;
    if delta > 0.0 && delta.is_finite() {
        // grid hashing with cell size delta: near pairs lie in adjacent cells
        let cell = |z: T| {
            (
                (z.re().as_f64() / delta).floor() as i64,
                (z.im().as_f64() / delta).floor() as i64,
            )
        };
        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (j, &sj) in s.iter().enumerate() {
            if sj.is_finite() {
                grid.entry(cell(sj)).or_default().push(j);
            }
        }
        let mut near = 0;
        for (i, &ti) in t.iter().enumerate() {
            if !ti.is_finite() {
                continue;
            }
            let (cx, cy) = cell(ti);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(js) = grid.get(&(cx + dx, cy + dy)) {
                        for &j in js {
                            let dist = (ti - s[j]).modulus().as_f64();
                            if dist > 0.0 && dist <= delta {
                                d.push_capped(
                                    &mut near,
                                    Issue::NearKnotCollision {
                                        i,
                                        j,
                                        distance: dist,
                                    },
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    for (side, xs) in [(KnotSide::Left, t), (KnotSide::Right, s)] {
        let mut groups: Vec<Vec<usize>> = exact_index(xs).into_values().collect();
        groups.sort_by_key(|g| g[0]);
        for g in groups {
            if g.len() > rank {
                d.issues.push(Issue::ExcessMultiplicity {
                    side,
                    first: g[0],
                    multiplicity: g.len(),
                    rank,
                });
            }
        }
    }
}

impl<T: Scalar> Validate for CauchyLike<T> {
    fn validate(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        check_finite(&mut d, "t", &self.t);
        check_finite(&mut d, "s", &self.s);
        check_finite(&mut d, "G", self.g.iter());
        check_finite(&mut d, "H", self.h.iter());
        knot_findings(&mut d, &self.t, &self.s, self.rank());
        d
    }
}

impl<T: Scalar> Validate for Toeplitz<T> {
    fn validate(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        check_finite(&mut d, "col", &self.col);
        check_finite(&mut d, "row", &self.row);
        if !self.is_consistent() {
            d.issues.push(Issue::InconsistentToeplitz);
        }
        d
    }
}

impl<T: Scalar> Validate for ToeplitzLike<T> {
    fn validate(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        check_finite(&mut d, "G", self.g.iter());
        check_finite(&mut d, "H", self.h.iter());
        check_phase(&mut d, "xi", self.xi);
        check_phase(&mut d, "eta", self.eta);
        if self.xi == self.eta {
            d.issues.push(Issue::EqualParameters);
        }
        d
    }
}

impl<T: Scalar> Validate for ToeplitzHankel<T> {
    fn validate(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        check_finite(&mut d, "t", &self.t);
        check_finite(&mut d, "h", &self.h);
        if self.n() < 2 {
            d.issues.push(Issue::TooSmall {
                n: self.n(),
                min: 2,
            });
        }
        d
    }
}

impl<T: Scalar> Validate for ToeplitzHankelLike<T> {
    fn validate(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        check_finite(&mut d, "G", self.g.iter());
        check_finite(&mut d, "H", self.h.iter());
        if self.n() < 2 {
            d.issues.push(Issue::TooSmall {
                n: self.n(),
                min: 2,
            });
        }
        d
    }
}

fn node_findings<T: Scalar>(d: &mut Diagnostics, w: &[T], phi: Option<Complex<T::Real>>) {
    let mut count = 0;
    let index = exact_index(w);
    let mut groups: Vec<&Vec<usize>> = index.values().filter(|g| g.len() > 1).collect();
    groups.sort_by_key(|g| g[0]);
    for g in groups {
        for &j in &g[1..] {
            d.push_capped(&mut count, Issue::DuplicateNodes { i: g[0], j });
        }
    }
    if let Some(phi) = phi {
        let mut count = 0;
        for index in crate::converters::node_collisions(w, phi) {
            d.push_capped(&mut count, Issue::NodeCollision { index });
        }
    }
}

impl<T: Scalar> Validate for Vandermonde<T> {
    fn validate(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        check_finite(&mut d, "w", &self.w);
        node_findings(&mut d, &self.w, None);
        d
    }
}

impl<T: Scalar> Validate for VandermondeLike<T> {
    fn validate(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        check_finite(&mut d, "w", &self.w);
        check_finite(&mut d, "G", self.g.iter());
        check_finite(&mut d, "H", self.h.iter());
        check_phase(&mut d, "phi", self.phi);
        node_findings(&mut d, &self.w, Some(self.phi));
        d
    }
}
