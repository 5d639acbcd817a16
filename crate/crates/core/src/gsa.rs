//! Generalized Schur algorithm on the augmented matrix `[C b; -I 0]`.
//!
//! After `n` elimination steps the trailing Schur complement of the augmented
//! matrix is `C^{-1} b`. The rows `n+1..n+k` of the augmented matrix are
//! stored in the generator rows freed by the first `k` steps, so the working
//! set is `(2r + d + 2) n` scalars plus a few index and norm vectors; no
//! `n x n` buffer is ever formed.
//!
//! Internal layout is column-major: column `q` of `G` is
//! `g[q*n .. (q+1)*n]` and `hc[q*n + j] = conj(H[j, q])`, i.e. `hc` stores
//! `H^*` row by row.

use std::collections::HashMap;
use std::ops::Range;

use ndarray::Array2;
use num_traits::{Float, One, Zero};

use crate::displacement::{exact_index, first_repeat, CauchyLike};
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Pivoting strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotStrategy {
    None,
    #[default]
    Partial,
    SweetBrent,
    /// QR refresh of the left generator every `period` steps plus column
    /// selection by right-generator column norms, then partial pivoting.
    Gu {
        period: usize,
    },
    /// Searches the whole live Schur complement, one column at a time. `O(n^3)`.
    Complete,
}

impl PivotStrategy {
    pub const DEFAULT_GU_PERIOD: usize = 10;

    /// `{0 none, 1 partial, 2 Sweet-Brent, 3 Gu K=1, 4 Gu K=gu_period, 5 complete}`.
    pub fn from_code(code: i64, gu_period: usize) -> Result<Self> {
        if gu_period == 0 {
            return Err(Error::InvalidArgument("Gu period must be >= 1".into()));
        }
        Ok(match code {
            0 => PivotStrategy::None,
            1 => PivotStrategy::Partial,
            2 => PivotStrategy::SweetBrent,
            3 => PivotStrategy::Gu { period: 1 },
            4 => PivotStrategy::Gu { period: gu_period },
            5 => PivotStrategy::Complete,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "pivot code {code} not in 0..=5"
                )))
            }
        })
    }

    pub fn code(&self) -> u8 {
        match self {
            PivotStrategy::None => 0,
            PivotStrategy::Partial => 1,
            PivotStrategy::SweetBrent => 2,
            PivotStrategy::Gu { period: 1 } => 3,
            PivotStrategy::Gu { .. } => 4,
            PivotStrategy::Complete => 5,
        }
    }

    /// Only row pivoting keeps gathered right knots contiguous.
    pub fn allows_repeated_knots(&self) -> bool {
        matches!(self, PivotStrategy::None | PivotStrategy::Partial)
    }
}

/// How to treat repeated right knots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolvePath {
    /// Gathered when `s` has exact repeats, plain otherwise.
    #[default]
    Auto,
    /// Requires pairwise distinct `s`.
    Plain,
    /// Always builds a gather plan (identity when `s` is distinct).
    Gathered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    pub pivot: PivotStrategy,
    pub path: SolvePath,
    /// Record per-step generator maxima.
    pub track_growth: bool,
}

impl From<PivotStrategy> for SolveOptions {
    fn from(pivot: PivotStrategy) -> Self {
        SolveOptions::new(pivot)
    }
}

impl SolveOptions {
    pub fn new(pivot: PivotStrategy) -> Self {
        SolveOptions {
            pivot,
            ..Default::default()
        }
    }

    pub fn path(mut self, path: SolvePath) -> Self {
        self.path = path;
        self
    }

    pub fn track_growth(mut self, on: bool) -> Self {
        self.track_growth = on;
        self
    }
}

/// Largest generator entries: index 0 is the input, index `k` is after step `k`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GrowthTrace {
    /// `max |G|` over the rows still to be eliminated.
    pub left: Vec<f64>,
    /// `max |H|` over the columns still to be eliminated.
    pub right: Vec<f64>,
}

impl GrowthTrace {
    fn ratio(xs: &[f64]) -> f64 {
        let first = xs.first().copied().unwrap_or(0.0);
        let top = xs.iter().copied().fold(0.0, f64::max);
        if first > 0.0 {
            top / first
        } else {
            f64::NAN
        }
    }

    /// `max_k max|G^(k)| / max|G^(0)|`.
    pub fn left_ratio(&self) -> f64 {
        Self::ratio(&self.left)
    }

    /// `max_k max|H^(k)| / max|H^(0)|`.
    pub fn right_ratio(&self) -> f64 {
        Self::ratio(&self.right)
    }
}

/// Result of a Cauchy-like (or reduced structured) solve.
#[derive(Debug, Clone)]
pub struct SolveReport<T: Scalar> {
    pub x: Array2<T>,
    /// `1 / (||U||_1 ||U^{-1}||_1)` for the computed `U` factor, in `[0, 1]`.
    pub rcond_u: T::Real,
    /// `rcond_u` below machine epsilon.
    pub ill_conditioned: bool,
    /// `row_perm[k]` is the original row eliminated at step `k`.
    pub row_perm: Vec<usize>,
    /// `col_perm[k]` is the original column eliminated at step `k`.
    pub col_perm: Vec<usize>,
    pub growth: Option<GrowthTrace>,
    /// Gu refreshes skipped because the live left generator was rank deficient.
    pub gu_skipped_refreshes: usize,
    /// Displacement parameter chosen by a Vandermonde reduction.
    pub phi: Option<num_complex::Complex<T::Real>>,
}

/// Gathering of repeated right knots (all indices zero-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GatherPlan {
    /// Gathered position `k` holds original index `perm[k]`.
    pub perm: Vec<usize>,
    /// First gathered position of the block containing `k`.
    pub alpha: Vec<usize>,
    /// Last gathered position of the block containing `k`.
    pub omega: Vec<usize>,
    /// Block sizes in order of first appearance.
    pub multiplicities: Vec<usize>,
}

impl GatherPlan {
    /// Number of distinct values.
    pub fn distinct(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities.iter().copied().max().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| k == p)
    }

    /// `s[perm]`.
    pub fn apply<T: Copy>(&self, s: &[T]) -> Vec<T> {
        self.perm.iter().map(|&p| s[p]).collect()
    }
}

/// Groups equal entries of `s` contiguously, blocks ordered by first appearance.
pub fn build_gather_plan<T: Scalar>(s: &[T]) -> GatherPlan {
    let n = s.len();
    let mut order: Vec<[u64; 2]> = Vec::new();
    let mut groups: HashMap<[u64; 2], Vec<usize>> = HashMap::with_capacity(n);
    for (i, v) in s.iter().enumerate() {
        let key = v.exact_key();
        groups
            .entry(key)
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(i);
    }
    let mut perm = Vec::with_capacity(n);
    let mut alpha = Vec::with_capacity(n);
    let mut omega = Vec::with_capacity(n);
    let mut multiplicities = Vec::with_capacity(order.len());
    for key in &order {
        let block = &groups[key];
        let a = perm.len();
        let w = a + block.len() - 1;
        for &i in block {
            perm.push(i);
            alpha.push(a);
            omega.push(w);
        }
        multiplicities.push(block.len());
    }
    GatherPlan {
        perm,
        alpha,
        omega,
        multiplicities,
    }
}

/// Replaces every entry within `tol` of an earlier entry by that entry's
/// collapsed value: the first such earlier entry wins, so chains collapse
/// transitively onto their first member. `tol = 0` is the identity.
pub fn collapse_knots<T: Scalar>(s: &[T], tol: T::Real) -> Vec<T> {
    let mut out = s.to_vec();
    if tol.is_nan() || tol <= T::Real::zero() || !tol.is_finite() {
        return out;
    }
    let h = tol.as_f64();
    let cell = |z: T| {
        (
            (z.re().as_f64() / h).floor() as i64,
            (z.im().as_f64() / h).floor() as i64,
        )
    };
    // grid of cell size tol: any earlier entry within tol lies in an adjacent cell
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (j, &sj) in s.iter().enumerate() {
        if !sj.is_finite() {
            continue;
        }
        let (cx, cy) = cell(sj);
        let mut anchor: Option<usize> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(is) = grid.get(&(cx + dx, cy + dy)) {
                    for &i in is {
                        if (s[i] - sj).modulus() <= tol && anchor.map_or(true, |a| i < a) {
                            anchor = Some(i);
                        }
                    }
                }
            }
        }
        if let Some(i) = anchor {
            out[j] = out[i];
        }
        grid.entry((cx, cy)).or_default().push(j);
    }
    out
}

/// Working set of one solve. Exposed so that individual steps can be
/// inspected; [`clsolve_with`] drives it to completion.
#[derive(Debug, Clone)]
pub struct SchurState<T: Scalar> {
    n: usize,
    r: usize,
    d: usize,
    k: usize,
    g: Vec<T>,
    hc: Vec<T>,
    b: Vec<T>,
    // row knots: s_i for eliminated slots i < k, t_i for live rows
    kn: Vec<T>,
    s: Vec<T>,
    l: Vec<T>,
    u: Vec<T>,
    colsum: Vec<T::Real>,
    inv_norm: T::Real,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
    pivot: PivotStrategy,
    gather: Option<GatherPlan>,
    growth: Option<GrowthTrace>,
    gu_skipped: usize,
}

impl<T: Scalar> SchurState<T> {
    pub fn new(repr: &CauchyLike<T>, b: &Array2<T>, opts: &SolveOptions) -> Result<Self> {
        let n = repr.n();
        let r = repr.rank();
        if b.nrows() != n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, expected {n}",
                b.nrows()
            )));
        }
        if let PivotStrategy::Gu { period: 0 } = opts.pivot {
            return Err(Error::InvalidArgument("Gu period must be >= 1".into()));
        }
        if let Some((i, j)) = repr.first_collision() {
            return Err(Error::NonReconstructable { i, j });
        }
        for (name, xs) in [("t", repr.t()), ("s", repr.s())] {
            if let Some(g) = exact_index(xs).values().find(|g| g.len() > r) {
                return Err(Error::StructurallySingular(format!(
                    "{name}[{}] repeated {} times, more than the displacement rank {r}",
                    g[0],
                    g.len()
                )));
            }
        }

        let repeat = first_repeat(repr.s());
        let gathered = match opts.path {
            SolvePath::Plain => {
                if let Some((first, second)) = repeat {
                    return Err(Error::RepeatedRightKnots { first, second });
                }
                false
            }
            SolvePath::Auto => repeat.is_some(),
            SolvePath::Gathered => true,
        };
        if gathered && repeat.is_some() && !opts.pivot.allows_repeated_knots() {
            return Err(Error::PivotIncompatibleWithRepeatedKnots);
        }
        if gathered && !opts.pivot.allows_repeated_knots() {
            return Err(Error::InvalidArgument(
                "the gathered path supports only no pivoting or partial pivoting".into(),
            ));
        }
        let plan = gathered.then(|| build_gather_plan(repr.s()));
        let col_perm: Vec<usize> = match &plan {
            Some(p) => p.perm.clone(),
            None => (0..n).collect(),
        };

        let d = b.ncols();
        let mut g = vec![T::zero(); n * r];
        let mut hc = vec![T::zero(); n * r];
        for q in 0..r {
            for i in 0..n {
                g[q * n + i] = repr.g()[[i, q]];
                hc[q * n + i] = repr.h()[[col_perm[i], q]].conj();
            }
        }
        let mut bb = vec![T::zero(); n * d];
        for c in 0..d {
            for i in 0..n {
                bb[c * n + i] = b[[i, c]];
            }
        }
        let s: Vec<T> = col_perm.iter().map(|&p| repr.s()[p]).collect();

        let mut state = SchurState {
            n,
            r,
            d,
            k: 0,
            g,
            hc,
            b: bb,
            kn: repr.t().to_vec(),
            s,
            l: vec![T::zero(); n],
            u: vec![T::zero(); n],
            colsum: vec![T::Real::zero(); n],
            inv_norm: T::Real::zero(),
            row_perm: (0..n).collect(),
            col_perm,
            pivot: opts.pivot,
            gather: plan,
            growth: opts.track_growth.then(GrowthTrace::default),
            gu_skipped: 0,
        };
        state.record_growth();
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Steps performed so far.
    pub fn steps_done(&self) -> usize {
        self.k
    }

    pub fn is_done(&self) -> bool {
        self.k >= self.n
    }

    pub fn is_gathered(&self) -> bool {
        self.gather.is_some()
    }

    /// Entry `(i, j)` of the live Schur complement, `k <= i, j < n`, in the
    /// current (permuted) coordinates, reconstructed from the generators.
    pub fn live_entry(&self, i: usize, j: usize) -> Option<T> {
        if i < self.k || j < self.k || i >= self.n || j >= self.n {
            return None;
        }
        let den = self.kn[i] - self.s[j];
        if den == T::zero() {
            return None;
        }
        let n = self.n;
        let mut acc = T::zero();
        for q in 0..self.r {
            acc += self.g[q * n + i] * self.hc[q * n + j];
        }
        Some(acc / den)
    }

    /// 2-norms of the live left generator columns (rows `k..n`).
    pub fn live_left_column_norms(&self) -> Vec<T::Real> {
        let n = self.n;
        (0..self.r)
            .map(|q| {
                self.g[q * n + self.k..(q + 1) * n]
                    .iter()
                    .fold(T::Real::zero(), |acc, v| acc + v.norm_sqr())
                    .sqrt()
            })
            .collect()
    }

    fn record_growth(&mut self) {
        if self.growth.is_none() {
            return;
        }
        let n = self.n;
        let k = self.k;
        let mut gmax = 0.0f64;
        let mut hmax = 0.0f64;
        for q in 0..self.r {
            for v in &self.g[q * n + k..(q + 1) * n] {
                gmax = gmax.max(v.modulus().as_f64());
            }
            for v in &self.hc[q * n + k..(q + 1) * n] {
                hmax = hmax.max(v.modulus().as_f64());
            }
        }
        if let Some(tr) = self.growth.as_mut() {
            tr.left.push(gmax);
            tr.right.push(hmax);
        }
    }

    fn compute_l(&mut self, range: Range<usize>) {
        let n = self.n;
        let k = self.k;
        let l = &mut self.l[range.clone()];
        l.iter_mut().for_each(|v| *v = T::zero());
        for q in 0..self.r {
            let hq = self.hc[q * n + k];
            let col = &self.g[q * n + range.start..q * n + range.end];
            for (li, gi) in l.iter_mut().zip(col) {
                *li += *gi * hq;
            }
        }
        let sk = self.s[k];
        for (li, ki) in l.iter_mut().zip(&self.kn[range]) {
            *li /= *ki - sk;
        }
    }

    fn compute_u(&mut self) {
        let n = self.n;
        let k = self.k;
        let u = &mut self.u[k + 1..n];
        u.iter_mut().for_each(|v| *v = T::zero());
        for q in 0..self.r {
            let gk = self.g[q * n + k];
            let col = &self.hc[q * n + k + 1..(q + 1) * n];
            for (uj, hj) in u.iter_mut().zip(col) {
                *uj += gk * *hj;
            }
        }
        let tk = self.kn[k];
        for (uj, sj) in u.iter_mut().zip(&self.s[k + 1..n]) {
            *uj /= tk - *sj;
        }
    }

    /// `l` for the stored augmented rows `0..k`.
    fn compute_l_head(&mut self) {
        let k = self.k;
        match &self.gather {
            Some(plan) if plan.alpha[k] < k => {
                let a = plan.alpha[k];
                self.compute_l(0..a);
                let slot = (k - a - 1) * self.n;
                for i in a..k {
                    self.l[i] = self.hc[slot + i];
                }
            }
            _ => self.compute_l(0..k),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.n;
        for q in 0..self.r {
            self.g.swap(q * n + i, q * n + j);
        }
        for c in 0..self.d {
            self.b.swap(c * n + i, c * n + j);
        }
        self.kn.swap(i, j);
        self.l.swap(i, j);
        self.row_perm.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.n;
        for q in 0..self.r {
            self.hc.swap(q * n + i, q * n + j);
        }
        self.s.swap(i, j);
        self.col_perm.swap(i, j);
        self.colsum.swap(i, j);
    }

    /// First index of the largest modulus in `xs`, offset by `start`.
    fn argmax(xs: &[T], start: usize) -> (usize, T::Real) {
        let mut best = (start, T::Real::zero());
        for (i, v) in xs.iter().enumerate() {
            let m = v.norm_sqr();
            if m > best.1 {
                best = (start + i, m);
            }
        }
        best
    }

    fn partial_pivot(&mut self) {
        let k = self.k;
        let (i, _) = Self::argmax(&self.l[k..self.n], k);
        self.swap_rows(k, i);
    }

    /// Compact QR of the live left generator: `G[k..n] = Q R`, then
    /// `G[k..n] <- Q`, `G[0..k] <- G[0..k] R^{-1}`, `H^* <- R H^*` on live
    /// columns. Returns `false` (and changes nothing) when `R` is numerically
    /// singular.
    pub fn gu_refresh(&mut self) -> bool {
        let (n, r, k) = (self.n, self.r, self.k);
        let m = n - k;
        let mut qm = vec![T::zero(); m * r];
        for q in 0..r {
            qm[q * m..(q + 1) * m].copy_from_slice(&self.g[q * n + k..(q + 1) * n]);
        }
        let mut rm = vec![T::zero(); r * r];
        let tiny = T::Real::lit(1e-300);
        for q in 0..r {
            for _pass in 0..2 {
                for p in 0..q {
                    let (head, tail) = qm.split_at_mut(q * m);
                    let qp = &head[p * m..(p + 1) * m];
                    let v = &mut tail[..m];
                    let mut coeff = T::zero();
                    for (a, b) in qp.iter().zip(v.iter()) {
                        coeff += a.conj() * *b;
                    }
                    for (a, b) in qp.iter().zip(v.iter_mut()) {
                        *b -= *a * coeff;
                    }
                    rm[p * r + q] += coeff;
                }
            }
            let v = &mut qm[q * m..(q + 1) * m];
            let norm = v
                .iter()
                .fold(T::Real::zero(), |acc, z| acc + z.norm_sqr())
                .sqrt();
            if norm.is_nan() || norm <= tiny {
                return false;
            }
            let inv = T::from_real(T::Real::one() / norm);
            v.iter_mut().for_each(|z| *z *= inv);
            rm[q * r + q] = T::from_real(norm);
        }

        // G[0..k] <- G[0..k] R^{-1}, column by column
        for q in 0..r {
            for p in 0..q {
                let c = rm[p * r + q];
                if c == T::zero() {
                    continue;
                }
                for i in 0..k {
                    let v = self.g[p * n + i];
                    self.g[q * n + i] -= v * c;
                }
            }
            let inv = T::one() / rm[q * r + q];
            for v in &mut self.g[q * n..q * n + k] {
                *v *= inv;
            }
        }
        for q in 0..r {
            self.g[q * n + k..(q + 1) * n].copy_from_slice(&qm[q * m..(q + 1) * m]);
        }
        // H^* <- R H^*; row q only reads rows p >= q, still unmodified
        for q in 0..r {
            let diag = rm[q * r + q];
            for j in k..n {
                let mut acc = diag * self.hc[q * n + j];
                for p in q + 1..r {
                    acc += rm[q * r + p] * self.hc[p * n + j];
                }
                self.hc[q * n + j] = acc;
            }
        }
        true
    }

    fn gu_column_choice(&mut self) {
        let (n, k) = (self.n, self.k);
        let mut best = (k, T::Real::zero());
        for j in k..n {
            let mut acc = T::Real::zero();
            for q in 0..self.r {
                acc += self.hc[q * n + j].norm_sqr();
            }
            if acc > best.1 {
                best = (j, acc);
            }
        }
        self.swap_cols(k, best.0);
    }

    fn complete_pivot(&mut self) -> Result<()> {
        let (n, k) = (self.n, self.k);
        let mut best = (k, k, T::Real::zero());
        for j in k..n {
            let sj = self.s[j];
            for i in k..n {
                let mut acc = T::zero();
                for q in 0..self.r {
                    acc += self.g[q * n + i] * self.hc[q * n + j];
                }
                let m = (acc / (self.kn[i] - sj)).norm_sqr();
                if m > best.2 {
                    best = (i, j, m);
                }
            }
        }
        if best.2 == T::Real::zero() {
            return Err(Error::SingularMatrix { step: k });
        }
        self.swap_rows(k, best.0);
        self.swap_cols(k, best.1);
        Ok(())
    }

    /// One elimination step.
    pub fn step(&mut self) -> Result<()> {
        if self.is_done() {
            return Err(Error::InvalidArgument("all steps already performed".into()));
        }
        let (n, k) = (self.n, self.k);
        let mut u_ready = false;
        match self.pivot {
            PivotStrategy::None => self.compute_l(k..n),
            PivotStrategy::Partial => {
                self.compute_l(k..n);
                self.partial_pivot();
            }
            PivotStrategy::Gu { period } => {
                if k % period == 0 && k + self.r <= n && !self.gu_refresh() {
                    self.gu_skipped += 1;
                }
                self.gu_column_choice();
                self.compute_l(k..n);
                self.partial_pivot();
            }
            PivotStrategy::Complete => {
                self.complete_pivot()?;
                self.compute_l(k..n);
            }
            PivotStrategy::SweetBrent => {
                self.compute_l(k..n);
                self.compute_u();
                let (i1, p1) = Self::argmax(&self.l[k..n], k);
                let (i2, p2) = Self::argmax(&self.u[k + 1..n], k + 1);
                if p1 == T::Real::zero() && p2 == T::Real::zero() {
                    return Err(Error::SingularMatrix { step: k });
                }
                if p2 > p1 {
                    self.swap_cols(k, i2);
                    self.u[i2] = self.l[k];
                    self.compute_l(k..n);
                } else if i1 > k {
                    self.swap_rows(k, i1);
                    self.compute_u();
                }
                u_ready = true;
            }
        }
        let d = self.l[k];
        if d == T::zero() {
            return Err(Error::SingularMatrix { step: k });
        }
        if !u_ready {
            self.compute_u();
        }
        self.compute_l_head();
        self.eliminate(d);
        Ok(())
    }

    fn eliminate(&mut self, d: T) {
        let (n, k, r) = (self.n, self.k, self.r);

        // condition bookkeeping: column k of U^{-1} is (-l[0..k], 1) / d
        let ad = d.modulus();
        let head = self.l[..k]
            .iter()
            .fold(T::Real::zero(), |acc, v| acc + v.modulus());
        self.inv_norm = Float::max(self.inv_norm, (head + T::Real::one()) / ad);
        self.colsum[k] += ad;
        for j in k + 1..n {
            self.colsum[j] += self.u[j].modulus();
        }

        self.l[k] = -T::one();
        let inv_d = T::one() / d;

        for q in 0..r {
            let col = &mut self.g[q * n..(q + 1) * n];
            let gk = col[k] * inv_d;
            col[k] = T::zero();
            for (gi, li) in col.iter_mut().zip(&self.l) {
                *gi -= *li * gk;
            }
        }
        for c in 0..self.d {
            let col = &mut self.b[c * n..(c + 1) * n];
            let f = col[k] * inv_d;
            col[k] = T::zero();
            for (bi, li) in col.iter_mut().zip(&self.l) {
                *bi -= *li * f;
            }
        }
        for q in 0..r {
            let col = &mut self.hc[q * n..(q + 1) * n];
            let hk = col[k] * inv_d;
            let (_, tail) = col.split_at_mut(k + 1);
            for (hj, uj) in tail.iter_mut().zip(&self.u[k + 1..n]) {
                *hj -= hk * *uj;
            }
        }

        if let Some(plan) = &self.gather {
            let (a, w) = (plan.alpha[k], plan.omega[k]);
            if k < w {
                for q in k - a..w - a {
                    self.hc[q * n + k] = T::zero();
                }
                for q in k - a..w - a {
                    let j = a + 1 + q;
                    let coef = self.u[j] * inv_d;
                    for i in a..=k {
                        let li = self.l[i];
                        self.hc[q * n + i] -= coef * li;
                    }
                }
            }
        }

        self.kn[k] = self.s[k];
        self.k += 1;
        self.record_growth();
    }

    /// Runs the remaining steps and assembles the report.
    pub fn run(mut self) -> Result<SolveReport<T>> {
        while !self.is_done() {
            self.step()?;
        }
        Ok(self.finish())
    }

    fn finish(self) -> SolveReport<T> {
        let (n, d) = (self.n, self.d);
        let mut x = Array2::<T>::zeros((n, d));
        for c in 0..d {
            for k in 0..n {
                x[[self.col_perm[k], c]] = self.b[c * n + k];
            }
        }
        let unorm = self
            .colsum
            .iter()
            .copied()
            .fold(T::Real::zero(), Float::max);
        let rcond = if n == 0 {
            T::Real::one()
        } else {
            let prod = unorm * self.inv_norm;
            if prod.is_finite() && prod > T::Real::zero() {
                Float::min(T::Real::one(), T::Real::one() / prod)
            } else {
                T::Real::zero()
            }
        };
        SolveReport {
            x,
            rcond_u: rcond,
            ill_conditioned: rcond < T::Real::epsilon(),
            row_perm: self.row_perm,
            col_perm: self.col_perm,
            growth: self.growth,
            gu_skipped_refreshes: self.gu_skipped,
            phi: None,
        }
    }
}

/// Solves `C X = B`.
pub fn clsolve<T: Scalar>(
    repr: &CauchyLike<T>,
    b: &Array2<T>,
    pivot: PivotStrategy,
) -> Result<SolveReport<T>> {
    clsolve_with(repr, b, &SolveOptions::new(pivot))
}

/// Solves `C X = B` with explicit path and diagnostics options.
pub fn clsolve_with<T: Scalar>(
    repr: &CauchyLike<T>,
    b: &Array2<T>,
    opts: &SolveOptions,
) -> Result<SolveReport<T>> {
    SchurState::new(repr, b, opts)?.run()
}

/// Knots and generators of a Schur complement.
pub type Quadruple<T> = (Vec<T>, Vec<T>, Array2<T>, Array2<T>);

/// Generators of the order-`p` Schur complement `A22 - A21 A11^{-1} A12` of
/// the `m x n` Cauchy-like matrix `(t, s, G, H)`, without pivoting.
pub fn gsa_schur_complement<T: Scalar>(
    t: &[T],
    s: &[T],
    g: &Array2<T>,
    h: &Array2<T>,
    p: usize,
) -> Result<Quadruple<T>> {
    let (m, n, r) = (t.len(), s.len(), g.ncols());
    if g.nrows() != m || h.nrows() != n || h.ncols() != r {
        return Err(Error::DimensionMismatch(format!(
            "G is {}x{} and H is {}x{} for {m} left and {n} right knots",
            g.nrows(),
            g.ncols(),
            h.nrows(),
            h.ncols()
        )));
    }
    if p >= m.min(n) {
        return Err(Error::InvalidArgument(format!(
            "p = {p} must be smaller than min(m, n) = {}",
            m.min(n)
        )));
    }
    let s_index = exact_index(s);
    if let Some((i, j)) = t
        .iter()
        .enumerate()
        .find_map(|(i, ti)| s_index.get(&ti.exact_key()).map(|js| (i, js[0])))
    {
        return Err(Error::NonReconstructable { i, j });
    }
    let mut g = g.clone();
    let mut hc = h.mapv(|v| v.conj());
    let mut l = vec![T::zero(); m];
    let mut u = vec![T::zero(); n];
    for k in 0..p {
        for i in k..m {
            let mut acc = T::zero();
            for q in 0..r {
                acc += g[[i, q]] * hc[[k, q]];
            }
            l[i] = acc / (t[i] - s[k]);
        }
        let d = l[k];
        if d == T::zero() {
            return Err(Error::SingularLeadingMinor { step: k });
        }
        for j in k + 1..n {
            let mut acc = T::zero();
            for q in 0..r {
                acc += g[[k, q]] * hc[[j, q]];
            }
            u[j] = acc / (t[k] - s[j]);
        }
        for q in 0..r {
            let gk = g[[k, q]] / d;
            for i in k + 1..m {
                let li = l[i];
                g[[i, q]] -= li * gk;
            }
            let hk = hc[[k, q]] / d;
            for j in k + 1..n {
                let uj = u[j];
                hc[[j, q]] -= hk * uj;
            }
        }
    }
    Ok((
        t[p..].to_vec(),
        s[p..].to_vec(),
        g.slice(ndarray::s![p.., ..]).to_owned(),
        hc.slice(ndarray::s![p.., ..]).mapv(|v| v.conj()),
    ))
}

/// Representation of `C^*`.
pub fn adjoint_repr<T: Scalar>(repr: &CauchyLike<T>) -> CauchyLike<T> {
    repr.adjoint()
}

/// Representation of `C^{-1}`: knots `(s, t)` and generators solving
/// `C G~ = -G` and `C^* H~ = H`, so that `D_s C^{-1} - C^{-1} D_t = G~ H~^*`.
pub fn inverse_generators<T: Scalar>(
    repr: &CauchyLike<T>,
    pivot: PivotStrategy,
) -> Result<CauchyLike<T>> {
    let gl = clsolve(repr, &repr.g().mapv(|v| -v), pivot)?.x;
    let hr = clsolve(&repr.adjoint(), repr.h(), pivot)?.x;
    CauchyLike::new(repr.s().to_vec(), repr.t().to_vec(), gl, hr)
}
