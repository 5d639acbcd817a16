//! Fast solvers for Cauchy-like linear systems and the structured systems
//! that reduce to them (Toeplitz, Toeplitz+Hankel, Vandermonde and their
//! "-like" generalizations).
//!
//! A Cauchy-like matrix `C` satisfies `D_t C - C D_s = G H^*` with `G`, `H`
//! of width `r` (the displacement rank). [`gsa::clsolve`] solves `C X = B`
//! in `O(r n^2)` time and `O((r + d) n)` memory by running the generalized
//! Schur algorithm on the augmented matrix `[C B; -I 0]`.
//!
//! ```
//! use cauchylike::{clsolve, CauchyLike, PivotStrategy};
//! use ndarray::array;
//!
//! // the 2x2 Hilbert-type matrix 1/(t_i - s_j)
//! let c = CauchyLike::cauchy(vec![1.0f64, 2.0], vec![0.0, -1.0]).unwrap();
//! let rep = clsolve(&c, &array![[1.0], [1.0]], PivotStrategy::Partial).unwrap();
//! assert!((rep.x[[0, 0]] + 2.0).abs() < 1e-13);
//! assert!((rep.x[[1, 0]] - 6.0).abs() < 1e-13);
//! ```

pub mod converters;
pub mod displacement;
pub mod error;
pub mod gsa;
pub mod oracle;
pub mod scalar;
pub mod solvers;
pub mod transforms;

pub use displacement::{
    validate_repr, CauchyLike, Diagnostics, Issue, Toeplitz, ToeplitzHankel, ToeplitzHankelLike,
    ToeplitzLike, Validate, Vandermonde, VandermondeLike,
};
pub use error::{Error, Result};
pub use gsa::{
    clsolve, clsolve_with, GrowthTrace, PivotStrategy, SolveOptions, SolvePath, SolveReport,
};
pub use scalar::{Real, Scalar};
pub use solvers::{thlsolve, thsolve, tlsolve, tsolve, vlsolve, vsolve};
pub use transforms::Phase;

pub use num_complex::{Complex32, Complex64};

pub type CauchyLike64 = CauchyLike<f64>;
pub type CauchyLike32 = CauchyLike<f32>;
pub type CauchyLikeC64 = CauchyLike<Complex64>;
pub type CauchyLikeC32 = CauchyLike<Complex32>;
pub type SolveReport64 = SolveReport<f64>;
pub type SolveReportC64 = SolveReport<Complex64>;
