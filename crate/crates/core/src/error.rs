use thiserror::Error;

/// Errors raised by representations, transforms, conversions and solvers.
///
/// Indices carried by variants are zero-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty vector")]
    EmptyVector,

    #[error("phase not unimodular: |phi| = {modulus}")]
    PhaseNotUnimodular { modulus: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("nonreconstructable entry ({i}, {j}): t_i = s_j")]
    NonReconstructable { i: usize, j: usize },

    #[error("singular leading minor at step {step}")]
    SingularLeadingMinor { step: usize },

    #[error("singular matrix: zero pivot at step {step}")]
    SingularMatrix { step: usize },

    #[error("pivoting incompatible with repeated knots")]
    PivotIncompatibleWithRepeatedKnots,

    #[error("repeated right knots: s[{first}] = s[{second}] (use the gathered path)")]
    RepeatedRightKnots { first: usize, second: usize },

    #[error("structurally singular: {0}")]
    StructurallySingular(String),

    #[error("node collides with phi: node {index}")]
    NodeCollision { index: usize },

    #[error("size too small for displayed formulas: n = {n}, need n >= {min}")]
    SizeTooSmall { n: usize, min: usize },

    #[error("inconsistent Toeplitz data: first column and first row disagree at (0, 0)")]
    InconsistentToeplitz,

    #[error("displacement parameters must differ (xi = eta)")]
    EqualDisplacementParameters,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// `true` for failures caused by the data being (numerically or
    /// structurally) singular, as opposed to malformed input.
    pub fn is_singularity(&self) -> bool {
        matches!(
            self,
            Error::SingularLeadingMinor { .. }
                | Error::SingularMatrix { .. }
                | Error::StructurallySingular(_)
                | Error::NonReconstructable { .. }
                | Error::NodeCollision { .. }
                | Error::RepeatedRightKnots { .. }
                | Error::PivotIncompatibleWithRepeatedKnots
        )
    }
}
