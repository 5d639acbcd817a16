//! JSON problem and result files. Complex numbers are `[re, im]` pairs,
//! matrices are arrays of rows.

use cauchylike::{
    CauchyLike, SolveReport, Toeplitz, ToeplitzHankel, ToeplitzHankelLike, ToeplitzLike,
    Vandermonde, VandermondeLike,
};
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::instance::Instance;
use crate::rng::GeneratorInfo;

pub type Cx = [f64; 2];

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "structure", content = "payload", rename_all = "snake_case")]
pub enum Structure {
    CauchyLike {
        t: Vec<Cx>,
        s: Vec<Cx>,
        g: Vec<Vec<Cx>>,
        h: Vec<Vec<Cx>>,
    },
    Toeplitz {
        col: Vec<Cx>,
        row: Vec<Cx>,
    },
    ToeplitzLike {
        g: Vec<Vec<Cx>>,
        h: Vec<Vec<Cx>>,
        xi: Cx,
        eta: Cx,
    },
    ToeplitzHankel {
        t: Vec<Cx>,
        h: Vec<Cx>,
    },
    ToeplitzHankelLike {
        g: Vec<Vec<Cx>>,
        h: Vec<Vec<Cx>>,
    },
    Vandermonde {
        w: Vec<Cx>,
    },
    VandermondeLike {
        w: Vec<Cx>,
        phi: Cx,
        g: Vec<Vec<Cx>>,
        h: Vec<Vec<Cx>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorInfo>,
    #[serde(flatten)]
    pub structure: Structure,
    pub rhs: Vec<Vec<Cx>>,
    pub piv: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gu_period: Option<usize>,
    /// Vandermonde displacement parameter; chosen automatically when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collapse_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Permutations {
    pub row: Vec<usize>,
    pub col: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub version: String,
    pub solution: Vec<Vec<Cx>>,
    pub rcond_u: f64,
    pub ill_conditioned: bool,
    pub permutations: Permutations,
    pub wall_time_seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Cx>,
    pub gu_skipped_refreshes: usize,
}

impl ResultFile {
    pub fn from_report(rep: &SolveReport<Complex64>, seconds: f64) -> Self {
        ResultFile {
            version: VERSION.into(),
            solution: from_matrix(&rep.x),
            rcond_u: rep.rcond_u,
            ill_conditioned: rep.ill_conditioned,
            permutations: Permutations {
                row: rep.row_perm.clone(),
                col: rep.col_perm.clone(),
            },
            wall_time_seconds: seconds,
            phi: rep.phi.map(from_c),
            gu_skipped_refreshes: rep.gu_skipped_refreshes,
        }
    }

    pub fn solution_matrix(&self) -> Array2<Complex64> {
        let rows = self.solution.len();
        let cols = self.solution.first().map_or(0, Vec::len);
        Array2::from_shape_fn((rows, cols), |(i, j)| to_c(self.solution[i][j]))
    }
}

/// Malformed input; the message names the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn to_c(z: Cx) -> Complex64 {
    Complex64::new(z[0], z[1])
}

pub fn from_c(z: Complex64) -> Cx {
    [z.re, z.im]
}

pub fn from_vec(v: &[Complex64]) -> Vec<Cx> {
    v.iter().copied().map(from_c).collect()
}

pub fn from_matrix(a: &Array2<Complex64>) -> Vec<Vec<Cx>> {
    a.rows()
        .into_iter()
        .map(|r| r.iter().copied().map(from_c).collect())
        .collect()
}

fn vector(field: &str, v: &[Cx]) -> Result<Vec<Complex64>, InputError> {
    if let Some(i) = v
        .iter()
        .position(|z| !z[0].is_finite() || !z[1].is_finite())
    {
        return Err(InputError(format!("{field}[{i}]: non-finite value")));
    }
    Ok(v.iter().copied().map(to_c).collect())
}

fn matrix(field: &str, rows: &[Vec<Cx>]) -> Result<Array2<Complex64>, InputError> {
    let cols = rows.first().map_or(0, Vec::len);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(InputError(format!(
                "{field}: row {i} has {} entries, row 0 has {cols}",
                r.len()
            )));
        }
        vector(&format!("{field}[{i}]"), r)?;
    }
    Ok(Array2::from_shape_fn((rows.len(), cols), |(i, j)| {
        to_c(rows[i][j])
    }))
}

fn expect_rows(field: &str, a: &Array2<Complex64>, n: usize) -> Result<(), InputError> {
    if a.nrows() != n {
        return Err(InputError(format!(
            "{field}: expected {n} rows, found {}",
            a.nrows()
        )));
    }
    Ok(())
}

fn generators(
    g: &[Vec<Cx>],
    h: &[Vec<Cx>],
    n: usize,
) -> Result<(Array2<Complex64>, Array2<Complex64>), InputError> {
    let g = matrix("payload.g", g)?;
    let h = matrix("payload.h", h)?;
    expect_rows("payload.g", &g, n)?;
    expect_rows("payload.h", &h, n)?;
    if h.ncols() != g.ncols() {
        return Err(InputError(format!(
            "payload.h: expected {} columns (as payload.g), found {}",
            g.ncols(),
            h.ncols()
        )));
    }
    if n > 0 && g.ncols() == 0 {
        return Err(InputError("payload.g: needs at least one column".into()));
    }
    Ok((g, h))
}

fn lib_err(field: &str, e: cauchylike::Error) -> InputError {
    InputError(format!("{field}: {e}"))
}

impl Structure {
    pub fn tag(&self) -> &'static str {
        match self {
            Structure::CauchyLike { .. } => "cauchy_like",
            Structure::Toeplitz { .. } => "toeplitz",
            Structure::ToeplitzLike { .. } => "toeplitz_like",
            Structure::ToeplitzHankel { .. } => "toeplitz_hankel",
            Structure::ToeplitzHankelLike { .. } => "toeplitz_hankel_like",
            Structure::Vandermonde { .. } => "vandermonde",
            Structure::VandermondeLike { .. } => "vandermonde_like",
        }
    }

    /// Checks shapes and finiteness and builds the library representation.
    pub fn to_instance(&self) -> Result<Instance, InputError> {
        Ok(match self {
            Structure::CauchyLike { t, s, g, h } => {
                let t = vector("payload.t", t)?;
                let s = vector("payload.s", s)?;
                if s.len() != t.len() {
                    return Err(InputError(format!(
                        "payload.s: expected {} knots (as payload.t), found {}",
                        t.len(),
                        s.len()
                    )));
                }
                let (g, h) = generators(g, h, t.len())?;
                Instance::CauchyLike(
                    CauchyLike::new(t, s, g, h).map_err(|e| lib_err("payload", e))?,
                )
            }
            Structure::Toeplitz { col, row } => {
                let col = vector("payload.col", col)?;
                let row = vector("payload.row", row)?;
                if row.len() != col.len() {
                    return Err(InputError(format!(
                        "payload.row: expected {} entries (as payload.col), found {}",
                        col.len(),
                        row.len()
                    )));
                }
                Instance::Toeplitz(Toeplitz::new(col, row).map_err(|e| lib_err("payload", e))?)
            }
            Structure::ToeplitzLike { g, h, xi, eta } => {
                let (g, h) = generators(g, h, g.len())?;
                let xi = vector("payload.xi", &[*xi])?[0];
                let eta = vector("payload.eta", &[*eta])?[0];
                Instance::ToeplitzLike(
                    ToeplitzLike::new(g, h, xi, eta).map_err(|e| lib_err("payload", e))?,
                )
            }
            Structure::ToeplitzHankel { t, h } => {
                let t = vector("payload.t", t)?;
                let h = vector("payload.h", h)?;
                if t.len() % 2 == 0 || h.len() != t.len() {
                    return Err(InputError(format!(
                        "payload.t, payload.h: need equal odd lengths 2n-1, found {} and {}",
                        t.len(),
                        h.len()
                    )));
                }
                Instance::ToeplitzHankel(
                    ToeplitzHankel::new(t, h).map_err(|e| lib_err("payload", e))?,
                )
            }
            Structure::ToeplitzHankelLike { g, h } => {
                let (g, h) = generators(g, h, g.len())?;
                Instance::ToeplitzHankelLike(
                    ToeplitzHankelLike::new(g, h).map_err(|e| lib_err("payload", e))?,
                )
            }
            Structure::Vandermonde { w } => {
                let w = vector("payload.w", w)?;
                Instance::Vandermonde(Vandermonde::new(w).map_err(|e| lib_err("payload", e))?)
            }
            Structure::VandermondeLike { w, phi, g, h } => {
                let w = vector("payload.w", w)?;
                let phi = vector("payload.phi", &[*phi])?[0];
                let (g, h) = generators(g, h, w.len())?;
                Instance::VandermondeLike(
                    VandermondeLike::new(w, phi, g, h).map_err(|e| lib_err("payload", e))?,
                )
            }
        })
    }

    pub fn from_instance(inst: &Instance) -> Self {
        match inst {
            Instance::CauchyLike(c) => Structure::CauchyLike {
                t: from_vec(c.t()),
                s: from_vec(c.s()),
                g: from_matrix(c.g()),
                h: from_matrix(c.h()),
            },
            Instance::Toeplitz(t) => Structure::Toeplitz {
                col: from_vec(t.col()),
                row: from_vec(t.row()),
            },
            Instance::ToeplitzLike(t) => Structure::ToeplitzLike {
                g: from_matrix(t.g()),
                h: from_matrix(t.h()),
                xi: from_c(t.xi()),
                eta: from_c(t.eta()),
            },
            Instance::ToeplitzHankel(k) => Structure::ToeplitzHankel {
                t: from_vec(k.t()),
                h: from_vec(k.h()),
            },
            Instance::ToeplitzHankelLike(k) => Structure::ToeplitzHankelLike {
                g: from_matrix(k.g()),
                h: from_matrix(k.h()),
            },
            Instance::Vandermonde(v) => Structure::Vandermonde {
                w: from_vec(v.nodes()),
            },
            Instance::VandermondeLike(v) => Structure::VandermondeLike {
                w: from_vec(v.nodes()),
                phi: from_c(v.phi()),
                g: from_matrix(v.g()),
                h: from_matrix(v.h()),
            },
        }
    }
}

impl ProblemFile {
    pub fn new(inst: &Instance, rhs: &Array2<Complex64>, piv: i64) -> Self {
        ProblemFile {
            version: VERSION.into(),
            generator: None,
            structure: Structure::from_instance(inst),
            rhs: from_matrix(rhs),
            piv,
            gu_period: None,
            phi: None,
            collapse_tol: None,
            seed: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError(format!("malformed problem file: {e}")))
    }

    /// The representation and right-hand side, after all shape checks.
    pub fn load(&self) -> Result<(Instance, Array2<Complex64>), InputError> {
        if self.version.is_empty() {
            return Err(InputError("version: must not be empty".into()));
        }
        let inst = self.structure.to_instance()?;
        let rhs = matrix("rhs", &self.rhs)?;
        let n = inst.n();
        if rhs.nrows() != n {
            return Err(InputError(format!(
                "rhs: expected {n} rows, found {}",
                rhs.nrows()
            )));
        }
        if let Some(phi) = self.phi {
            vector("phi", &[phi])?;
        }
        if let Some(tol) = self.collapse_tol {
            if !tol.is_finite() || tol < 0.0 {
                return Err(InputError("collapse_tol: must be finite and >= 0".into()));
            }
        }
        if self.gu_period == Some(0) {
            return Err(InputError("gu_period: must be >= 1".into()));
        }
        Ok((inst, rhs))
    }
}
