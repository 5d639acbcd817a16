//! Command-line front end for the `cauchylike` solvers.
//!
//! Exit codes: 0 on success (ill-conditioning only warns on stderr), 1 when
//! the system is singular or structurally unsolvable, 2 for malformed input,
//! I/O failures and usage errors.

pub mod bench;
pub mod instance;
pub mod problem;
pub mod repro;
pub mod rng;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use cauchylike::{PivotStrategy, SolveOptions};
use clap::{Args, Parser, Subcommand};

use crate::bench::{run_bench, write_bench_csv, BenchConfig};
use crate::instance::{Instance, Kind};
use crate::problem::{to_c, InputError, ProblemFile, ResultFile};
use crate::repro::{Experiment, ReproConfig};
use crate::rng::{GeneratorInfo, Stream};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SINGULAR: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cauchylike",
    version,
    about = "Structured linear system solver"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct PivotArgs {
    /// 0 none, 1 partial, 2 Sweet-Brent, 3 Gu (K = 1), 4 Gu (K = --gu-period), 5 complete.
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..=5))]
    pub piv: Option<i64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub gu_period: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a JSON problem file and write a JSON result file.
    Solve {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        pivot: PivotArgs,
        /// Merge right knots closer than this before solving (Cauchy-like input only).
        #[arg(long)]
        collapse_tol: Option<f64>,
    },
    /// Write a random problem file.
    Gen {
        #[arg(value_enum)]
        structure: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(i64).range(0..=5))]
        piv: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time solves over ascending sizes and write a CSV.
    Bench {
        #[arg(value_enum)]
        structure: Kind,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[command(flatten)]
        pivot: PivotArgs,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2048)]
        oracle_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one of the numerical experiments and write its CSV files.
    Repro {
        #[arg(value_enum)]
        id: Experiment,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2048)]
        oracle_cap: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        gu_period: Option<u64>,
        #[arg(long)]
        collapse_tol: Option<f64>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    fn input(e: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_INPUT,
            error: e.into(),
        }
    }
}

impl From<cauchylike::Error> for Failure {
    fn from(e: cauchylike::Error) -> Self {
        let code = if e.is_singularity() {
            EXIT_SINGULAR
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            error: e.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<cauchylike::Error>() {
            Some(ce) if ce.is_singularity() => Failure {
                code: EXIT_SINGULAR,
                error: e,
            },
            _ => Failure::input(e),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::input(e)
    }
}

fn pivot(code: i64, gu_period: Option<u64>) -> Result<PivotStrategy, Failure> {
    let period = gu_period.map_or(PivotStrategy::DEFAULT_GU_PERIOD, |k| k as usize);
    Ok(PivotStrategy::from_code(code, period)?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text)
            .with_context(|| format!("writing {}", p.display()))
            .map_err(Failure::input),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_solve(
    input: &Path,
    out: Option<&Path>,
    pivot_args: &PivotArgs,
    collapse_tol: Option<f64>,
) -> Result<(), Failure> {
    let text = std::fs::read_to_string(input)
        .with_context(|| format!("reading {}", input.display()))
        .map_err(Failure::input)?;
    let file = ProblemFile::parse(&text)?;
    let (inst, rhs) = file.load()?;
    let piv = pivot(
        pivot_args.piv.unwrap_or(file.piv),
        pivot_args.gu_period.or(file.gu_period.map(|k| k as u64)),
    )?;
    let tol = collapse_tol.or(file.collapse_tol);
    if let Some(t) = tol {
        if !t.is_finite() || t < 0.0 {
            return Err(Failure::input(anyhow!(
                "collapse_tol: must be finite and >= 0"
            )));
        }
    }
    let inst = match tol {
        Some(t) => inst.collapsed(t)?,
        None => inst,
    };
    let t0 = Instant::now();
    let rep = inst.solve(&rhs, &SolveOptions::new(piv), file.phi.map(to_c))?;
    let seconds = t0.elapsed().as_secs_f64();
    if rep.ill_conditioned {
        eprintln!(
            "warning: matrix is close to singular or badly scaled (rcond_u = {:e})",
            rep.rcond_u
        );
    }
    let result = ResultFile::from_report(&rep, seconds);
    let json = serde_json::to_string_pretty(&result).map_err(Failure::input)?;
    write_output(out, &json)
}

/// The problem file `gen` writes for these parameters.
pub fn generate_problem(
    kind: Kind,
    n: usize,
    r: usize,
    d: usize,
    seed: u64,
    piv: i64,
) -> Result<ProblemFile, Failure> {
    if n == 0 || r == 0 || d == 0 {
        return Err(Failure::input(anyhow!("n, r and d must be at least 1")));
    }
    let mut st = Stream::new(seed);
    let inst = Instance::generate(kind, n, r, &mut st).map_err(Failure::input)?;
    let rhs = st.complex_matrix(n, d);
    let mut file = ProblemFile::new(&inst, &rhs, piv);
    file.generator = Some(GeneratorInfo::new(seed));
    file.seed = Some(seed);
    Ok(file)
}

pub fn cmd_gen(
    kind: Kind,
    n: usize,
    r: usize,
    d: usize,
    seed: u64,
    piv: i64,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let file = generate_problem(kind, n, r, d, seed, piv)?;
    let json = serde_json::to_string_pretty(&file).map_err(Failure::input)?;
    write_output(out, &json)
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve {
            input,
            out,
            pivot,
            collapse_tol,
        } => cmd_solve(&input, out.as_deref(), &pivot, collapse_tol),
        Command::Gen {
            structure,
            n,
            r,
            d,
            seed,
            piv,
            out,
        } => cmd_gen(structure, n, r, d, seed, piv, out.as_deref()),
        Command::Bench {
            structure,
            sizes,
            pivot: p,
            reps,
            r,
            seed,
            oracle_cap,
            out,
        } => {
            let cfg = BenchConfig {
                kind: structure,
                sizes,
                opts: SolveOptions::new(pivot(p.piv.unwrap_or(1), p.gu_period)?),
                reps,
                rank: r,
                seed,
                oracle_cap,
            };
            let rows = run_bench(&cfg)?;
            match out {
                Some(p) => write_bench_csv(&p, &rows)?,
                None => {
                    println!("n,median_seconds,error,ratio");
                    for r in rows {
                        let o = |x: Option<f64>| x.map_or_else(String::new, |v| format!("{v:e}"));
                        println!(
                            "{},{:e},{},{}",
                            r.n,
                            r.median_seconds,
                            o(r.error),
                            o(r.ratio)
                        );
                    }
                }
            }
            Ok(())
        }
        Command::Repro {
            id,
            sizes,
            seed,
            oracle_cap,
            gu_period,
            collapse_tol,
            out,
        } => {
            let cfg = ReproConfig {
                sizes,
                seed,
                oracle_cap,
                gu_period: gu_period.map_or(PivotStrategy::DEFAULT_GU_PERIOD, |k| k as usize),
                collapse_tol,
            };
            for path in repro::run(id, &cfg, &out)? {
                println!("{path}");
            }
            Ok(())
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            f.code
        }
    }
}
