//! Timing sweeps.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use cauchylike::oracle::{dense_solve, rel_error};
use cauchylike::SolveOptions;

use crate::instance::{Instance, Kind};
use crate::rng::Stream;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub median_seconds: f64,
    /// Relative error against the dense solution, for `n <= oracle_cap`.
    pub error: Option<f64>,
    /// `time(n) / time(previous n)`.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub kind: Kind,
    pub sizes: Vec<usize>,
    pub opts: SolveOptions,
    pub reps: usize,
    pub rank: usize,
    pub seed: u64,
    pub oracle_cap: usize,
}

pub fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

/// Median wall time of `reps` calls of `f` on a monotonic clock.
pub fn time_median<F: FnMut()>(reps: usize, mut f: F) -> f64 {
    let mut ts: Vec<f64> = (0..reps.max(1))
        .map(|_| {
            let t0 = Instant::now();
            f();
            t0.elapsed().as_secs_f64()
        })
        .collect();
    median(&mut ts)
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if cfg.sizes.is_empty() || cfg.sizes.windows(2).any(|w| w[0] >= w[1]) {
        bail!("sizes must be non-empty and strictly ascending");
    }
    if cfg.reps < 3 {
        bail!("repetitions must be at least 3");
    }
    let mut rows: Vec<BenchRow> = Vec::new();
    for &n in &cfg.sizes {
        let mut st = Stream::new(cfg.seed);
        let inst = Instance::generate(cfg.kind, n, cfg.rank, &mut st)?;
        let b = st.complex_matrix(n, 1);
        let mut last = None;
        let secs = time_median(cfg.reps, || last = Some(inst.solve(&b, &cfg.opts, None)));
        let x = last.expect("at least one repetition")?.x;
        let error = if n <= cfg.oracle_cap {
            Some(rel_error(&x, &dense_solve(&inst.dense()?, &b)?))
        } else {
            None
        };
        let ratio = rows.last().map(|p| secs / p.median_seconds);
        rows.push(BenchRow {
            n,
            median_seconds: secs,
            error,
            ratio,
        });
    }
    Ok(rows)
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| format!("{v:e}"))
}

pub fn write_csv(path: &Path, header: &str, lines: &[String]) -> Result<()> {
    let mut f =
        std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    writeln!(f, "{header}")?;
    for l in lines {
        writeln!(f, "{l}")?;
    }
    Ok(())
}

pub fn write_bench_csv(path: &Path, rows: &[BenchRow]) -> Result<()> {
    let lines: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "{},{:e},{},{}",
                r.n,
                r.median_seconds,
                opt(r.error),
                opt(r.ratio)
            )
        })
        .collect();
    write_csv(path, "n,median_seconds,error,ratio", &lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cauchylike::PivotStrategy;

    #[test]
    fn two_sizes_two_rows() {
        let cfg = BenchConfig {
            kind: Kind::Toeplitz,
            sizes: vec![64, 128],
            opts: SolveOptions::new(PivotStrategy::Partial),
            reps: 3,
            rank: 2,
            seed: 1,
            oracle_cap: 128,
        };
        let rows = run_bench(&cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows
            .iter()
            .all(|r| r.median_seconds > 0.0 && r.error.unwrap() < 1e-8));
        assert!(rows[1].ratio.is_some());
        assert!(run_bench(&BenchConfig {
            sizes: vec![128, 64],
            ..cfg.clone()
        })
        .is_err());
        assert!(run_bench(&BenchConfig { reps: 2, ..cfg }).is_err());
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
