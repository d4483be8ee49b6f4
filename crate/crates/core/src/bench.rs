//! Wall-clock scaling harness: layout time versus node count.
//!
//! Graphs are Erdős–Rényi with expected mean degree 10 from
//! [`erdos_renyi`](crate::generate::erdos_renyi). Only the layout
//! computation is timed, on a single worker, runs strictly sequential.

use std::time::Instant;

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::engine::{run_layout, Fa2Params};
use crate::error::{Error, Result};
use crate::generate::erdos_renyi;

pub const BENCH_MEAN_DEGREE: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub node_counts: Vec<usize>,
    pub iterations: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchResult {
    pub node_count: usize,
    pub iteration_count: usize,
    pub repetitions: usize,
    pub mean_seconds: f64,
    pub stddev_seconds: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
}

impl BenchResult {
    pub fn from_samples(node_count: usize, iteration_count: usize, seconds: &[f64]) -> Self {
        let (mean, sd, lo, hi) = summarize(seconds);
        Self {
            node_count,
            iteration_count,
            repetitions: seconds.len(),
            mean_seconds: mean,
            stddev_seconds: sd,
            ci95_low: lo,
            ci95_high: hi,
        }
    }
}

/// Mean, sample standard deviation and a two-sided 95% Student-t interval.
/// A single sample gives zero spread and a degenerate interval.
pub fn summarize(samples: &[f64]) -> (f64, f64, f64, f64) {
    let n = samples.len();
    assert!(n >= 1, "need at least one sample");
    let mean = samples.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0, mean, mean);
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let sd = var.sqrt();
    let t = StudentsT::new(0.0, 1.0, (n - 1) as f64)
        .expect("degrees of freedom are positive")
        .inverse_cdf(0.975);
    let half = t * sd / (n as f64).sqrt();
    (mean, sd, mean - half, mean + half)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Time one layout of an ER graph with `n` nodes.
pub fn time_layout(n: usize, iterations: usize, seed: u64) -> Result<f64> {
    let graph = erdos_renyi(n, BENCH_MEAN_DEGREE, seed);
    let params = Fa2Params {
        iterations,
        seed: Some(seed),
        plotstep: 0,
        workers: Some(1),
        ..Fa2Params::default()
    };
    let start = Instant::now();
    let run = run_layout(&graph, &params, None)?;
    let elapsed = start.elapsed().as_secs_f64();
    std::hint::black_box(run);
    Ok(elapsed)
}

/// Run every `(node count, iterations)` cell, calling `on_row` as each
/// finishes.
pub fn run_bench(
    config: &BenchConfig,
    mut on_row: impl FnMut(&BenchResult),
) -> Result<Vec<BenchResult>> {
    if config.repetitions == 0 {
        return Err(Error::InvalidParam("repetitions must be at least 1".into()));
    }
    if config.node_counts.iter().any(|&n| n < 2) {
        return Err(Error::InvalidParam("node counts must be at least 2".into()));
    }
    let mut rows = Vec::new();
    for &iterations in &config.iterations {
        for &n in &config.node_counts {
            let samples = (0..config.repetitions)
                .map(|_| time_layout(n, iterations, config.seed))
                .collect::<Result<Vec<_>>>()?;
            let row = BenchResult::from_samples(n, iterations, &samples);
            on_row(&row);
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Fitted log-log slope of mean time versus node count, per iteration
/// count.
pub fn scaling_slopes(rows: &[BenchResult]) -> Vec<(usize, Option<f64>)> {
    let mut iters: Vec<usize> = rows.iter().map(|r| r.iteration_count).collect();
    iters.dedup();
    iters.sort_unstable();
    iters.dedup();
    iters
        .into_iter()
        .map(|it| {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.iteration_count == it)
                .map(|r| (r.node_count as f64, r.mean_seconds))
                .collect();
            (it, loglog_slope(&pts))
        })
        .collect()
}

pub fn bench_csv(rows: &[BenchResult]) -> String {
    let mut out = String::from(
        "n_nodes,iterations,repetitions,mean_seconds,stddev_seconds,ci95_low,ci95_high\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.node_count,
            r.iteration_count,
            r.repetitions,
            r.mean_seconds,
            r.stddev_seconds,
            r.ci95_low,
            r.ci95_high
        ));
    }
    out
}
