//! Wall-clock scaling harness: times matcher runs on random isomorphic
//! pairs across a ladder of sizes and fits a log-log slope.

use std::fmt::Write as _;
use std::time::Instant;

use thiserror::Error;

use crate::graph::{generate_random_graph, permute, random_permutation};
use crate::matcher::{run, Mode};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum BenchError {
    #[error("samples must be positive")]
    NoSamples,
    #[error("sizes must be non-empty and strictly ascending")]
    BadSizes,
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: u32,
    pub samples: u32,
    pub median_micros: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of ln(median time) against ln(n); `None` for a
    /// single size.
    pub slope: Option<f64>,
}

/// Times faithful matcher runs on seeded G(n, p) pairs related by a random
/// relabeling. The per-size figure is the median over `samples` runs.
pub fn run_bench(sizes: &[u32], samples: u32, p: f64, seed: u64) -> Result<BenchReport, BenchError> {
    if samples == 0 {
        return Err(BenchError::NoSamples);
    }
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BenchError::BadSizes);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(BenchError::BadProbability(p));
    }

    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let mut times = Vec::with_capacity(samples as usize);
        for sample in 0..samples {
            let sample_seed = seed
                .wrapping_add(u64::from(n) << 32)
                .wrapping_add(u64::from(sample));
            let g = generate_random_graph(n, p, sample_seed).expect("p validated");
            let pi = random_permutation(&g, sample_seed ^ 0xC3C3_C3C3_C3C3_C3C3);
            let h = permute(&g, &pi).expect("random permutation is bijective");
            let start = Instant::now();
            let verdict = run(&g, &h, Mode::Faithful);
            let elapsed = start.elapsed();
            std::hint::black_box(verdict);
            times.push(elapsed.as_secs_f64() * 1e6);
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = times[times.len() / 2];
        rows.push(BenchRow {
            n,
            samples,
            median_micros: median,
        });
    }

    let slope = (rows.len() >= 2).then(|| log_log_slope(&rows));
    Ok(BenchReport { rows, slope })
}

fn log_log_slope(rows: &[BenchRow]) -> f64 {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.median_micros.max(1e-3).ln()))
        .collect();
    let k = points.len() as f64;
    let sum_x: f64 = points.iter().map(|(x, _)| x).sum();
    let sum_y: f64 = points.iter().map(|(_, y)| y).sum();
    let sum_xx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let sum_xy: f64 = points.iter().map(|(x, y)| x * y).sum();
    (k * sum_xy - sum_x * sum_y) / (k * sum_xx - sum_x * sum_x)
}

impl BenchReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{:>6} {:>8} {:>14}", "n", "samples", "median_us").unwrap();
        for row in &self.rows {
            writeln!(
                out,
                "{:>6} {:>8} {:>14.1}",
                row.n, row.samples, row.median_micros
            )
            .unwrap();
        }
        match self.slope {
            Some(slope) => writeln!(out, "log-log slope: {:.3}", slope).unwrap(),
            None => writeln!(out, "log-log slope: n/a (single size)").unwrap(),
        }
        out
    }
}
