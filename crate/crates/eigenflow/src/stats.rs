//! Batch trials and summary statistics.

use serde::{Deserialize, Serialize};

use crate::collisions::{grid_search, GridConfig};
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::permutation::Permutation;
use crate::tracking::WalkOptions;

/// Outcome of one seeded census. Failures are recorded, not propagated, so a
/// batch always yields one summary per requested seed, in seed order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialSummary {
    pub seed: u64,
    pub n: usize,
    pub collision_count: usize,
    pub lower_bound: usize,
    pub unresolved_squares: usize,
    pub failed_squares: usize,
    pub degenerate_start: bool,
    /// Wall-clock milliseconds; excluded from determinism comparisons.
    pub wall_time_ms: f64,
    pub error: Option<String>,
}

/// Runs the census for each seed with the template's other parameters.
pub fn run_trials(
    template: &ModelSpec,
    seeds: &[u64],
    grid: &GridConfig,
    walk: &WalkOptions,
    parallelism: usize,
) -> Vec<TrialSummary> {
    seeds
        .iter()
        .map(|&seed| {
            let spec = ModelSpec {
                seed,
                ..template.clone()
            };
            let started = std::time::Instant::now();
            let result = spec
                .base_matrix()
                .and_then(|base| grid_search(&spec, &base, grid, walk, parallelism));
            let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
            match result {
                Ok(report) => TrialSummary {
                    seed,
                    n: spec.n,
                    collision_count: report.total_localized,
                    lower_bound: report.total_lower_bound,
                    unresolved_squares: report.unresolved.len(),
                    failed_squares: report.failures.len(),
                    degenerate_start: report.degenerate_start,
                    wall_time_ms,
                    error: None,
                },
                Err(e) => TrialSummary {
                    seed,
                    n: spec.n,
                    collision_count: 0,
                    lower_bound: 0,
                    unresolved_squares: 0,
                    failed_squares: 0,
                    degenerate_start: false,
                    wall_time_ms,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_width: f64,
    /// Bin edges, length counts.len() + 1, aligned to multiples of the width.
    pub bin_edges: Vec<f64>,
    pub counts: Vec<usize>,
    pub total: usize,
    pub mean: f64,
    /// Population variance.
    pub variance: f64,
}

/// Histogram of collision counts over successful trials, with integer-aligned
/// bins. Mean and variance are computed from the raw counts, not the bins.
pub fn histogram(summaries: &[TrialSummary], bin_width: f64) -> Result<Histogram> {
    if !(bin_width > 0.0) || !bin_width.is_finite() {
        return Err(Error::config(format!(
            "histogram bin width must be positive, got {bin_width}"
        )));
    }
    let values: Vec<f64> = summaries
        .iter()
        .filter(|s| s.error.is_none())
        .map(|s| s.collision_count as f64)
        .collect();
    if values.is_empty() {
        return Err(Error::config(
            "histogram needs at least one successful trial",
        ));
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let first = (min / bin_width).floor();
    let last = (max / bin_width).floor();
    let bins = (last - first) as usize + 1;
    let bin_edges: Vec<f64> = (0..=bins)
        .map(|k| (first + k as f64) * bin_width)
        .collect();
    let mut counts = vec![0usize; bins];
    for &v in &values {
        let k = ((v / bin_width).floor() - first) as usize;
        counts[k] += 1;
    }
    let total = values.len();
    let mean = values.iter().sum::<f64>() / total as f64;
    let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / total as f64;
    Ok(Histogram {
        bin_width,
        bin_edges,
        counts,
        total,
        mean,
        variance,
    })
}

/// Color ranks for the cycles of a loop permutation: every index is ranked by
/// its cycle length among the distinct cycle lengths present, 1-based.
/// Fixed points get rank 1; the longest cycles get the highest rank.
pub fn cycle_coloring(sigma: &Permutation) -> Vec<usize> {
    let cycles = sigma.cycles();
    let mut lengths: Vec<usize> = cycles.iter().map(Vec::len).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let mut ranks = vec![0usize; sigma.n()];
    for cycle in &cycles {
        let rank = lengths.partition_point(|&l| l <= cycle.len());
        for &i in cycle {
            ranks[i] = rank;
        }
    }
    ranks
}
