//! Reproducible seed batches and the count histogram.
//!
//! Runs the census over a block of seeds and prints the collision-count
//! distribution as a terminal histogram. For the circle the distribution is
//! a spike at n(n-1); the circuit spreads it out.
//!
//! Run with: cargo run --example seed_batch

use eigenflow::collisions::GridConfig;
use eigenflow::curves::CurveKind;
use eigenflow::model::{EnsembleKind, InitKind, ModelSpec};
use eigenflow::stats::{histogram, run_trials};
use eigenflow::tracking::WalkOptions;

fn main() -> eigenflow::Result<()> {
    let spec = ModelSpec {
        n: 5,
        ensemble: EnsembleKind::ComplexGaussian,
        curve: CurveKind::Circuit,
        seed: 0,
        init: InitKind::Plain,
    };
    let grid = GridConfig {
        m: 8,
        ..GridConfig::default()
    };
    let walk = WalkOptions::for_dimension(spec.n);
    let seeds: Vec<u64> = (0..40).collect();

    let summaries = run_trials(&spec, &seeds, &grid, &walk, 1);
    let hist = histogram(&summaries, 1.0)?;

    println!(
        "{} trials, n = {}, {}: mean {:.2}, variance {:.2}",
        seeds.len(),
        spec.n,
        spec.curve,
        hist.mean,
        hist.variance
    );
    let peak = hist.counts.iter().copied().max().unwrap_or(1);
    for (k, &count) in hist.counts.iter().enumerate() {
        println!(
            "{:>5} | {:<40} {}",
            hist.bin_edges[k],
            "#".repeat(count * 40 / peak.max(1)),
            count
        );
    }

    for s in summaries.iter().filter(|s| s.error.is_some()) {
        println!("seed {} failed: {}", s.seed, s.error.as_deref().unwrap());
    }
    Ok(())
}
