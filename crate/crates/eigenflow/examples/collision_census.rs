//! Full collision census of one instance.
//!
//! Builds R(s,t) = cos(sπ/2)·C + sin(sπ/2)·U(t) for a seeded complex
//! Gaussian C and the circle carrier, sweeps the (s,t) unit square with the
//! shared-edge grid walk, and prints every localized collision. For the
//! circle the count lands at exactly n(n-1): each of the n(n-1)/2 unordered
//! pairs collides twice.
//!
//! Run with: cargo run --example collision_census

use eigenflow::collisions::{grid_search, GridConfig};
use eigenflow::curves::CurveKind;
use eigenflow::model::{EnsembleKind, InitKind, ModelSpec};
use eigenflow::tracking::WalkOptions;

fn main() -> eigenflow::Result<()> {
    let spec = ModelSpec {
        n: 6,
        ensemble: EnsembleKind::ComplexGaussian,
        curve: CurveKind::Circle,
        seed: 12,
        init: InitKind::Plain,
    };
    let base = spec.base_matrix()?;
    let grid = GridConfig {
        m: 8,
        ..GridConfig::default()
    };
    let walk = WalkOptions::for_dimension(spec.n);

    let report = grid_search(&spec, &base, &grid, &walk, 1)?;

    println!(
        "n = {}, seed = {}: {} collisions (expected n(n-1) = {})",
        spec.n,
        spec.seed,
        report.total_localized,
        spec.n * (spec.n - 1)
    );
    println!(
        "{} eigensolves, {} refinements, {:.0} ms\n",
        report.eigensolves, report.refinements, report.wall_time_ms
    );

    println!("{:>10} {:>10} {:>24} {:>7} {:>12}", "s", "t", "location", "pair", "gap");
    for rec in &report.records {
        println!(
            "{:>10.6} {:>10.6} {:>11.6} {:+.6}i ({}, {}) {:>12.2e}",
            rec.s, rec.t, rec.re, rec.im, rec.i, rec.j, rec.residual_gap
        );
    }

    if !report.unresolved.is_empty() {
        println!("unresolved squares: {:?}", report.unresolved);
    }
    Ok(())
}
