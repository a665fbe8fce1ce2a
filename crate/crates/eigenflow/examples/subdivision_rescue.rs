//! Why coarse grids undercount, and how subdivision rescues them.
//!
//! A grid square's loop permutation only sees the *net* braiding inside it.
//! When the same pair collides twice inside one square the two swaps cancel
//! and the square looks empty. With the near-degeneracy trigger the walker
//! notices the suspiciously small boundary gap, subdivides, and recovers
//! both collisions.
//!
//! This instance is a real case: at m = 5 the plain loop count comes up two
//! short. The finer default grid (m = 20) separates the pair from the start.
//!
//! Run with: cargo run --example subdivision_rescue

use eigenflow::collisions::{grid_search, DetectionMethod, GridConfig};
use eigenflow::curves::CurveKind;
use eigenflow::model::{EnsembleKind, InitKind, ModelSpec};
use eigenflow::tracking::WalkOptions;

fn main() -> eigenflow::Result<()> {
    let spec = ModelSpec {
        n: 10,
        ensemble: EnsembleKind::ComplexGaussian,
        curve: CurveKind::Circle,
        seed: 114,
        init: InitKind::Plain,
    };
    let base = spec.base_matrix()?;
    let walk = WalkOptions::for_dimension(spec.n);
    let expected = spec.n * (spec.n - 1);

    let blind = GridConfig {
        m: 5,
        subdivision_depth: 0,
        suspicion_gap_factor: 0.0,
        ..GridConfig::default()
    };
    let report = grid_search(&spec, &base, &blind, &walk, 1)?;
    println!(
        "m = 5, no subdivision: loop count {} of {expected}",
        report.total_lower_bound
    );

    let rescue = GridConfig {
        m: 5,
        ..GridConfig::default()
    };
    let report = grid_search(&spec, &base, &rescue, &walk, 1)?;
    let subdivided = report
        .records
        .iter()
        .filter(|r| r.method == DetectionMethod::Subdivision)
        .count();
    println!(
        "m = 5, with subdivision: {} localized ({} via subdivision)",
        report.total_localized, subdivided
    );

    let fine = GridConfig::default();
    let report = grid_search(&spec, &base, &fine, &walk, 1)?;
    println!(
        "m = {}, default grid: {} localized",
        fine.m, report.total_localized
    );
    Ok(())
}
