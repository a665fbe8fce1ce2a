//! Trajectory export to CSV and SVG through the library API.
//!
//! Walks three t-stripes of one instance, colors each trajectory by the
//! length of its cycle in the stripe permutation, and overlays the census
//! collisions as X marks (hover a mark for its (s, t) estimate).
//!
//! Run with: cargo run --example track_export

use eigenflow::collisions::{grid_search, GridConfig};
use eigenflow::curves::CurveKind;
use eigenflow::io;
use eigenflow::model::{EnsembleKind, InitKind, ModelSpec};
use eigenflow::plot::{render_tracks_svg, Mark, StripePlot};
use eigenflow::stats::cycle_coloring;
use eigenflow::tracking::{start_state, walk_edge, WalkOptions, WalkStats};

fn main() -> eigenflow::Result<()> {
    let spec = ModelSpec {
        n: 6,
        ensemble: EnsembleKind::ComplexGaussian,
        curve: CurveKind::Circle,
        seed: 3,
        init: InitKind::Plain,
    };
    let base = spec.base_matrix()?;
    let walk = WalkOptions::for_dimension(spec.n);
    let grid = GridConfig {
        m: 8,
        ..GridConfig::default()
    };

    let report = grid_search(&spec, &base, &grid, &walk, 1)?;
    let marks: Vec<Mark> = report
        .records
        .iter()
        .map(|rec| Mark {
            re: rec.re,
            im: rec.im,
            label: format!("t={:.5} s={:.5} pair ({}, {})", rec.t, rec.s, rec.i, rec.j),
        })
        .collect();

    let start = start_state(&spec, &base, &walk)?;
    let mut stats = WalkStats::default();
    let mut state = start.state;
    let mut bundles = Vec::new();
    for s in [0.3, 0.55, 0.8] {
        let steps = ((s - state.s).abs() * walk.steps_per_unit as f64).ceil() as usize;
        state = walk_edge(&spec, &base, &state, (s, 0.0), steps.max(1), &walk, &mut stats)?.end;
        let stripe = walk_edge(
            &spec,
            &base,
            &state,
            (s, 1.0),
            walk.steps_per_unit,
            &walk,
            &mut stats,
        )?;
        let sigma = state.cumulative.inverse().compose(&stripe.end.cumulative);
        bundles.push((s, stripe.trace, cycle_coloring(&sigma)));
    }

    let stripes: Vec<StripePlot> = bundles
        .iter()
        .map(|(s, trace, ranks)| StripePlot {
            s: *s,
            trace,
            ranks,
            max_rank: ranks.iter().copied().max().unwrap_or(1),
        })
        .collect();
    let svg = render_tracks_svg(&stripes, &marks, "three stripes, n = 6");

    let dir = std::env::temp_dir();
    let svg_path = dir.join("eigenflow_tracks.svg");
    std::fs::write(&svg_path, &svg).expect("write svg");

    let rows: Vec<(f64, Vec<eigenflow::tracking::TracePoint>)> = bundles
        .iter()
        .map(|(s, trace, _)| (*s, trace.clone()))
        .collect();
    let csv_path = dir.join("eigenflow_tracks.csv");
    std::fs::write(&csv_path, io::tracks_to_csv(&rows)).expect("write csv");

    println!("census found {} collisions", report.total_localized);
    println!("wrote {}", svg_path.display());
    println!("wrote {}", csv_path.display());
    Ok(())
}
