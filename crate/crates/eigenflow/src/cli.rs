//! Command-line interface.
//!
//! Three subcommands:
//!
//! * `collide` runs the grid census for one instance and writes the records
//!   CSV plus a full JSON report.
//! * `tracks` exports eigenvalue trajectories (CSV and SVG) for a window of
//!   s values, with census collisions drawn as marks.
//! * `stats` runs the census over a batch of seeds and writes per-trial
//!   JSONL summaries plus a count histogram (CSV and SVG).
//!
//! Flags mirror the JSON run configuration; `--config file.json` loads a
//! base configuration and explicit flags override it.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::collisions::grid_search;
use crate::curves::CurveKind;
use crate::error::Result;
use crate::io::{self, RunConfig};
use crate::model::{EnsembleKind, InitKind};
use crate::plot::{self, Mark, StripePlot};
use crate::stats::{cycle_coloring, histogram, run_trials};
use crate::tracking::{
    start_state, walk_edge, NeighborPruning, TracePoint, WalkStats,
};

#[derive(Parser, Debug)]
#[command(
    name = "eigenflow",
    version,
    about = "Eigenvalue trajectory tracking and collision counting for an \
             interpolated random matrix family"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count and localize eigenvalue collisions over the (s, t) square.
    Collide(CollideArgs),
    /// Export eigenvalue trajectories with collision marks.
    Tracks(TracksArgs),
    /// Batch collision counts over a seed set, with a histogram.
    Stats(StatsArgs),
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// JSON run configuration; explicit flags override its fields.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Matrix dimension.
    #[arg(long)]
    n: Option<usize>,

    /// Base ensemble: complex_gaussian, symmetric_bernoulli,
    /// traceless_complex_gaussian or traceless_bernoulli.
    #[arg(long, value_parser = EnsembleKind::from_str)]
    ensemble: Option<EnsembleKind>,

    /// Eigenvalue carrier curve: circle, circuit or crossing.
    #[arg(long, value_parser = CurveKind::from_str)]
    curve: Option<CurveKind>,

    /// Initial condition: plain, meander or sectors.
    #[arg(long, value_parser = InitKind::from_str)]
    init: Option<InitKind>,

    /// Seed for the base matrix (and rotated initial, when used).
    #[arg(long)]
    seed: Option<u64>,

    /// Grid multiplier: the square is cut into (m n) x (m n) cells.
    #[arg(long)]
    m: Option<usize>,

    /// Solver steps per cell edge (0 = auto).
    #[arg(long)]
    steps_per_edge: Option<usize>,

    /// Maximum recursive subdivision depth for unresolved cells.
    #[arg(long)]
    subdivision_depth: Option<usize>,

    /// Near-degeneracy subdivision trigger factor (0 disables).
    #[arg(long)]
    suspicion_gap_factor: Option<f64>,

    /// Tracking steps per unit path length (0 = auto 16 n).
    #[arg(long)]
    steps_per_unit: Option<usize>,

    /// Maximum bisection depth when a tracking step is contested.
    #[arg(long)]
    max_refinement_depth: Option<usize>,

    /// Nearest-neighbor strategy during matching: brute_force or delaunay.
    #[arg(long, value_parser = NeighborPruning::from_str)]
    neighbor_pruning: Option<NeighborPruning>,

    /// s offset used when the start spectrum is degenerate.
    #[arg(long)]
    start_offset: Option<f64>,

    /// Gap below which the start spectrum counts as degenerate.
    #[arg(long)]
    degenerate_gap: Option<f64>,

    /// Output directory (default: $EIGENFLOW_OUT_DIR or ./eigenflow-out).
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,

    /// Also write the full JSON report to this path.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,

    /// Worker threads (results are identical for any value).
    #[arg(long)]
    parallelism: Option<usize>,
}

impl CommonArgs {
    fn to_config(&self) -> Result<RunConfig> {
        let mut config = match &self.config {
            Some(path) => RunConfig::from_json_file(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($field:ident) => {
                if let Some(v) = self.$field.clone() {
                    config.$field = v;
                }
            };
        }
        macro_rules! set_opt {
            ($field:ident) => {
                if let Some(v) = self.$field.clone() {
                    config.$field = Some(v);
                }
            };
        }
        set!(n);
        set!(ensemble);
        set!(curve);
        set!(init);
        set!(seed);
        set!(m);
        set!(steps_per_edge);
        set!(subdivision_depth);
        set!(suspicion_gap_factor);
        set!(steps_per_unit);
        set!(max_refinement_depth);
        set!(neighbor_pruning);
        set!(start_offset);
        set!(degenerate_gap);
        set!(parallelism);
        set_opt!(out_dir);
        set_opt!(report);
        Ok(config)
    }
}

#[derive(Args, Debug)]
struct CollideArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct TracksArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// s values to trace, as start:end:step.
    #[arg(long, value_name = "START:END:STEP")]
    s_window: Option<String>,

    /// Trajectory samples across the t period (0 = auto 16 n).
    #[arg(long)]
    t_steps: Option<usize>,

    /// Write one SVG per s value instead of a combined plot.
    #[arg(long)]
    frames: bool,

    /// Skip the collision census (no marks on the plots).
    #[arg(long)]
    no_marks: bool,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Seed set: "a..b" (half-open) or a comma-separated list.
    #[arg(long)]
    seeds: Option<String>,

    /// Histogram bin width.
    #[arg(long, default_value_t = 1.0)]
    bin_width: f64,
}

/// Parses the process arguments, runs the selected command and returns the
/// process exit code (0 ok, 2 config/parse, 3 numerical, 4 io).
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Collide(args) => collide(args),
        Command::Tracks(args) => tracks(args),
        Command::Stats(args) => stats(args),
    }
}

fn collide(args: &CollideArgs) -> Result<()> {
    let config = args.common.to_config()?;
    let resolved = config.resolve()?;
    let base = resolved.spec.base_matrix()?;
    let report = grid_search(
        &resolved.spec,
        &base,
        &resolved.grid,
        &resolved.walk,
        resolved.parallelism,
    )?;

    let records_path = resolved.out_dir.join("records.csv");
    io::write_file(&records_path, &io::records_to_csv(&report))?;
    let report_path = resolved
        .report
        .clone()
        .unwrap_or_else(|| resolved.out_dir.join("report.json"));
    io::write_file(&report_path, &io::report_to_json(&report))?;

    println!(
        "seed {} n {} {} {} {}: {} collisions localized, lower bound {}, \
         {} unresolved, {} failed, {} eigensolves, {:.1} ms",
        report.spec.seed,
        report.spec.n,
        report.spec.ensemble,
        report.spec.curve,
        report.spec.init,
        report.total_localized,
        report.total_lower_bound,
        report.unresolved.len(),
        report.failures.len(),
        report.eigensolves,
        report.wall_time_ms
    );
    if report.degenerate_start {
        println!("degenerate start spectrum; census began at s = {}", report.s_start);
    }
    println!("wrote {}", records_path.display());
    println!("wrote {}", report_path.display());
    Ok(())
}

fn tracks(args: &TracksArgs) -> Result<()> {
    let mut config = args.common.to_config()?;
    if let Some(w) = &args.s_window {
        config.s_window = w.clone();
    }
    if let Some(t) = args.t_steps {
        config.t_steps = t;
    }
    if args.frames {
        config.frames = true;
    }
    let resolved = config.resolve()?;
    let base = resolved.spec.base_matrix()?;

    let mut marks: Vec<(f64, Mark)> = Vec::new();
    if !args.no_marks {
        let report = grid_search(
            &resolved.spec,
            &base,
            &resolved.grid,
            &resolved.walk,
            resolved.parallelism,
        )?;
        io::write_file(
            &resolved.out_dir.join("records.csv"),
            &io::records_to_csv(&report),
        )?;
        if let Some(path) = &resolved.report {
            io::write_file(path, &io::report_to_json(&report))?;
        }
        marks = report
            .records
            .iter()
            .map(|rec| {
                (
                    rec.s,
                    Mark {
                        re: rec.re,
                        im: rec.im,
                        label: format!(
                            "t={:.6} s={:.6} pair ({}, {}) gap {:.2e}",
                            rec.t, rec.s, rec.i, rec.j, rec.residual_gap
                        ),
                    },
                )
            })
            .collect();
        println!("census: {} collisions marked", marks.len());
    }

    // Walk the stripes in ascending s, carrying the tracked state so labels
    // stay consistent across stripes.
    let start = start_state(&resolved.spec, &base, &resolved.walk)?;
    if start.degenerate {
        println!("degenerate start spectrum; stripes clamp to s >= {}", start.s_start);
    }
    let mut s_values: Vec<f64> = resolved
        .s_values
        .iter()
        .map(|&s| s.max(start.s_start))
        .collect();
    s_values.dedup();

    let mut stats = WalkStats::default();
    let mut state = start.state.clone();
    let mut stripes: Vec<(f64, Vec<TracePoint>, Vec<usize>, usize)> = Vec::new();
    for &s in &s_values {
        state = {
            let walk = walk_edge(
                &resolved.spec,
                &base,
                &state,
                (s, 0.0),
                stripe_steps(&resolved.walk, (s - state.s).abs()),
                &resolved.walk,
                &mut stats,
            )?;
            walk.end
        };
        let stripe = walk_edge(
            &resolved.spec,
            &base,
            &state,
            (s, 1.0),
            resolved.t_steps,
            &resolved.walk,
            &mut stats,
        )?;
        let sigma = state
            .cumulative
            .inverse()
            .compose(&stripe.end.cumulative);
        let ranks = cycle_coloring(&sigma);
        let max_rank = ranks.iter().copied().max().unwrap_or(1);
        stripes.push((s, stripe.trace, ranks, max_rank));
    }

    let csv_rows: Vec<(f64, Vec<TracePoint>)> = stripes
        .iter()
        .map(|(s, trace, _, _)| (*s, trace.clone()))
        .collect();
    let csv_path = resolved.out_dir.join("tracks.csv");
    io::write_file(&csv_path, &io::tracks_to_csv(&csv_rows))?;
    println!("wrote {}", csv_path.display());

    if resolved.frames {
        let half_step = frame_half_step(&s_values);
        for (s, trace, ranks, max_rank) in &stripes {
            let plot_stripes = [StripePlot {
                s: *s,
                trace,
                ranks,
                max_rank: *max_rank,
            }];
            let frame_marks: Vec<&Mark> = marks
                .iter()
                .filter(|(ms, _)| (ms - s).abs() <= half_step)
                .map(|(_, m)| m)
                .collect();
            let svg = plot::render_tracks_svg(
                &plot_stripes,
                &frame_marks.iter().map(|m| clone_mark(m)).collect::<Vec<_>>(),
                &format!("eigenvalue tracks, s = {s:.4}"),
            );
            let path = resolved.out_dir.join(format!("tracks_s{s:.4}.svg"));
            io::write_file(&path, &svg)?;
            println!("wrote {}", path.display());
        }
    } else {
        let plot_stripes: Vec<StripePlot> = stripes
            .iter()
            .map(|(s, trace, ranks, max_rank)| StripePlot {
                s: *s,
                trace,
                ranks,
                max_rank: *max_rank,
            })
            .collect();
        let all_marks: Vec<Mark> = marks.iter().map(|(_, m)| clone_mark(m)).collect();
        let svg = plot::render_tracks_svg(
            &plot_stripes,
            &all_marks,
            &format!(
                "eigenvalue tracks, {} stripes in s = [{}, {}]",
                s_values.len(),
                s_values.first().copied().unwrap_or(0.0),
                s_values.last().copied().unwrap_or(0.0)
            ),
        );
        let path = resolved.out_dir.join("tracks.svg");
        io::write_file(&path, &svg)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn clone_mark(m: &Mark) -> Mark {
    Mark {
        re: m.re,
        im: m.im,
        label: m.label.clone(),
    }
}

fn stripe_steps(walk: &crate::tracking::WalkOptions, len: f64) -> usize {
    ((len * walk.steps_per_unit as f64).ceil() as usize).max(1)
}

fn frame_half_step(s_values: &[f64]) -> f64 {
    if s_values.len() < 2 {
        return 0.05;
    }
    (s_values[1] - s_values[0]) / 2.0
}

fn stats(args: &StatsArgs) -> Result<()> {
    let mut config = args.common.to_config()?;
    if let Some(seeds) = &args.seeds {
        config.seeds = Some(seeds.clone());
    }
    let seeds = config.seed_list()?;
    let resolved = config.resolve()?;

    let summaries = run_trials(
        &resolved.spec,
        &seeds,
        &resolved.grid,
        &resolved.walk,
        resolved.parallelism,
    );

    let jsonl_path = resolved.out_dir.join("summaries.jsonl");
    io::write_file(&jsonl_path, &io::summaries_to_jsonl(&summaries))?;
    println!("wrote {}", jsonl_path.display());

    let failed: Vec<&crate::stats::TrialSummary> =
        summaries.iter().filter(|s| s.error.is_some()).collect();
    for f in &failed {
        eprintln!(
            "seed {} failed: {}",
            f.seed,
            f.error.as_deref().unwrap_or("unknown")
        );
    }

    let hist = histogram(&summaries, args.bin_width)?;
    io::write_file(
        &resolved.out_dir.join("histogram.csv"),
        &io::histogram_to_csv(&hist),
    )?;
    let title = format!(
        "collision counts, n = {}, {}, {}, {} seeds",
        resolved.spec.n,
        resolved.spec.ensemble,
        resolved.spec.curve,
        seeds.len()
    );
    io::write_file(
        &resolved.out_dir.join("histogram.svg"),
        &plot::render_histogram_svg(&hist, &title),
    )?;
    println!(
        "{} trials ({} failed): mean {:.3}, variance {:.3}, min {}, max {}",
        summaries.len(),
        failed.len(),
        hist.mean,
        hist.variance,
        summaries
            .iter()
            .filter(|s| s.error.is_none())
            .map(|s| s.collision_count)
            .min()
            .map_or("-".into(), |v| v.to_string()),
        summaries
            .iter()
            .filter(|s| s.error.is_none())
            .map(|s| s.collision_count)
            .max()
            .map_or("-".into(), |v| v.to_string()),
    );
    Ok(())
}
