//! Run configuration and file formats.
//!
//! All numeric CSV fields are written with Rust's shortest round-trip float
//! formatting, so re-serializing parsed rows reproduces the input bytes and
//! repeated runs of the same configuration produce identical files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::collisions::{
    CollisionRecord, CollisionReport, DetectionMethod, GridConfig,
};
use crate::curves::CurveKind;
use crate::error::{Error, Result};
use crate::model::{EnsembleKind, InitKind, ModelSpec};
use crate::stats::{Histogram, TrialSummary};
use crate::tracking::{NeighborPruning, TracePoint, WalkOptions};

/// Environment variable consulted for the default output directory.
pub const OUT_DIR_ENV: &str = "EIGENFLOW_OUT_DIR";

/// Flat run configuration mirroring the command-line flags. Loadable from a
/// JSON file; individual flags override file values. Zero means "auto" for
/// the resolution fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    pub ensemble: EnsembleKind,
    pub curve: CurveKind,
    pub init: InitKind,
    pub seed: u64,
    /// Seed set for batch runs: "a..b" (half-open) or comma-separated list.
    pub seeds: Option<String>,
    pub m: usize,
    /// 0 picks max(4, ceil(16/m)).
    pub steps_per_edge: usize,
    pub subdivision_depth: usize,
    pub suspicion_gap_factor: f64,
    /// 0 picks 16 n.
    pub steps_per_unit: usize,
    pub max_refinement_depth: usize,
    pub neighbor_pruning: NeighborPruning,
    pub start_offset: f64,
    pub degenerate_gap: f64,
    /// Trajectory samples per unit of t in `tracks` output; 0 picks 16 n.
    pub t_steps: usize,
    /// s values drawn by `tracks`: "start:end:step".
    pub s_window: String,
    pub out_dir: Option<PathBuf>,
    pub report: Option<PathBuf>,
    /// Write one SVG per s value instead of a combined plot.
    pub frames: bool,
    pub parallelism: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let walk = WalkOptions::default();
        let grid = GridConfig::default();
        RunConfig {
            n: 10,
            ensemble: EnsembleKind::ComplexGaussian,
            curve: CurveKind::Circle,
            init: InitKind::Plain,
            seed: 0,
            seeds: None,
            m: grid.m,
            steps_per_edge: 0,
            subdivision_depth: grid.subdivision_depth,
            suspicion_gap_factor: grid.suspicion_gap_factor,
            steps_per_unit: 0,
            max_refinement_depth: walk.max_refinement_depth,
            neighbor_pruning: walk.neighbor_pruning,
            start_offset: walk.start_offset,
            degenerate_gap: walk.degenerate_gap,
            t_steps: 0,
            s_window: "0:0.9:0.1".into(),
            out_dir: None,
            report: None,
            frames: false,
            parallelism: 1,
        }
    }
}

/// Validated, fully resolved run parameters.
#[derive(Clone, Debug)]
pub struct ResolvedConfig {
    pub spec: ModelSpec,
    pub grid: GridConfig,
    pub walk: WalkOptions,
    pub t_steps: usize,
    pub s_values: Vec<f64>,
    pub out_dir: PathBuf,
    pub report: Option<PathBuf>,
    pub frames: bool,
    pub parallelism: usize,
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<RunConfig> {
        let text = read_file(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::parse(format!("config {}: {e}", path.display())))
    }

    /// Seeds for batch runs; errors when none were configured.
    pub fn seed_list(&self) -> Result<Vec<u64>> {
        let spec = self.seeds.as_deref().ok_or_else(|| {
            Error::config("batch runs need seeds, e.g. --seeds 0..100 or --seeds 1,5,9")
        })?;
        parse_seeds(spec)
    }

    pub fn resolve(&self) -> Result<ResolvedConfig> {
        let spec = ModelSpec {
            n: self.n,
            ensemble: self.ensemble,
            curve: self.curve,
            seed: self.seed,
            init: self.init,
        };
        spec.validate()?;
        let grid = GridConfig {
            m: self.m,
            steps_per_edge: self.steps_per_edge,
            subdivision_depth: self.subdivision_depth,
            suspicion_gap_factor: self.suspicion_gap_factor,
        };
        grid.validate(spec.n)?;
        let walk = WalkOptions {
            steps_per_unit: if self.steps_per_unit == 0 {
                16 * spec.n
            } else {
                self.steps_per_unit
            },
            max_refinement_depth: self.max_refinement_depth,
            neighbor_pruning: self.neighbor_pruning,
            start_offset: self.start_offset,
            degenerate_gap: self.degenerate_gap,
        };
        walk.validate()?;
        if self.parallelism == 0 || self.parallelism > 256 {
            return Err(Error::config(format!(
                "parallelism must be in 1..=256, got {}",
                self.parallelism
            )));
        }
        let t_steps = if self.t_steps == 0 {
            16 * spec.n
        } else {
            self.t_steps
        };
        Ok(ResolvedConfig {
            s_values: parse_s_window(&self.s_window)?,
            out_dir: self.effective_out_dir(),
            report: self.report.clone(),
            frames: self.frames,
            parallelism: self.parallelism,
            spec,
            grid,
            walk,
            t_steps,
        })
    }

    pub fn effective_out_dir(&self) -> PathBuf {
        if let Some(dir) = &self.out_dir {
            return dir.clone();
        }
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir);
            }
        }
        PathBuf::from("eigenflow-out")
    }
}

/// Parses "a..b" (half-open range) or a comma-separated seed list.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u64 = lo
            .trim()
            .parse()
            .map_err(|_| Error::config(format!("bad seed range start '{lo}'")))?;
        let hi: u64 = hi
            .trim()
            .parse()
            .map_err(|_| Error::config(format!("bad seed range end '{hi}'")))?;
        if hi <= lo {
            return Err(Error::config(format!(
                "seed range {lo}..{hi} is empty (end must exceed start)"
            )));
        }
        if hi - lo > 100_000 {
            return Err(Error::config(format!(
                "seed range {lo}..{hi} has more than 100000 seeds"
            )));
        }
        return Ok((lo..hi).collect());
    }
    let seeds: Vec<u64> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::config(format!("bad seed '{part}'")))
        })
        .collect::<Result<_>>()?;
    if seeds.is_empty() {
        return Err(Error::config("empty seed list"));
    }
    Ok(seeds)
}

/// Parses "start:end:step" into the inclusive list of s values.
pub fn parse_s_window(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::config(format!(
            "s window must be start:end:step, got '{text}'"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::config(format!("bad s window component '{p}'")))
        })
        .collect::<Result<_>>()?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&end) || end < start {
        return Err(Error::config(format!(
            "s window [{start}, {end}] must satisfy 0 <= start <= end <= 1"
        )));
    }
    if !(step > 0.0) {
        return Err(Error::config(format!("s window step must be positive, got {step}")));
    }
    let count = ((end - start) / step).round() as usize;
    let mut values: Vec<f64> = (0..=count)
        .map(|k| start + k as f64 * step)
        .filter(|&s| s <= end + 1e-12)
        .collect();
    if values.is_empty() {
        values.push(start);
    }
    Ok(values)
}

// File helpers.

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| Error::io(parent.display().to_string(), e))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path.display().to_string(), e))
}

// Collision records CSV.

pub const RECORDS_CSV_HEADER: &str = "seed,n,curve,ensemble,s,t,re,im,i,j,residual_gap,method";

/// One row of the records CSV (the collision record plus the identifying
/// model fields).
#[derive(Clone, Debug, PartialEq)]
pub struct RecordRow {
    pub seed: u64,
    pub n: usize,
    pub curve: CurveKind,
    pub ensemble: EnsembleKind,
    pub s: f64,
    pub t: f64,
    pub re: f64,
    pub im: f64,
    pub i: usize,
    pub j: usize,
    pub residual_gap: f64,
    pub method: DetectionMethod,
}

impl RecordRow {
    pub fn from_report(spec: &ModelSpec, rec: &CollisionRecord) -> RecordRow {
        RecordRow {
            seed: spec.seed,
            n: spec.n,
            curve: spec.curve,
            ensemble: spec.ensemble,
            s: rec.s,
            t: rec.t,
            re: rec.re,
            im: rec.im,
            i: rec.i,
            j: rec.j,
            residual_gap: rec.residual_gap,
            method: rec.method,
        }
    }

    fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.seed,
            self.n,
            self.curve,
            self.ensemble,
            self.s,
            self.t,
            self.re,
            self.im,
            self.i,
            self.j,
            self.residual_gap,
            self.method
        )
    }
}

pub fn records_to_csv(report: &CollisionReport) -> String {
    let mut out = String::from(RECORDS_CSV_HEADER);
    out.push('\n');
    for rec in &report.records {
        out.push_str(&RecordRow::from_report(&report.spec, rec).to_csv_line());
        out.push('\n');
    }
    out
}

pub fn rows_to_csv(rows: &[RecordRow]) -> String {
    let mut out = String::from(RECORDS_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

pub fn records_from_csv(text: &str) -> Result<Vec<RecordRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == RECORDS_CSV_HEADER => {}
        other => {
            return Err(Error::parse(format!(
                "bad records CSV header: {:?}",
                other.unwrap_or("")
            )))
        }
    }
    lines
        .enumerate()
        .filter(|(_, line)| !line.is_empty())
        .map(|(k, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 12 {
                return Err(Error::parse(format!(
                    "records CSV line {}: expected 12 fields, got {}",
                    k + 2,
                    fields.len()
                )));
            }
            let bad = |what: &str| Error::parse(format!("records CSV line {}: bad {what}", k + 2));
            Ok(RecordRow {
                seed: fields[0].parse().map_err(|_| bad("seed"))?,
                n: fields[1].parse().map_err(|_| bad("n"))?,
                curve: fields[2].parse()?,
                ensemble: fields[3].parse()?,
                s: fields[4].parse().map_err(|_| bad("s"))?,
                t: fields[5].parse().map_err(|_| bad("t"))?,
                re: fields[6].parse().map_err(|_| bad("re"))?,
                im: fields[7].parse().map_err(|_| bad("im"))?,
                i: fields[8].parse().map_err(|_| bad("i"))?,
                j: fields[9].parse().map_err(|_| bad("j"))?,
                residual_gap: fields[10].parse().map_err(|_| bad("residual_gap"))?,
                method: fields[11].parse()?,
            })
        })
        .collect()
}

// Trajectory CSV.

pub const TRACKS_CSV_HEADER: &str = "s,t,index,re,im";

/// Trajectory rows for a set of fixed-s stripes: one row per eigenvalue per
/// sample point, ordered by s, then t, then eigenvalue index.
pub fn tracks_to_csv(stripes: &[(f64, Vec<TracePoint>)]) -> String {
    let mut out = String::from(TRACKS_CSV_HEADER);
    out.push('\n');
    for (s, trace) in stripes {
        for pt in trace {
            for (index, z) in pt.values.iter().enumerate() {
                out.push_str(&format!("{},{},{},{},{}\n", s, pt.t, index, z.re, z.im));
            }
        }
    }
    out
}

// Histogram CSV.

pub const HISTOGRAM_CSV_HEADER: &str = "bin_low,bin_high,count";

pub fn histogram_to_csv(hist: &Histogram) -> String {
    let mut out = String::from(HISTOGRAM_CSV_HEADER);
    out.push('\n');
    for (k, &count) in hist.counts.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            hist.bin_edges[k],
            hist.bin_edges[k + 1],
            count
        ));
    }
    out
}

// Report JSON and summaries JSONL.

pub fn report_to_json(report: &CollisionReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn report_from_json(text: &str) -> Result<CollisionReport> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("bad report JSON: {e}")))
}

pub fn summaries_to_jsonl(summaries: &[TrialSummary]) -> String {
    let mut out = String::new();
    for s in summaries {
        out.push_str(&serde_json::to_string(s).expect("summary serializes"));
        out.push('\n');
    }
    out
}

pub fn summaries_from_jsonl(text: &str) -> Result<Vec<TrialSummary>> {
    text.lines()
        .filter(|l| !l.is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::parse(format!("bad summary line: {e}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_parsing() {
        assert_eq!(parse_seeds("0..4").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_seeds("7, 9,11").unwrap(), vec![7, 9, 11]);
        assert_eq!(parse_seeds("5").unwrap(), vec![5]);
        assert!(parse_seeds("9..9").is_err());
        assert!(parse_seeds("a..b").is_err());
        assert!(parse_seeds("").is_err());
    }

    #[test]
    fn s_window_parsing() {
        let w = parse_s_window("0:0.9:0.3").unwrap();
        assert_eq!(w.len(), 4);
        assert!((w[3] - 0.9).abs() < 1e-12);
        assert_eq!(parse_s_window("0.5:0.5:0.1").unwrap(), vec![0.5]);
        assert!(parse_s_window("0:1").is_err());
        assert!(parse_s_window("0:1:0").is_err());
        assert!(parse_s_window("0.5:0.2:0.1").is_err());
    }

    #[test]
    fn records_csv_round_trip_is_byte_identical() {
        let rows = vec![
            RecordRow {
                seed: 42,
                n: 10,
                curve: CurveKind::Circle,
                ensemble: EnsembleKind::ComplexGaussian,
                s: 0.123456789012345,
                t: 0.987654321,
                re: -0.5000000000000001,
                im: 1e-17,
                i: 3,
                j: 7,
                residual_gap: 2.220446049250313e-16,
                method: DetectionMethod::SideMinima,
            },
            RecordRow {
                seed: 1005,
                n: 11,
                curve: CurveKind::Crossing,
                ensemble: EnsembleKind::TracelessBernoulli,
                s: 0.25,
                t: 0.75,
                re: 0.0,
                im: -0.0,
                i: 0,
                j: 1,
                residual_gap: 1e-9,
                method: DetectionMethod::Subdivision,
            },
        ];
        let csv = rows_to_csv(&rows);
        let parsed = records_from_csv(&csv).unwrap();
        assert_eq!(parsed, rows);
        assert_eq!(rows_to_csv(&parsed), csv);
    }

    #[test]
    fn records_csv_rejects_malformed_input() {
        assert!(records_from_csv("nope\n1,2,3\n").is_err());
        let short = format!("{RECORDS_CSV_HEADER}\n1,2,circle\n");
        assert!(records_from_csv(&short).is_err());
        let bad_method = format!(
            "{RECORDS_CSV_HEADER}\n1,4,circle,complex_gaussian,0,0,0,0,0,1,0,magic\n"
        );
        assert!(records_from_csv(&bad_method).is_err());
    }

    #[test]
    fn run_config_json_round_trip_and_unknown_fields() {
        let config = RunConfig {
            n: 7,
            seeds: Some("0..10".into()),
            m: 6,
            ..RunConfig::default()
        };
        let json = serde_json::to_string(&config).unwrap();
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, config);

        let with_typo = r#"{"n": 5, "ensembel": "complex_gaussian"}"#;
        assert!(serde_json::from_str::<RunConfig>(with_typo).is_err());

        let partial: RunConfig = serde_json::from_str(r#"{"n": 5}"#).unwrap();
        assert_eq!(partial.n, 5);
        assert_eq!(partial.m, RunConfig::default().m);
    }

    #[test]
    fn resolve_applies_auto_values() {
        let config = RunConfig {
            n: 8,
            ..RunConfig::default()
        };
        let resolved = config.resolve().unwrap();
        assert_eq!(resolved.walk.steps_per_unit, 128);
        assert_eq!(resolved.t_steps, 128);
        assert_eq!(resolved.grid.m, 20);
        assert_eq!(resolved.s_values.len(), 10);

        let bad = RunConfig {
            n: 8,
            curve: CurveKind::Crossing,
            ..RunConfig::default()
        };
        assert!(bad.resolve().is_err());
    }

    #[test]
    fn out_dir_falls_back_to_environment() {
        let config = RunConfig::default();
        // Not using the env var in tests (process global); just the explicit
        // and default paths.
        assert_eq!(
            RunConfig {
                out_dir: Some(PathBuf::from("/tmp/x")),
                ..config.clone()
            }
            .effective_out_dir(),
            PathBuf::from("/tmp/x")
        );
    }
}
