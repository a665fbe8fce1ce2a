//! Continuous eigenvalue tracking along paths in the (s, t) square.
//!
//! Raw eigensolves return unordered spectra, so continuity is recovered by
//! matching: two nearby spectra are matched greedily by mutual nearest
//! neighbors, and any ambiguity triggers binary refinement of the step until
//! every eigenvalue has a unique continuation (or the refinement depth is
//! exhausted, which is reported as a tracking failure).
//!
//! Conventions used throughout:
//!
//! * Raw spectra are always sorted canonically (by real part, then imaginary
//!   part) before matching, so a solve at given (s, t) yields one
//!   well-defined list.
//! * A [`TrackState`] keeps `values[i]` = current position of the eigenvalue
//!   that started at path-origin index `i`, plus the permutation sending
//!   origin indices to positions in the latest canonical raw list. Matching
//!   an origin-ordered list against a raw list therefore yields the
//!   accumulated permutation directly.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use spade::{DelaunayTriangulation, Point2, Triangulation};

use crate::error::{Error, Result};
use crate::matrix::{canonical_sort, ComplexMatrix};
use crate::model::{self, ModelSpec};
use crate::permutation::Permutation;

/// Eigenvalues of `m` in solver order (no ordering contract).
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    m.eigenvalues()
}

/// Eigenvalues of `m` in canonical order.
pub fn eigenvalues_canonical(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let mut vals = m.eigenvalues()?;
    canonical_sort(&mut vals);
    Ok(vals)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeighborPruning {
    #[default]
    BruteForce,
    Delaunay,
}

impl fmt::Display for NeighborPruning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NeighborPruning::BruteForce => "brute_force",
            NeighborPruning::Delaunay => "delaunay",
        })
    }
}

impl FromStr for NeighborPruning {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute_force" => Ok(NeighborPruning::BruteForce),
            "delaunay" => Ok(NeighborPruning::Delaunay),
            other => Err(Error::config(format!(
                "unknown pruning mode '{other}' (expected brute_force or delaunay)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WalkOptions {
    /// Solver steps per unit of path length.
    pub steps_per_unit: usize,
    /// Maximum binary refinement depth per step before giving up.
    pub max_refinement_depth: usize,
    pub neighbor_pruning: NeighborPruning,
    /// Where to begin the s-axis when the start spectrum is degenerate.
    pub start_offset: f64,
    /// Minimum eigenvalue gap below which a start counts as degenerate.
    pub degenerate_gap: f64,
}

impl Default for WalkOptions {
    fn default() -> Self {
        WalkOptions {
            steps_per_unit: 160,
            max_refinement_depth: 40,
            neighbor_pruning: NeighborPruning::BruteForce,
            start_offset: 1e-3,
            degenerate_gap: 1e-9,
        }
    }
}

impl WalkOptions {
    /// Default resolution for dimension n: 16n steps per unit.
    pub fn for_dimension(n: usize) -> Self {
        WalkOptions {
            steps_per_unit: 16 * n.max(1),
            ..WalkOptions::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps_per_unit == 0 {
            return Err(Error::config("steps_per_unit must be positive"));
        }
        if self.max_refinement_depth == 0 || self.max_refinement_depth > 60 {
            return Err(Error::config(format!(
                "max_refinement_depth must be in 1..=60, got {}",
                self.max_refinement_depth
            )));
        }
        if !(0.0..=0.1).contains(&self.start_offset) {
            return Err(Error::config(format!(
                "start_offset must lie in [0, 0.1], got {}",
                self.start_offset
            )));
        }
        if !(self.degenerate_gap > 0.0) {
            return Err(Error::config(format!(
                "degenerate_gap must be positive, got {}",
                self.degenerate_gap
            )));
        }
        Ok(())
    }
}

/// Counters accumulated over a walk.
#[derive(Clone, Copy, Debug, Default)]
pub struct WalkStats {
    pub eigensolves: u64,
    pub refinements: u64,
    pub pruning_fallbacks: u64,
}

impl WalkStats {
    pub fn absorb(&mut self, other: &WalkStats) {
        self.eigensolves += other.eigensolves;
        self.refinements += other.refinements;
        self.pruning_fallbacks += other.pruning_fallbacks;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatchResult {
    Matched(Permutation),
    Conflict(MatchConflict),
}

/// Indices left ambiguous by mutual-nearest matching: target positions
/// claimed by several sources, and sources without a mutual partner.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MatchConflict {
    pub contested_targets: Vec<usize>,
    pub unmatched_sources: Vec<usize>,
}

fn nearest_in(from: Complex64, points: &[Complex64], candidates: Option<&[usize]>) -> usize {
    let mut best = usize::MAX;
    let mut best_d = f64::INFINITY;
    let mut consider = |j: usize| {
        let d = (points[j] - from).norm_sqr();
        if d < best_d || (d == best_d && j < best) {
            best_d = d;
            best = j;
        }
    };
    match candidates {
        Some(c) => c.iter().for_each(|&j| consider(j)),
        None => (0..points.len()).for_each(consider),
    }
    best
}

fn mutual_match(nearest_b: &[usize], nearest_a: &[usize]) -> MatchResult {
    let n = nearest_b.len();
    let mut image = vec![usize::MAX; n];
    let mut claimed = vec![0usize; n];
    for (i, &j) in nearest_b.iter().enumerate() {
        claimed[j] += 1;
        if nearest_a[j] == i {
            image[i] = j;
        }
    }
    if image.iter().all(|&j| j != usize::MAX) {
        MatchResult::Matched(Permutation::from_image(image).expect("mutual match is injective"))
    } else {
        MatchResult::Conflict(MatchConflict {
            contested_targets: (0..n).filter(|&j| claimed[j] > 1).collect(),
            unmatched_sources: (0..n).filter(|&i| image[i] == usize::MAX).collect(),
        })
    }
}

/// Greedy mutual-nearest matching between two spectra of equal size.
/// `Matched(p)` means the continuation of `a[i]` is `b[p.apply(i)]`.
/// Distance ties are broken toward the lower index on both sides.
pub fn greedy_match(a: &[Complex64], b: &[Complex64]) -> Result<MatchResult> {
    if a.len() != b.len() {
        return Err(Error::config(format!(
            "cannot match spectra of sizes {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::config("cannot match empty spectra"));
    }
    let nearest_b: Vec<usize> = a.iter().map(|&z| nearest_in(z, b, None)).collect();
    let nearest_a: Vec<usize> = b.iter().map(|&z| nearest_in(z, a, None)).collect();
    Ok(mutual_match(&nearest_b, &nearest_a))
}

/// Delaunay neighbor lists of a point set, or `None` when the set is too
/// small, contains duplicates, or is collinear (callers fall back to brute
/// force in those cases).
pub fn delaunay_neighbors(points: &[Complex64]) -> Option<Vec<Vec<usize>>> {
    if points.len() < 3 {
        return None;
    }
    let mut tri: DelaunayTriangulation<Point2<f64>> = DelaunayTriangulation::new();
    let mut handles = Vec::with_capacity(points.len());
    for z in points {
        match tri.insert(Point2::new(z.re, z.im)) {
            Ok(h) => handles.push(h),
            Err(_) => return None,
        }
    }
    if tri.num_vertices() != points.len() || tri.num_inner_faces() == 0 {
        return None;
    }
    let mut order = vec![usize::MAX; tri.num_vertices()];
    for (input_idx, h) in handles.iter().enumerate() {
        order[h.index()] = input_idx;
    }
    let neighbors = handles
        .iter()
        .map(|&h| {
            tri.vertex(h)
                .out_edges()
                .map(|e| order[e.to().fix().index()])
                .collect()
        })
        .collect();
    Some(neighbors)
}

/// Matching with optional Delaunay candidate pruning. Candidates come from
/// the Delaunay triangulation of the combined point set; the pruned proposal
/// is checked entry-by-entry against the exhaustive nearest maps and any
/// disagreement (or a degenerate triangulation) falls back to brute force,
/// so the result always equals [`greedy_match`].
pub fn greedy_match_pruned(
    a: &[Complex64],
    b: &[Complex64],
    pruning: NeighborPruning,
    stats: &mut WalkStats,
) -> Result<MatchResult> {
    if pruning == NeighborPruning::BruteForce {
        return greedy_match(a, b);
    }
    if a.len() != b.len() {
        return Err(Error::config(format!(
            "cannot match spectra of sizes {} and {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    let union: Vec<Complex64> = a.iter().chain(b.iter()).copied().collect();
    let Some(adjacency) = delaunay_neighbors(&union) else {
        stats.pruning_fallbacks += 1;
        return greedy_match(a, b);
    };
    let b_candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            adjacency[i]
                .iter()
                .filter(|&&v| v >= n)
                .map(|&v| v - n)
                .collect()
        })
        .collect();
    let a_candidates: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            adjacency[n + j]
                .iter()
                .filter(|&&v| v < n)
                .copied()
                .collect::<Vec<usize>>()
        })
        .collect();
    if b_candidates.iter().any(Vec::is_empty) || a_candidates.iter().any(Vec::is_empty) {
        stats.pruning_fallbacks += 1;
        return greedy_match(a, b);
    }
    let mut agreed = true;
    let mut nearest_b = Vec::with_capacity(n);
    for (i, &z) in a.iter().enumerate() {
        let pruned = nearest_in(z, b, Some(&b_candidates[i]));
        if pruned != nearest_in(z, b, None) {
            agreed = false;
            break;
        }
        nearest_b.push(pruned);
    }
    let mut nearest_a = Vec::with_capacity(n);
    if agreed {
        for (j, &z) in b.iter().enumerate() {
            let pruned = nearest_in(z, a, Some(&a_candidates[j]));
            if pruned != nearest_in(z, a, None) {
                agreed = false;
                break;
            }
            nearest_a.push(pruned);
        }
    }
    if !agreed {
        stats.pruning_fallbacks += 1;
        return greedy_match(a, b);
    }
    Ok(mutual_match(&nearest_b, &nearest_a))
}

/// A point along a walk with the tracked (origin-ordered) spectrum.
#[derive(Clone, Debug)]
pub struct TracePoint {
    pub s: f64,
    pub t: f64,
    pub values: Vec<Complex64>,
}

/// Tracked spectrum at a point of the square.
#[derive(Clone, Debug)]
pub struct TrackState {
    pub s: f64,
    pub t: f64,
    /// `values[i]` continues the eigenvalue that was at origin index `i`.
    pub values: Vec<Complex64>,
    /// Origin index -> position in the canonical raw solve at (s, t).
    pub cumulative: Permutation,
}

impl TrackState {
    /// Fresh state at (s, t): canonical raw spectrum, identity permutation.
    pub fn initial(spec: &ModelSpec, base: &ComplexMatrix, s: f64, t: f64) -> Result<TrackState> {
        let m = model::assemble(spec, base, s, t)?;
        let values = eigenvalues_canonical(&m)?;
        Ok(TrackState {
            s,
            t,
            cumulative: Permutation::identity(values.len()),
            values,
        })
    }

    /// Smallest pairwise distance in the spectrum.
    pub fn min_gap(&self) -> f64 {
        min_pairwise_gap(&self.values)
    }
}

pub fn min_pairwise_gap(values: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            best = best.min((values[i] - values[j]).norm());
        }
    }
    best
}

/// Start of a census walk: state at (s_start, 0), where s_start is 0 unless
/// the base spectrum is degenerate, in which case the walk begins at the
/// configured offset.
#[derive(Clone, Debug)]
pub struct StartInfo {
    pub state: TrackState,
    pub degenerate: bool,
    pub s_start: f64,
}

pub fn start_state(spec: &ModelSpec, base: &ComplexMatrix, opts: &WalkOptions) -> Result<StartInfo> {
    opts.validate()?;
    let at_zero = TrackState::initial(spec, base, 0.0, 0.0)?;
    if at_zero.min_gap() >= opts.degenerate_gap {
        return Ok(StartInfo {
            state: at_zero,
            degenerate: false,
            s_start: 0.0,
        });
    }
    let shifted = TrackState::initial(spec, base, opts.start_offset, 0.0)?;
    if shifted.min_gap() < opts.degenerate_gap {
        return Err(Error::TrackingFailure {
            s: opts.start_offset,
            t: 0.0,
            contested: Vec::new(),
        });
    }
    Ok(StartInfo {
        state: shifted,
        degenerate: true,
        s_start: opts.start_offset,
    })
}

struct WalkContext<'a> {
    spec: &'a ModelSpec,
    base: &'a ComplexMatrix,
    opts: &'a WalkOptions,
}

impl WalkContext<'_> {
    fn solve(&self, s: f64, t: f64, stats: &mut WalkStats) -> Result<Vec<Complex64>> {
        let m = model::assemble(self.spec, self.base, s, t)?;
        stats.eigensolves += 1;
        eigenvalues_canonical(&m)
    }

    /// One matching step from `values` (origin-ordered, at `from`) to the
    /// point `to`, bisecting on conflicts. Returns the new origin-ordered
    /// values and the permutation origin index -> canonical position at `to`.
    fn advance(
        &self,
        values: &[Complex64],
        from: (f64, f64),
        to: (f64, f64),
        depth: usize,
        stats: &mut WalkStats,
        trace: &mut Option<&mut Vec<TracePoint>>,
        min_gap: &mut f64,
    ) -> Result<(Vec<Complex64>, Permutation)> {
        let raw = self.solve(to.0, to.1, stats)?;
        *min_gap = min_gap.min(min_pairwise_gap(&raw));
        match greedy_match_pruned(values, &raw, self.opts.neighbor_pruning, stats)? {
            MatchResult::Matched(p) => {
                let new_values: Vec<Complex64> = (0..raw.len()).map(|i| raw[p.apply(i)]).collect();
                if let Some(sink) = trace.as_deref_mut() {
                    sink.push(TracePoint {
                        s: to.0,
                        t: to.1,
                        values: new_values.clone(),
                    });
                }
                Ok((new_values, p))
            }
            MatchResult::Conflict(c) => {
                if depth == 0 {
                    let mut contested = c.contested_targets;
                    contested.extend(c.unmatched_sources);
                    contested.sort_unstable();
                    contested.dedup();
                    return Err(Error::TrackingFailure {
                        s: to.0,
                        t: to.1,
                        contested,
                    });
                }
                stats.refinements += 1;
                let mid = ((from.0 + to.0) / 2.0, (from.1 + to.1) / 2.0);
                let (mid_values, _) =
                    self.advance(values, from, mid, depth - 1, stats, trace, min_gap)?;
                self.advance(&mid_values, mid, to, depth - 1, stats, trace, min_gap)
            }
        }
    }
}

fn require_axis_aligned(from: (f64, f64), to: (f64, f64)) -> Result<()> {
    if from.0 != to.0 && from.1 != to.1 {
        return Err(Error::config(format!(
            "track segments must be axis-aligned, got ({}, {}) -> ({}, {})",
            from.0, from.1, to.0, to.1
        )));
    }
    if !(0.0..=1.0).contains(&to.0) || !to.1.is_finite() {
        return Err(Error::config(format!(
            "segment target ({}, {}) out of range",
            to.0, to.1
        )));
    }
    Ok(())
}

/// Tracks one axis-aligned segment in a single matching step (with bisection
/// refinement on conflicts).
pub fn track_segment(
    spec: &ModelSpec,
    base: &ComplexMatrix,
    from: &TrackState,
    to_s: f64,
    to_t: f64,
    opts: &WalkOptions,
) -> Result<TrackState> {
    opts.validate()?;
    require_axis_aligned((from.s, from.t), (to_s, to_t))?;
    let ctx = WalkContext { spec, base, opts };
    let mut stats = WalkStats::default();
    let mut min_gap = f64::INFINITY;
    let (values, perm) = ctx.advance(
        &from.values,
        (from.s, from.t),
        (to_s, to_t),
        opts.max_refinement_depth,
        &mut stats,
        &mut None,
        &mut min_gap,
    )?;
    Ok(TrackState {
        s: to_s,
        t: to_t,
        values,
        cumulative: perm,
    })
}

/// One tracked edge: final state, full trace (including the start point),
/// and the smallest pairwise gap seen at any accepted solve on the edge.
#[derive(Clone, Debug)]
pub struct EdgeWalk {
    pub end: TrackState,
    pub trace: Vec<TracePoint>,
    pub min_gap: f64,
}

impl EdgeWalk {
    /// Start-canonical position -> end-canonical position, assuming the walk
    /// began at a fresh (identity) state.
    pub fn phi(&self, start: &TrackState) -> Permutation {
        self.end.cumulative.compose(&start.cumulative.inverse())
    }
}

/// Walks one axis-aligned edge in `steps` uniform solver steps.
pub fn walk_edge(
    spec: &ModelSpec,
    base: &ComplexMatrix,
    start: &TrackState,
    to: (f64, f64),
    steps: usize,
    opts: &WalkOptions,
    stats: &mut WalkStats,
) -> Result<EdgeWalk> {
    opts.validate()?;
    require_axis_aligned((start.s, start.t), to)?;
    let steps = steps.max(1);
    let ctx = WalkContext { spec, base, opts };
    let mut trace = vec![TracePoint {
        s: start.s,
        t: start.t,
        values: start.values.clone(),
    }];
    let mut min_gap = min_pairwise_gap(&start.values);
    let mut values = start.values.clone();
    let mut perm = start.cumulative.clone();
    let mut prev = (start.s, start.t);
    for k in 1..=steps {
        let f = k as f64 / steps as f64;
        let target = (
            start.s + (to.0 - start.s) * f,
            start.t + (to.1 - start.t) * f,
        );
        let mut sink = Some(&mut trace);
        let (v, p) = ctx.advance(
            &values,
            prev,
            target,
            opts.max_refinement_depth,
            stats,
            &mut sink,
            &mut min_gap,
        )?;
        values = v;
        perm = p;
        prev = target;
    }
    Ok(EdgeWalk {
        end: TrackState {
            s: to.0,
            t: to.1,
            values,
            cumulative: perm,
        },
        trace,
        min_gap,
    })
}

/// Walks a chain of axis-aligned legs, splitting each into uniform steps at
/// the configured resolution. Returns the final state.
pub fn track_path(
    spec: &ModelSpec,
    base: &ComplexMatrix,
    start: &TrackState,
    waypoints: &[(f64, f64)],
    opts: &WalkOptions,
    stats: &mut WalkStats,
) -> Result<TrackState> {
    let mut state = start.clone();
    for &to in waypoints {
        let len = (to.0 - state.s).abs() + (to.1 - state.t).abs();
        let steps = ((len * opts.steps_per_unit as f64).ceil() as usize).max(1);
        let walk = walk_edge(spec, base, &state, to, steps, opts, stats)?;
        state = walk.end;
    }
    Ok(state)
}

/// Axis-aligned rectangle in the (s, t) square.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareRect {
    pub s0: f64,
    pub s1: f64,
    pub t0: f64,
    pub t1: f64,
}

/// Walks the boundary of `rect` counterclockwise from `corner` (which must
/// sit at (s0, t0)) and returns the loop permutation σ: the walker that
/// starts at corner label `i` returns to corner label `σ(i)`. The final
/// solve at the corner is bit-identical to the initial one, so the closure
/// is exact.
pub fn track_loop(
    spec: &ModelSpec,
    base: &ComplexMatrix,
    corner: &TrackState,
    rect: &SquareRect,
    steps_per_edge: usize,
    opts: &WalkOptions,
    stats: &mut WalkStats,
) -> Result<(Permutation, TrackState)> {
    if corner.s != rect.s0 || corner.t != rect.t0 {
        return Err(Error::config(format!(
            "loop corner state at ({}, {}) does not match rect origin ({}, {})",
            corner.s, corner.t, rect.s0, rect.t0
        )));
    }
    let legs = [
        (rect.s1, rect.t0),
        (rect.s1, rect.t1),
        (rect.s0, rect.t1),
        (rect.s0, rect.t0),
    ];
    let mut state = corner.clone();
    for to in legs {
        let walk = walk_edge(spec, base, &state, to, steps_per_edge, opts, stats)?;
        state = walk.end;
    }
    let sigma = corner.cumulative.inverse().compose(&state.cumulative);
    Ok((sigma, state))
}

/// Loop permutation of the full-period t-stripe at fixed `s`, in the labels
/// of `state` (which must sit at (s, t0) for some t0). Also returns the
/// final state after the full period.
pub fn stripe_permutation_from(
    spec: &ModelSpec,
    base: &ComplexMatrix,
    state: &TrackState,
    opts: &WalkOptions,
    stats: &mut WalkStats,
) -> Result<(Permutation, TrackState)> {
    let steps = opts.steps_per_unit.max(4);
    let walk = walk_edge(
        spec,
        base,
        state,
        (state.s, state.t + 1.0),
        steps,
        opts,
        stats,
    )?;
    let sigma = state.cumulative.inverse().compose(&walk.end.cumulative);
    Ok((sigma, walk.end))
}

/// Loop permutation of the t-stripe at fixed `s`, in the labels of the
/// canonical spectrum at (s, 0).
pub fn stripe_permutation(
    spec: &ModelSpec,
    base: &ComplexMatrix,
    s: f64,
    opts: &WalkOptions,
) -> Result<Permutation> {
    opts.validate()?;
    let state = TrackState::initial(spec, base, s, 0.0)?;
    let mut stats = WalkStats::default();
    let (sigma, _) = stripe_permutation_from(spec, base, &state, opts, &mut stats)?;
    Ok(sigma)
}
