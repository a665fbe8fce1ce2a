//! Collision census: loop permutations over a grid of squares covering the
//! (s, t) unit square, with classification, localization, and adaptive
//! subdivision.
//!
//! The sweep shares work between adjacent squares: every grid node is solved
//! once and every directed edge is walked once, row by row. The loop
//! permutation of a square is composed from its four edge correspondences
//! (walking an edge backwards inverts its permutation, because mutual-nearest
//! matching is symmetric), which costs roughly 8 (mN)^2 eigensolves instead
//! of the 20 (mN)^2 of four independent walks per square. The independent
//! per-square walk is kept as [`square_loop`] and must agree with the shared
//! sweep exactly.
//!
//! Eigenvalue pair labels in collision records refer to the census origin
//! (the canonical spectrum at (s_start, 0)): each node's labels are pulled
//! back along the L-shaped path that runs along the bottom row first and then
//! up the node's column. Loop permutations are inherently path dependent, so
//! some convention is required; this one is fixed and documented.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::model::{self, ModelSpec};
use crate::permutation::Permutation;
use crate::tracking::{
    eigenvalues_canonical, start_state, track_loop, walk_edge, SquareRect,
    TracePoint, TrackState, WalkOptions, WalkStats,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridConfig {
    /// Grid multiplier: the square is divided into (m n) x (m n) cells.
    pub m: usize,
    /// Solver steps per cell edge; 0 picks max(4, ceil(16 / m)).
    pub steps_per_edge: usize,
    /// Maximum recursive subdivision depth for unresolved squares.
    pub subdivision_depth: usize,
    /// Near-degeneracy trigger: a square whose boundary minimum gap is below
    /// `factor * sqrt(side)` is treated as suspicious and subdivided even if
    /// its loop permutation alone would not require it (this is what
    /// recovers collision pairs that cancel inside a single coarse cell).
    /// 0 disables the trigger.
    pub suspicion_gap_factor: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            m: 20,
            steps_per_edge: 0,
            subdivision_depth: 6,
            suspicion_gap_factor: 0.35,
        }
    }
}

impl GridConfig {
    pub fn with_multiplier(m: usize) -> Self {
        GridConfig {
            m,
            ..GridConfig::default()
        }
    }

    pub fn effective_steps_per_edge(&self) -> usize {
        if self.steps_per_edge > 0 {
            self.steps_per_edge
        } else {
            16usize.div_ceil(self.m).max(4)
        }
    }

    pub fn squares_per_side(&self, n: usize) -> usize {
        self.m * n
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.m == 0 {
            return Err(Error::config("grid multiplier m must be positive"));
        }
        let side = self.squares_per_side(n);
        if side > 4096 {
            return Err(Error::config(format!(
                "grid of {side}x{side} squares is too large (limit 4096 per side)"
            )));
        }
        if self.subdivision_depth > 12 {
            return Err(Error::config(format!(
                "subdivision_depth must be at most 12, got {}",
                self.subdivision_depth
            )));
        }
        if !self.suspicion_gap_factor.is_finite() || self.suspicion_gap_factor < 0.0 {
            return Err(Error::config(format!(
                "suspicion_gap_factor must be finite and non-negative, got {}",
                self.suspicion_gap_factor
            )));
        }
        Ok(())
    }
}

/// What a loop permutation says about the collisions inside its square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SquareClass {
    /// No braiding detected (either no collision, or an even number of
    /// collisions of the same pair cancelling out).
    Identity,
    /// Disjoint 2-cycles: generically one collision per listed pair.
    DisjointTranspositions(Vec<(usize, usize)>),
    /// Longer or entangled cycles: at least `collision_lower_bound`
    /// collisions, but the square must be subdivided to localize them.
    Complex { collision_lower_bound: usize },
}

#[derive(Clone, Debug)]
pub struct LoopPermutation {
    pub sigma: Permutation,
    pub cycles: Vec<Vec<usize>>,
    pub class: SquareClass,
}

/// Classifies a loop permutation by its cycle structure. The lower bound for
/// a cycle of length L is L - 1 (a cycle of length L needs at least L - 1
/// transpositions), summed over all cycles.
pub fn classify(sigma: &Permutation) -> LoopPermutation {
    let cycles = sigma.cycles();
    let nontrivial: Vec<&Vec<usize>> = cycles.iter().filter(|c| c.len() > 1).collect();
    let class = if nontrivial.is_empty() {
        SquareClass::Identity
    } else if nontrivial.iter().all(|c| c.len() == 2) {
        SquareClass::DisjointTranspositions(
            nontrivial
                .iter()
                .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
                .collect(),
        )
    } else {
        SquareClass::Complex {
            collision_lower_bound: nontrivial.iter().map(|c| c.len() - 1).sum(),
        }
    };
    LoopPermutation {
        sigma: sigma.clone(),
        cycles,
        class,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectionMethod {
    /// Localized from the gap minima on the four sides of a grid square.
    SideMinima,
    /// Localized inside a recursively subdivided square.
    Subdivision,
}

impl DetectionMethod {
    pub fn name(self) -> &'static str {
        match self {
            DetectionMethod::SideMinima => "side_minima",
            DetectionMethod::Subdivision => "subdivision",
        }
    }
}

impl std::fmt::Display for DetectionMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DetectionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "side_minima" => Ok(DetectionMethod::SideMinima),
            "subdivision" => Ok(DetectionMethod::Subdivision),
            other => Err(Error::parse(format!("unknown detection method '{other}'"))),
        }
    }
}

/// One localized collision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollisionRecord {
    pub s: f64,
    pub t: f64,
    pub re: f64,
    pub im: f64,
    /// Colliding pair in census-origin labels, i < j.
    pub i: usize,
    pub j: usize,
    /// Top-level grid square (column, row) the collision was found in.
    pub square: (usize, usize),
    pub method: DetectionMethod,
    /// Eigenvalue gap of the pair at the estimated collision point,
    /// recomputed with a fresh eigensolve.
    pub residual_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnresolvedSquare {
    pub square: (usize, usize),
    pub lower_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SquareFailure {
    pub square: (usize, usize),
    pub error: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CollisionReport {
    pub spec: ModelSpec,
    pub grid: GridConfig,
    pub walk: WalkOptions,
    pub s_start: f64,
    pub degenerate_start: bool,
    /// Localized collisions, sorted by (s, t, pair), adjacent-square
    /// duplicates removed.
    pub records: Vec<CollisionRecord>,
    pub unresolved: Vec<UnresolvedSquare>,
    pub failures: Vec<SquareFailure>,
    pub total_localized: usize,
    /// total_localized plus the lower bounds of unresolved squares.
    pub total_lower_bound: usize,
    pub eigensolves: u64,
    pub refinements: u64,
    /// Wall-clock milliseconds; excluded from determinism comparisons.
    pub wall_time_ms: f64,
}

/// Loop permutation of one square, from the shared-edge sweep.
#[derive(Clone, Debug)]
pub struct SquareLoop {
    pub square: (usize, usize),
    pub rect: SquareRect,
    pub sigma: Permutation,
}

// Internal sweep machinery.

struct SweepCtx<'a> {
    spec: &'a ModelSpec,
    base: &'a ComplexMatrix,
    grid: &'a GridConfig,
    walk: &'a WalkOptions,
    census: bool,
}

#[derive(Clone, Debug)]
struct EdgeInfo {
    phi: Permutation,
    trace: Vec<TracePoint>,
    min_gap: f64,
    end_canonical: Vec<Complex64>,
}

type EdgeOutcome = std::result::Result<EdgeInfo, String>;

#[derive(Default)]
struct SweepOutput {
    loops: Vec<SquareLoop>,
    records: Vec<CollisionRecord>,
    unresolved: Vec<UnresolvedSquare>,
    failures: Vec<SquareFailure>,
    stats: WalkStats,
}

impl SweepOutput {
    fn absorb(&mut self, other: SweepOutput) {
        self.loops.extend(other.loops);
        self.records.extend(other.records);
        self.unresolved.extend(other.unresolved);
        self.failures.extend(other.failures);
        self.stats.absorb(&other.stats);
    }
}

fn canonical_of(state: &TrackState) -> Vec<Complex64> {
    let mut canon = vec![Complex64::new(0.0, 0.0); state.values.len()];
    for i in 0..state.values.len() {
        canon[state.cumulative.apply(i)] = state.values[i];
    }
    canon
}

impl SweepCtx<'_> {
    fn node_state(&self, s: f64, t: f64, values: &[Complex64]) -> TrackState {
        TrackState {
            s,
            t,
            values: values.to_vec(),
            cumulative: Permutation::identity(values.len()),
        }
    }

    fn solve_node(&self, s: f64, t: f64) -> Result<(Vec<Complex64>, WalkStats)> {
        let m = model::assemble(self.spec, self.base, s, t)?;
        let vals = eigenvalues_canonical(&m)?;
        Ok((
            vals,
            WalkStats {
                eigensolves: 1,
                ..WalkStats::default()
            },
        ))
    }

    fn walk(&self, from: (f64, f64), values: &[Complex64], to: (f64, f64)) -> (EdgeOutcome, WalkStats) {
        let start = self.node_state(from.0, from.1, values);
        let mut stats = WalkStats::default();
        let steps = self.grid.effective_steps_per_edge();
        match walk_edge(self.spec, self.base, &start, to, steps, self.walk, &mut stats) {
            Ok(w) => (
                Ok(EdgeInfo {
                    phi: w.end.cumulative.clone(),
                    min_gap: w.min_gap,
                    end_canonical: canonical_of(&w.end),
                    trace: w.trace,
                }),
                stats,
            ),
            Err(e) => (Err(e.to_string()), stats),
        }
    }

    /// Sweeps the region spanned by the node coordinate lists. The corner
    /// spectrum (canonical at (s_nodes[0], t_nodes[0])) must be supplied;
    /// `glob_corner` maps its positions to census-origin labels. `square_id`
    /// assigns top-level square coordinates to each cell of this region.
    fn sweep(
        &self,
        s_nodes: &[f64],
        t_nodes: &[f64],
        corner_values: &[Complex64],
        glob_corner: &Permutation,
        square_id: &(dyn Fn(usize, usize) -> (usize, usize) + Sync),
        method: DetectionMethod,
        depth: usize,
        transposition_suspicion: bool,
        out: &mut SweepOutput,
    ) {
        let cols = s_nodes.len();
        let rows = t_nodes.len();
        let t0 = t_nodes[0];

        // Bottom row of nodes.
        let mut nodes: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
        nodes.push(corner_values.to_vec());
        let solved: Vec<Result<(Vec<Complex64>, WalkStats)>> = (1..cols)
            .into_par_iter()
            .map(|i| self.solve_node(s_nodes[i], t0))
            .collect();
        for r in solved {
            match r {
                Ok((vals, st)) => {
                    out.stats.absorb(&st);
                    nodes.push(vals);
                }
                Err(e) => {
                    // A failed node poisons the whole region; report every
                    // square of the region as failed and bail out.
                    for j in 0..rows - 1 {
                        for i in 0..cols - 1 {
                            out.failures.push(SquareFailure {
                                square: square_id(i, j),
                                error: e.to_string(),
                            });
                        }
                    }
                    return;
                }
            }
        }

        // Bottom row of horizontal edges.
        let mut h_edges: Vec<EdgeOutcome> = {
            let results: Vec<(EdgeOutcome, WalkStats)> = (0..cols - 1)
                .into_par_iter()
                .map(|i| self.walk((s_nodes[i], t0), &nodes[i], (s_nodes[i + 1], t0)))
                .collect();
            results
                .into_iter()
                .map(|(e, st)| {
                    out.stats.absorb(&st);
                    e
                })
                .collect()
        };

        // Census-origin labels along the bottom row.
        let mut glob: Vec<Permutation> = Vec::with_capacity(cols);
        glob.push(glob_corner.clone());
        for i in 0..cols - 1 {
            let next = match &h_edges[i] {
                Ok(info) => glob[i].compose(&info.phi.inverse()),
                Err(_) => glob[i].clone(),
            };
            glob.push(next);
        }

        for j in 0..rows - 1 {
            let t_lo = t_nodes[j];
            let t_hi = t_nodes[j + 1];

            // Vertical edges out of row j.
            let v_edges: Vec<EdgeOutcome> = {
                let results: Vec<(EdgeOutcome, WalkStats)> = (0..cols)
                    .into_par_iter()
                    .map(|i| self.walk((s_nodes[i], t_lo), &nodes[i], (s_nodes[i], t_hi)))
                    .collect();
                results
                    .into_iter()
                    .map(|(e, st)| {
                        out.stats.absorb(&st);
                        e
                    })
                    .collect()
            };

            // Top row of nodes: recovered from the vertical walks, resolved
            // freshly where a walk failed.
            let mut top_nodes: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
            for i in 0..cols {
                match &v_edges[i] {
                    Ok(info) => top_nodes.push(info.end_canonical.clone()),
                    Err(_) => match self.solve_node(s_nodes[i], t_hi) {
                        Ok((vals, st)) => {
                            out.stats.absorb(&st);
                            top_nodes.push(vals);
                        }
                        Err(e) => {
                            for jj in j..rows - 1 {
                                for ii in 0..cols - 1 {
                                    out.failures.push(SquareFailure {
                                        square: square_id(ii, jj),
                                        error: e.to_string(),
                                    });
                                }
                            }
                            return;
                        }
                    },
                }
            }

            // Top row of horizontal edges.
            let h_top: Vec<EdgeOutcome> = {
                let results: Vec<(EdgeOutcome, WalkStats)> = (0..cols - 1)
                    .into_par_iter()
                    .map(|i| self.walk((s_nodes[i], t_hi), &top_nodes[i], (s_nodes[i + 1], t_hi)))
                    .collect();
                results
                    .into_iter()
                    .map(|(e, st)| {
                        out.stats.absorb(&st);
                        e
                    })
                    .collect()
            };

            // Process the squares of this row.
            let row_outputs: Vec<SweepOutput> = (0..cols - 1)
                .into_par_iter()
                .map(|i| {
                    let mut cell = SweepOutput::default();
                    let rect = SquareRect {
                        s0: s_nodes[i],
                        s1: s_nodes[i + 1],
                        t0: t_lo,
                        t1: t_hi,
                    };
                    self.process_square(
                        square_id(i, j),
                        rect,
                        [&h_edges[i], &v_edges[i + 1], &h_top[i], &v_edges[i]],
                        &nodes[i],
                        &glob[i],
                        method,
                        depth,
                        transposition_suspicion,
                        &mut cell,
                    );
                    cell
                })
                .collect();
            for cell in row_outputs {
                out.absorb(cell);
            }

            // Roll the window up one row.
            for i in 0..cols {
                if let Ok(info) = &v_edges[i] {
                    glob[i] = glob[i].compose(&info.phi.inverse());
                }
            }
            nodes = top_nodes;
            h_edges = h_top;
        }
    }

    /// Classifies one square from its four edges (bottom, right, top, left)
    /// and localizes or subdivides as needed.
    #[allow(clippy::too_many_arguments)]
    fn process_square(
        &self,
        id: (usize, usize),
        rect: SquareRect,
        edges: [&EdgeOutcome; 4],
        corner_values: &[Complex64],
        glob_corner: &Permutation,
        method: DetectionMethod,
        depth: usize,
        transposition_suspicion: bool,
        out: &mut SweepOutput,
    ) {
        let [bottom, right, top, left] = edges;
        let (bottom, right, top, left) = match (bottom, right, top, left) {
            (Ok(b), Ok(r), Ok(t), Ok(l)) => (b, r, t, l),
            _ => {
                let error = [bottom, right, top, left]
                    .iter()
                    .find_map(|e| e.as_ref().err())
                    .cloned()
                    .unwrap_or_default();
                out.failures.push(SquareFailure { square: id, error });
                return;
            }
        };

        let sigma = left
            .phi
            .inverse()
            .compose(&top.phi.inverse().compose(&right.phi.compose(&bottom.phi)));
        out.loops.push(SquareLoop {
            square: id,
            rect,
            sigma: sigma.clone(),
        });
        if !self.census {
            return;
        }

        let classified = classify(&sigma);
        let side = (rect.s1 - rect.s0).max(rect.t1 - rect.t0);
        let boundary_gap = bottom
            .min_gap
            .min(right.min_gap)
            .min(top.min_gap)
            .min(left.min_gap);
        let suspicious = self.grid.suspicion_gap_factor > 0.0
            && boundary_gap < self.grid.suspicion_gap_factor * side.sqrt();

        match &classified.class {
            SquareClass::Identity => {
                if suspicious && depth > 0 {
                    self.subdivide(id, rect, corner_values, glob_corner, depth, false, out);
                }
            }
            SquareClass::DisjointTranspositions(pairs) => {
                if suspicious && transposition_suspicion && depth > 0 {
                    self.subdivide(id, rect, corner_values, glob_corner, depth, false, out);
                } else {
                    for &(p, q) in pairs {
                        match self.localize_pair(
                            id,
                            rect,
                            (p, q),
                            [bottom, right, top, left],
                            glob_corner,
                            method,
                            out,
                        ) {
                            Ok(record) => out.records.push(record),
                            Err(e) => out.failures.push(SquareFailure {
                                square: id,
                                error: e.to_string(),
                            }),
                        }
                    }
                }
            }
            SquareClass::Complex {
                collision_lower_bound,
            } => {
                if depth > 0 {
                    self.subdivide(
                        id,
                        rect,
                        corner_values,
                        glob_corner,
                        depth,
                        transposition_suspicion,
                        out,
                    );
                } else {
                    out.unresolved.push(UnresolvedSquare {
                        square: id,
                        lower_bound: *collision_lower_bound,
                    });
                }
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn subdivide(
        &self,
        id: (usize, usize),
        rect: SquareRect,
        corner_values: &[Complex64],
        glob_corner: &Permutation,
        depth: usize,
        transposition_suspicion: bool,
        out: &mut SweepOutput,
    ) {
        let s_nodes = [rect.s0, (rect.s0 + rect.s1) / 2.0, rect.s1];
        let t_nodes = [rect.t0, (rect.t0 + rect.t1) / 2.0, rect.t1];
        let mut child = SweepOutput::default();
        self.sweep(
            &s_nodes,
            &t_nodes,
            corner_values,
            glob_corner,
            &|_, _| id,
            DetectionMethod::Subdivision,
            depth - 1,
            transposition_suspicion,
            &mut child,
        );
        // Child loops are internal bookkeeping, not top-level squares.
        child.loops.clear();
        out.absorb(child);
    }

    /// Localizes the collision of `pair` (corner labels) inside the square
    /// from the gap minima of the pair on the four sides.
    #[allow(clippy::too_many_arguments)]
    fn localize_pair(
        &self,
        id: (usize, usize),
        rect: SquareRect,
        pair: (usize, usize),
        edges: [&EdgeInfo; 4],
        glob_corner: &Permutation,
        method: DetectionMethod,
        out: &mut SweepOutput,
    ) -> Result<CollisionRecord> {
        let _ = rect;
        let (p, q) = pair;
        let [bottom, right, top, left] = edges;
        // Trace indices of the pair on each side: bottom and left walks start
        // at the corner itself; the right walk starts at the bottom edge's
        // endpoint; the top walk starts at the left edge's endpoint.
        let sides = [
            (bottom, (p, q)),
            (right, (bottom.phi.apply(p), bottom.phi.apply(q))),
            (top, (left.phi.apply(p), left.phi.apply(q))),
            (left, (p, q)),
        ];
        let observations: Vec<SideObservation> = sides
            .iter()
            .map(|(edge, (x, y))| observe_side(edge, *x, *y))
            .collect();

        let (s_hat, t_hat, lambda) =
            if let Some(hit) = observations.iter().find(|o| o.d_min < 1e-14) {
                (hit.at.0, hit.at.1, hit.midpoint)
            } else {
                let inv_sum: f64 = observations.iter().map(|o| 1.0 / o.d_min).sum();
                let mut s_hat = 0.0;
                let mut t_hat = 0.0;
                for o in &observations {
                    let w = (1.0 / o.d_min) / inv_sum;
                    s_hat += w * o.at.0;
                    t_hat += w * o.at.1;
                }
                let nearest = observations
                    .iter()
                    .min_by(|a, b| a.d_min.total_cmp(&b.d_min))
                    .expect("four sides");
                (s_hat, t_hat, nearest.midpoint)
            };

        // Fresh eigensolve at the estimate; the residual is the distance
        // between the two eigenvalues closest to the estimated location.
        let m = model::assemble(self.spec, self.base, s_hat, t_hat)?;
        let vals = m.eigenvalues()?;
        out.stats.eigensolves += 1;
        let mut by_dist: Vec<Complex64> = vals;
        by_dist.sort_by(|a, b| (a - lambda).norm().total_cmp(&(b - lambda).norm()));
        let residual_gap = (by_dist[0] - by_dist[1]).norm();

        let gi = glob_corner.apply(p);
        let gj = glob_corner.apply(q);
        Ok(CollisionRecord {
            s: s_hat,
            t: t_hat,
            re: lambda.re,
            im: lambda.im,
            i: gi.min(gj),
            j: gi.max(gj),
            square: id,
            method,
            residual_gap,
        })
    }
}

struct SideObservation {
    d_min: f64,
    at: (f64, f64),
    midpoint: Complex64,
}

fn observe_side(edge: &EdgeInfo, x: usize, y: usize) -> SideObservation {
    let mut best_k = 0;
    let mut best_d = f64::INFINITY;
    for (k, pt) in edge.trace.iter().enumerate() {
        let d = (pt.values[x] - pt.values[y]).norm();
        if d < best_d {
            best_d = d;
            best_k = k;
        }
    }
    let pt = &edge.trace[best_k];
    SideObservation {
        d_min: best_d,
        at: (pt.s, pt.t),
        midpoint: (pt.values[x] + pt.values[y]) / 2.0,
    }
}

/// Removes duplicate records of the same pair localized by adjacent squares
/// (estimates within 1e-6 in both coordinates), keeping the smaller residual.
fn dedup_records(records: &mut Vec<CollisionRecord>) {
    records.sort_by(|a, b| {
        (a.i, a.j)
            .cmp(&(b.i, b.j))
            .then(a.s.total_cmp(&b.s))
            .then(a.t.total_cmp(&b.t))
    });
    let mut keep: Vec<CollisionRecord> = Vec::with_capacity(records.len());
    for rec in records.drain(..) {
        if let Some(prev) = keep.last_mut() {
            if prev.i == rec.i
                && prev.j == rec.j
                && (prev.s - rec.s).abs() <= 1e-6
                && (prev.t - rec.t).abs() <= 1e-6
            {
                if rec.residual_gap < prev.residual_gap {
                    *prev = rec;
                }
                continue;
            }
        }
        keep.push(rec);
    }
    keep.sort_by(|a, b| {
        a.s.total_cmp(&b.s)
            .then(a.t.total_cmp(&b.t))
            .then((a.i, a.j).cmp(&(b.i, b.j)))
    });
    *records = keep;
}

fn node_coordinates(
    spec: &ModelSpec,
    grid: &GridConfig,
    s_start: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let k = grid.squares_per_side(spec.n);
    if s_start >= 1.0 / k as f64 {
        return Err(Error::config(format!(
            "start offset {s_start} exceeds the first grid column width {}",
            1.0 / k as f64
        )));
    }
    let mut s_nodes: Vec<f64> = Vec::with_capacity(k + 1);
    s_nodes.push(s_start);
    s_nodes.extend((1..=k).map(|i| i as f64 / k as f64));
    let t_nodes: Vec<f64> = (0..=k).map(|j| j as f64 / k as f64).collect();
    Ok((s_nodes, t_nodes))
}

fn run_sweep(
    spec: &ModelSpec,
    base: &ComplexMatrix,
    grid: &GridConfig,
    walk: &WalkOptions,
    parallelism: usize,
    census: bool,
) -> Result<(SweepOutput, f64, bool)> {
    spec.validate()?;
    grid.validate(spec.n)?;
    walk.validate()?;
    if parallelism == 0 || parallelism > 256 {
        return Err(Error::config(format!(
            "parallelism must be in 1..=256, got {parallelism}"
        )));
    }
    if base.dim() != spec.n {
        return Err(Error::config(format!(
            "base matrix dimension {} does not match spec n = {}",
            base.dim(),
            spec.n
        )));
    }
    let start = start_state(spec, base, walk)?;
    let (s_nodes, t_nodes) = node_coordinates(spec, grid, start.s_start)?;
    let ctx = SweepCtx {
        spec,
        base,
        grid,
        walk,
        census,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::config(format!("failed to build thread pool: {e}")))?;
    let origin = Permutation::identity(spec.n);
    let mut out = SweepOutput::default();
    out.stats.eigensolves += 1; // the start-state solve
    if start.degenerate {
        out.stats.eigensolves += 1; // the discarded solve at s = 0
    }
    pool.install(|| {
        ctx.sweep(
            &s_nodes,
            &t_nodes,
            &start.state.values,
            &origin,
            &|i, j| (i, j),
            DetectionMethod::SideMinima,
            grid.subdivision_depth,
            true,
            &mut out,
        )
    });
    Ok((out, start.s_start, start.degenerate))
}

/// Full collision census of the (s, t) square.
pub fn grid_search(
    spec: &ModelSpec,
    base: &ComplexMatrix,
    grid: &GridConfig,
    walk: &WalkOptions,
    parallelism: usize,
) -> Result<CollisionReport> {
    let started = std::time::Instant::now();
    let (mut out, s_start, degenerate_start) =
        run_sweep(spec, base, grid, walk, parallelism, true)?;
    dedup_records(&mut out.records);
    out.unresolved.sort_by_key(|u| u.square);
    out.failures.sort_by_key(|f| f.square);
    let total_localized = out.records.len();
    let total_lower_bound =
        total_localized + out.unresolved.iter().map(|u| u.lower_bound).sum::<usize>();
    Ok(CollisionReport {
        spec: spec.clone(),
        grid: *grid,
        walk: *walk,
        s_start,
        degenerate_start,
        records: out.records,
        unresolved: out.unresolved,
        failures: out.failures,
        total_localized,
        total_lower_bound,
        eigensolves: out.stats.eigensolves,
        refinements: out.stats.refinements,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// Loop permutations of every top-level grid square from the shared-edge
/// sweep, without localization or subdivision.
pub fn grid_loop_permutations(
    spec: &ModelSpec,
    base: &ComplexMatrix,
    grid: &GridConfig,
    walk: &WalkOptions,
    parallelism: usize,
) -> Result<Vec<SquareLoop>> {
    let (mut out, _, _) = run_sweep(spec, base, grid, walk, parallelism, false)?;
    out.loops.sort_by_key(|l| (l.square.1, l.square.0));
    Ok(out.loops)
}

/// Reference implementation: walks the boundary loop of one square starting
/// from a fresh corner state, independently of any sweep. Labels are the
/// positions in the canonical corner spectrum, identical to the labels the
/// shared sweep uses for that square.
pub fn square_loop(
    spec: &ModelSpec,
    base: &ComplexMatrix,
    rect: &SquareRect,
    steps_per_edge: usize,
    walk: &WalkOptions,
) -> Result<LoopPermutation> {
    let corner = TrackState::initial(spec, base, rect.s0, rect.t0)?;
    let mut stats = WalkStats::default();
    let (sigma, _) = track_loop(spec, base, &corner, rect, steps_per_edge, walk, &mut stats)?;
    Ok(classify(&sigma))
}
