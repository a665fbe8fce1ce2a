//! Acceptance gate. One test per headline claim, one pass/fail line each.
//!
//! These are end-to-end statistical and structural checks at desk scale; the
//! whole file takes a few minutes. Run with
//!
//!     cargo test --test acceptance -- --nocapture
//!
//! Each test prints `[PASS]`/`[FAIL] <criterion>: <detail>` before asserting,
//! so a red run still reports every criterion it reached.

use eigenflow::collisions::{classify, grid_search, GridConfig, SquareClass};
use eigenflow::curves::{curve_point, frac, geometry, polyline, CurveKind};
use eigenflow::matrix::ComplexMatrix;
use eigenflow::model::{
    assemble, interpolation_weights, sample_haar_unitary, EnsembleKind, InitKind, ModelSpec,
};
use eigenflow::permutation::Permutation;
use eigenflow::stats::{run_trials, TrialSummary};
use eigenflow::tracking::{
    greedy_match, greedy_match_pruned, start_state, walk_edge, MatchResult,
    NeighborPruning, WalkOptions, WalkStats,
};
use num_complex::Complex64;

fn report(name: &str, pass: bool, detail: &str) {
    println!("[{}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{name}: {detail}");
}

fn spec(n: usize, curve: CurveKind, ensemble: EnsembleKind, init: InitKind, seed: u64) -> ModelSpec {
    ModelSpec {
        n,
        ensemble,
        curve,
        seed,
        init,
    }
}

fn circle_spec(n: usize, seed: u64) -> ModelSpec {
    spec(n, CurveKind::Circle, EnsembleKind::ComplexGaussian, InitKind::Plain, seed)
}

fn counts(template: &ModelSpec, seeds: &[u64], grid: &GridConfig) -> Vec<usize> {
    let walk = WalkOptions::for_dimension(template.n);
    let summaries = run_trials(template, seeds, grid, &walk, 1);
    for s in &summaries {
        assert!(s.error.is_none(), "seed {} failed: {:?}", s.seed, s.error);
    }
    summaries.iter().map(|s| s.collision_count).collect()
}

fn mean(values: &[usize]) -> f64 {
    values.iter().sum::<usize>() as f64 / values.len() as f64
}

fn variance(values: &[usize]) -> f64 {
    let m = mean(values);
    values.iter().map(|&v| (v as f64 - m).powi(2)).sum::<f64>() / values.len() as f64
}

// A small deterministic generator for the property checks, independent of
// the library's own seeding helpers.
struct Mix(u64);

impl Mix {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

#[test]
fn golden_count_circle_n10() {
    let seeds: Vec<u64> = (0..10).collect();
    let mut all = Vec::new();
    for m in [6, 8, 10] {
        let grid = GridConfig { m, ..GridConfig::default() };
        let c = counts(&circle_spec(10, 0), &seeds, &grid);
        all.push((m, c));
    }
    let pass = all.iter().all(|(_, c)| c.iter().all(|&v| v == 90));
    let detail: Vec<String> = all
        .iter()
        .map(|(m, c)| {
            format!(
                "m={m}: {}/{} runs at 90",
                c.iter().filter(|&&v| v == 90).count(),
                c.len()
            )
        })
        .collect();
    report(
        "golden count n=10 circle = 90",
        pass,
        &format!("{} over seeds 0..10", detail.join(", ")),
    );
}

#[test]
fn quadratic_law_n5_n15() {
    let seeds: Vec<u64> = (0..5).collect();
    let grid = GridConfig { m: 6, ..GridConfig::default() };
    let c5 = counts(&circle_spec(5, 0), &seeds, &grid);
    let c15 = counts(&circle_spec(15, 0), &seeds, &grid);
    let pass = c5.iter().all(|&v| v == 20) && c15.iter().all(|&v| v == 210);
    report(
        "quadratic law n(n-1) at n=5 and n=15",
        pass,
        &format!("n=5 counts {c5:?} (want 20), n=15 counts {c15:?} (want 210)"),
    );
}

#[test]
fn coarse_grid_undercount_m5() {
    // Seed window chosen to contain a same-pair double (seed 114), the case
    // the paper reports as "missed 2 collisions".
    let seeds: Vec<u64> = (100..150).collect();
    let walk = WalkOptions::for_dimension(10);

    let blind = GridConfig {
        m: 5,
        subdivision_depth: 0,
        suspicion_gap_factor: 0.0,
        ..GridConfig::default()
    };
    let coarse: Vec<TrialSummary> = run_trials(&circle_spec(10, 0), &seeds, &blind, &walk, 1);
    assert!(coarse.iter().all(|s| s.error.is_none()));
    let coarse_counts: Vec<usize> = coarse.iter().map(|s| s.lower_bound).collect();
    let in_band = coarse_counts.iter().all(|&v| v == 88 || v == 90);
    let misses = coarse_counts.iter().filter(|&&v| v == 88).count();

    let rescue = GridConfig { m: 5, ..GridConfig::default() };
    let restored: Vec<TrialSummary> = run_trials(&circle_spec(10, 0), &seeds, &rescue, &walk, 1);
    assert!(restored.iter().all(|s| s.error.is_none()));
    let all_at_90 = restored.iter().all(|s| s.lower_bound == 90);
    // The missed cases must not just recover the bound: the hidden double has
    // to be localized outright.
    let missed_localized = coarse
        .iter()
        .filter(|s| s.lower_bound == 88)
        .all(|miss| {
            restored
                .iter()
                .find(|s| s.seed == miss.seed)
                .is_some_and(|s| s.collision_count == 90)
        });

    let pass = in_band && all_at_90 && missed_localized && misses >= 1;
    report(
        "coarse m=5 counts in {88,90}, subdivision restores 90",
        pass,
        &format!(
            "coarse: {} at 90, {misses} at 88, all in band: {in_band}; \
             with subdivision: {}/{} at 90, missed cases fully localized: {missed_localized}",
            coarse_counts.iter().filter(|&&v| v == 90).count(),
            restored.iter().filter(|s| s.lower_bound == 90).count(),
            restored.len()
        ),
    );
}

#[test]
fn crossing_means_n11() {
    let seeds: Vec<u64> = (0..30).collect();
    let grid = GridConfig { m: 6, ..GridConfig::default() };
    let cg = counts(
        &spec(11, CurveKind::Crossing, EnsembleKind::ComplexGaussian, InitKind::Plain, 0),
        &seeds,
        &grid,
    );
    let sec = counts(
        &spec(11, CurveKind::Crossing, EnsembleKind::ComplexGaussian, InitKind::Sectors, 0),
        &seeds,
        &grid,
    );
    let (mc, ms) = (mean(&cg), mean(&sec));
    let pass = (124.0..=144.0).contains(&mc) && (115.0..=135.0).contains(&ms) && mc > ms;
    report(
        "crossing n=11 means: plain in [124,144], sectors in [115,135], plain > sectors",
        pass,
        &format!("plain mean {mc:.2}, sectors mean {ms:.2}, 30 seeds each"),
    );
}

#[test]
fn circuit_ordering_n10() {
    let seeds: Vec<u64> = (0..30).collect();
    let grid = GridConfig { m: 6, ..GridConfig::default() };
    let cg = counts(
        &spec(10, CurveKind::Circuit, EnsembleKind::ComplexGaussian, InitKind::Plain, 0),
        &seeds,
        &grid,
    );
    let me = counts(
        &spec(10, CurveKind::Circuit, EnsembleKind::ComplexGaussian, InitKind::Meander, 0),
        &seeds,
        &grid,
    );
    let (mc, mm, var) = (mean(&cg), mean(&me), variance(&cg));
    let drop = mc - mm;
    let pass = var > 0.0 && mc > 90.0 && (2.0..=8.0).contains(&drop);
    report(
        "circuit n=10: variance > 0, mean > 90, meander mean = plain - 5 within 3",
        pass,
        &format!("plain mean {mc:.2} var {var:.2}, meander mean {mm:.2}, drop {drop:.2}"),
    );
}

#[test]
fn degenerate_start_detection() {
    let walk = WalkOptions::default();
    let n = 10;
    let model = circle_spec(n, 0);

    // Exact repeated eigenvalue, put in general position by a Haar rotation
    // (normal matrix, so the computed spectrum keeps the degeneracy to
    // machine precision).
    let mut entries = vec![
        Complex64::new(0.41, 0.38),
        Complex64::new(0.41, 0.38),
        Complex64::new(-0.52, 0.11),
        Complex64::new(-0.13, -0.64),
        Complex64::new(0.07, 0.72),
        Complex64::new(0.66, -0.21),
        Complex64::new(-0.35, -0.33),
        Complex64::new(0.18, 0.02),
        Complex64::new(-0.72, 0.47),
        Complex64::new(0.29, -0.55),
    ];
    let v = sample_haar_unitary(n, 77).unwrap();
    let degenerate = v
        .mul(&ComplexMatrix::diagonal(&entries))
        .mul(&v.adjoint());
    let flagged = start_state(&model, &degenerate, &walk).unwrap();

    // Same spectrum with the duplicate separated well beyond the threshold.
    entries[1] = Complex64::new(0.41 + 1e-4, 0.38);
    let split = v.mul(&ComplexMatrix::diagonal(&entries)).mul(&v.adjoint());
    let unflagged = start_state(&model, &split, &walk).unwrap();

    // Informational: degenerate starts in a traceless Bernoulli seed block
    // (the flagged count is PRNG-dependent; only the mechanism is asserted).
    let mut census_flagged = 0;
    for seed in 1000..1100 {
        let spec = spec(
            n,
            CurveKind::Circle,
            EnsembleKind::TracelessBernoulli,
            InitKind::Plain,
            seed,
        );
        let base = spec.base_matrix().unwrap();
        if start_state(&spec, &base, &walk).unwrap().degenerate {
            census_flagged += 1;
        }
    }

    let pass = flagged.degenerate
        && flagged.s_start == walk.start_offset
        && !unflagged.degenerate
        && unflagged.s_start == 0.0;
    report(
        "degenerate starts flagged, clean starts not",
        pass,
        &format!(
            "repeated eigenvalue: flagged={} s_start={}; split by 1e-4: flagged={}; \
             traceless Bernoulli seeds 1000..1100: {census_flagged}/100 flagged (informational)",
            flagged.degenerate, flagged.s_start, unflagged.degenerate
        ),
    );
}

// Brute-force oracle for n = 2: the discriminant of the characteristic
// polynomial vanishes exactly at the collisions. disc = (a-d)^2 + 4bc has a
// closed form from the four entries, so it needs no eigensolver and shares
// no code path with the tracker.
struct DiscOracle {
    spec: ModelSpec,
    base: ComplexMatrix,
}

impl DiscOracle {
    fn disc(&self, s: f64, t: f64) -> f64 {
        let w = interpolation_weights(s).unwrap();
        let g0 = curve_point(self.spec.curve, frac(t));
        let g1 = curve_point(self.spec.curve, frac(t) + 0.5);
        let a = w.alpha * self.base.get(0, 0) + w.beta * g0;
        let b = w.alpha * self.base.get(0, 1);
        let c = w.alpha * self.base.get(1, 0);
        let d = w.alpha * self.base.get(1, 1) + w.beta * g1;
        ((a - d) * (a - d) + 4.0 * b * c).norm()
    }

    /// Shrinking 3x3 stencil descent from (s, t).
    fn refine(&self, mut s: f64, mut t: f64, mut h: f64) -> (f64, f64, f64) {
        let mut best = self.disc(s, t);
        while h > 1e-14 {
            let mut moved = false;
            for ds in [-1.0, 0.0, 1.0] {
                for dt in [-1.0, 0.0, 1.0] {
                    let (cs, ct) = ((s + ds * h).clamp(0.0, 1.0), t + dt * h);
                    let v = self.disc(cs, ct);
                    if v < best {
                        best = v;
                        s = cs;
                        t = ct;
                        moved = true;
                    }
                }
            }
            if !moved {
                h *= 0.5;
            }
        }
        (s, t, best)
    }

    fn zeros(&self, k: usize) -> Vec<(f64, f64)> {
        let mut grid = vec![0.0f64; k * k];
        for i in 0..k {
            for j in 0..k {
                grid[i * k + j] = self.disc(i as f64 / k as f64, j as f64 / k as f64);
            }
        }
        let at = |i: usize, j: usize| grid[i * k + (j % k)];
        let mut zeros: Vec<(f64, f64)> = Vec::new();
        // Row i = 0 is skipped: at s = 0 the family is constant in t, so the
        // whole row is a plateau of spurious minima.
        for i in 1..k {
            for j in 0..k {
                let v = at(i, j);
                let mut is_min = true;
                for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        if di == 0 && dj == 0 {
                            continue;
                        }
                        let ii = i as i64 + di;
                        if !(0..k as i64).contains(&ii) {
                            continue;
                        }
                        if at(ii as usize, (j as i64 + dj).rem_euclid(k as i64) as usize) < v {
                            is_min = false;
                        }
                    }
                }
                if !is_min {
                    continue;
                }
                let (s, t, val) = self.refine(i as f64 / k as f64, j as f64 / k as f64, 1.0 / k as f64);
                if val < 1e-10 {
                    let t = frac(t);
                    let dup = zeros.iter().any(|&(zs, zt)| {
                        let dt = (zt - t).abs().min(1.0 - (zt - t).abs());
                        (zs - s).abs() < 1e-4 && dt < 1e-4
                    });
                    if !dup {
                        zeros.push((s, t));
                    }
                }
            }
        }
        zeros
    }
}

#[test]
fn small_instance_oracle_equivalence_n2() {
    let model = circle_spec(2, 9);
    let base = model.base_matrix().unwrap();
    let oracle = DiscOracle {
        spec: model.clone(),
        base: base.clone(),
    };
    let zeros = oracle.zeros(2000);

    let grid = GridConfig::default();
    let walk = WalkOptions::for_dimension(2);
    let report_ = grid_search(&model, &base, &grid, &walk, 1).unwrap();

    let diag = std::f64::consts::SQRT_2 / (grid.m * 2) as f64;
    let tol = 2.0 * diag;
    let matched = report_.records.iter().all(|rec| {
        zeros.iter().any(|&(zs, zt)| {
            let dt = (zt - rec.t).abs().min(1.0 - (zt - rec.t).abs());
            (zs - rec.s).abs() <= tol && dt <= tol
        })
    });
    let pass = report_.total_localized == zeros.len() && matched;
    report(
        "n=2 census equals discriminant-scan oracle",
        pass,
        &format!(
            "census {} vs oracle {} zeros at {:?}, all localized within 2 diagonals: {matched}",
            report_.total_localized,
            zeros.len(),
            zeros
                .iter()
                .map(|&(s, t)| (format!("{s:.4}"), format!("{t:.4}")))
                .collect::<Vec<_>>()
        ),
    );
}

#[test]
fn property_suite() {
    let started = std::time::Instant::now();
    let mut rng = Mix(0x5eed);

    // alpha^2 + beta^2 = 1 across the interpolation.
    let mut unitary_ok = true;
    for _ in 0..10_000 {
        let s = rng.unit();
        let w = interpolation_weights(s).unwrap();
        if (w.alpha * w.alpha + w.beta * w.beta - 1.0).abs() > 1e-12 {
            unitary_ok = false;
        }
    }

    // R(s, 0) = R(s, 1) entry for entry (bit-exact periodicity).
    let mut periodic_ok = true;
    for (n, seed) in [(3, 1u64), (7, 2), (12, 3)] {
        let model = circle_spec(n, seed);
        let base = model.base_matrix().unwrap();
        for s in [0.0, 0.37, 0.92] {
            let r0 = assemble(&model, &base, s, 0.0).unwrap();
            let r1 = assemble(&model, &base, s, 1.0).unwrap();
            if r0.max_abs_entry_diff(&r1) != 0.0 {
                periodic_ok = false;
            }
        }
    }

    // Greedy matching: identity, inversion, and a forced conflict.
    let pts = vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.2),
    ];
    let id_ok = matches!(
        greedy_match(&pts, &pts).unwrap(),
        MatchResult::Matched(ref p) if p.is_identity()
    );
    let rev: Vec<Complex64> = pts.iter().rev().copied().collect();
    let inv_ok = matches!(
        greedy_match(&pts, &rev).unwrap(),
        MatchResult::Matched(ref p) if p.image() == [2, 1, 0]
    );
    let crowd_a = vec![Complex64::new(0.0, 0.0), Complex64::new(0.1, 0.0)];
    let crowd_b = vec![Complex64::new(0.05, 0.0), Complex64::new(9.0, 0.0)];
    let conflict_ok = matches!(greedy_match(&crowd_a, &crowd_b).unwrap(), MatchResult::Conflict(_));
    let greedy_ok = id_ok && inv_ok && conflict_ok;

    // classify: lower bound equals n minus the cycle count, cycle count from
    // an independent union-find.
    let mut classify_ok = true;
    for _ in 0..10_000 {
        let n = 2 + rng.below(11);
        let mut image: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            image.swap(i, rng.below(i + 1));
        }
        let p = Permutation::from_image(image.clone()).unwrap();
        let mut root: Vec<usize> = (0..n).collect();
        fn find(root: &mut Vec<usize>, i: usize) -> usize {
            if root[i] != i {
                root[i] = find(root, root[i]);
            }
            root[i]
        }
        for (i, &j) in image.iter().enumerate() {
            let (a, b) = (find(&mut root, i), find(&mut root, j));
            root[a] = b;
        }
        let components = (0..n).filter(|&i| find(&mut root, i) == i).count();
        let expected = n - components;
        let got = match classify(&p).class {
            SquareClass::Identity => 0,
            SquareClass::DisjointTranspositions(pairs) => pairs.len(),
            SquareClass::Complex { collision_lower_bound } => collision_lower_bound,
        };
        if got != expected {
            classify_ok = false;
        }
    }

    // Curve closure, lengths, areas.
    let mut curves_ok = true;
    for (kind, len, area) in [
        (CurveKind::Circle, 2.0 * std::f64::consts::PI, std::f64::consts::PI),
        (CurveKind::Circuit, 2.0 * std::f64::consts::PI, 5.0 * std::f64::consts::PI / 9.0),
        (CurveKind::Crossing, std::f64::consts::PI + 4.0, std::f64::consts::PI / 2.0),
    ] {
        let g = geometry(kind);
        if (g.total_length - len).abs() > 1e-9 {
            curves_ok = false;
        }
        let pts = polyline(kind, 40_000);
        if (curve_point(kind, 0.0) - curve_point(kind, 1.0)).norm() > 1e-12 {
            curves_ok = false;
        }
        let mut twice_area = 0.0;
        for w in pts.windows(2) {
            twice_area += w[0].re * w[1].im - w[1].re * w[0].im;
        }
        if ((twice_area / 2.0).abs() - area).abs() > 1e-3 {
            curves_ok = false;
        }
    }

    // Delaunay-pruned matching equals brute force on perturbed clouds.
    let mut delaunay_ok = true;
    let mut stats = WalkStats::default();
    for _ in 0..10_000 {
        let n = 2 + rng.below(24);
        let a: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.unit() * 2.0 - 1.0, rng.unit() * 2.0 - 1.0))
            .collect();
        let b: Vec<Complex64> = a
            .iter()
            .map(|z| {
                z + Complex64::new(
                    (rng.unit() - 0.5) * 0.02,
                    (rng.unit() - 0.5) * 0.02,
                )
            })
            .collect();
        let brute = greedy_match(&a, &b).unwrap();
        let pruned = greedy_match_pruned(&a, &b, NeighborPruning::Delaunay, &mut stats).unwrap();
        if brute != pruned {
            delaunay_ok = false;
        }
    }

    // Census determinism under parallelism 1 vs 8.
    let model = circle_spec(3, 2);
    let base = model.base_matrix().unwrap();
    let grid = GridConfig { m: 4, ..GridConfig::default() };
    let walk = WalkOptions::for_dimension(3);
    let r1 = grid_search(&model, &base, &grid, &walk, 1).unwrap();
    let r8 = grid_search(&model, &base, &grid, &walk, 8).unwrap();
    let determinism_ok = r1.records == r8.records
        && r1.unresolved == r8.unresolved
        && r1.eigensolves == r8.eigensolves
        && r1.refinements == r8.refinements;

    let elapsed = started.elapsed().as_secs_f64();
    let pass = unitary_ok
        && periodic_ok
        && greedy_ok
        && classify_ok
        && curves_ok
        && delaunay_ok
        && determinism_ok
        && elapsed < 60.0;
    report(
        "property suite under one minute",
        pass,
        &format!(
            "weights {unitary_ok}, periodicity {periodic_ok}, greedy {greedy_ok}, \
             classify {classify_ok}, curves {curves_ok}, delaunay {delaunay_ok}, \
             determinism {determinism_ok}, {elapsed:.1}s"
        ),
    );
}

#[test]
fn stripe_grid_consistency_n5() {
    let model = circle_spec(5, 1);
    let base = model.base_matrix().unwrap();
    let walk = WalkOptions::for_dimension(5);
    let grid = GridConfig { m: 6, ..GridConfig::default() };
    let census = grid_search(&model, &base, &grid, &walk, 1).unwrap();
    assert!(census.unresolved.is_empty() && census.failures.is_empty());

    // Stripe permutations at 50 s values, all expressed in the census-origin
    // labels by carrying one tracked state up the s axis.
    let start = start_state(&model, &base, &walk).unwrap();
    let mut stats = WalkStats::default();
    let mut state = start.state.clone();
    let mut sigmas: Vec<(f64, Permutation)> = Vec::new();
    for k in 0..50 {
        let s = start.s_start.max(k as f64 / 50.0);
        let steps = (((s - state.s).abs() * walk.steps_per_unit as f64).ceil() as usize).max(1);
        state = walk_edge(&model, &base, &state, (s, 0.0), steps, &walk, &mut stats)
            .unwrap()
            .end;
        let loop_walk = walk_edge(
            &model,
            &base,
            &state,
            (s, 1.0),
            walk.steps_per_unit,
            &walk,
            &mut stats,
        )
        .unwrap();
        let sigma = state.cumulative.inverse().compose(&loop_walk.end.cumulative);
        sigmas.push((s, sigma));
    }

    // A collision estimate within tol of a stripe boundary can land its
    // permutation change on either side of that boundary, so such boundaries
    // are not usable as block separators. Merge across them and compare
    // per block: sigma_hi = sigma_lo . delta, where delta is the product of
    // the transpositions crossed (order irrelevant when the pairs are
    // disjoint).
    let tol = 0.004;
    let clean = |s: f64| census.records.iter().all(|r| (r.s - s).abs() > tol);
    let mut empty_blocks_quiet = true;
    let mut changes_match_pairs = true;
    let mut matched_blocks = 0;
    let mut lo_idx = 0;
    for hi_idx in 1..sigmas.len() {
        if hi_idx < sigmas.len() - 1 && !clean(sigmas[hi_idx].0) {
            continue;
        }
        let (s_lo, ref lo) = sigmas[lo_idx];
        let (s_hi, ref hi) = sigmas[hi_idx];
        lo_idx = hi_idx;
        let pairs: Vec<(usize, usize)> = census
            .records
            .iter()
            .filter(|r| r.s > s_lo && r.s <= s_hi)
            .map(|r| (r.i, r.j))
            .collect();
        let delta = lo.inverse().compose(hi);
        if pairs.is_empty() {
            if !delta.is_identity() {
                empty_blocks_quiet = false;
            }
            continue;
        }
        let mut touched = std::collections::HashSet::new();
        if !pairs.iter().all(|&(a, b)| touched.insert(a) && touched.insert(b)) {
            continue;
        }
        let mut product: Vec<usize> = (0..5).collect();
        for &(a, b) in &pairs {
            product.swap(a, b);
        }
        if delta.image() == product {
            matched_blocks += 1;
        } else {
            changes_match_pairs = false;
        }
    }

    let pass = empty_blocks_quiet && changes_match_pairs && matched_blocks >= 5;
    report(
        "stripe permutations change exactly at grid collisions",
        pass,
        &format!(
            "{} collisions, 50 stripes; quiet empty blocks: {empty_blocks_quiet}; \
             {matched_blocks} disjoint-pair blocks, all matching: {changes_match_pairs}",
            census.total_localized
        ),
    );
}
