//! Closed curves in the complex plane, parametrized by arc length.
//!
//! Each curve `γ: [0, 1) -> C` is a closed chain of circular arcs and line
//! segments traversed at constant speed (total arc length per unit of the
//! parameter). Three families are supported:
//!
//! * `circle`: the unit circle, counterclockwise from 1.
//! * `circuit`: the upper unit semicircle from 1 to -1, followed by three
//!   radius-1/3 semicircles along the real axis (bulging below, above, below)
//!   returning to 1. Encloses 5/9 of the unit disc.
//! * `crossing`: a bow tie through the origin. Counterclockwise unit arc from
//!   `e^{-iπ/4}` to `e^{iπ/4}`, straight into the origin and out to
//!   `e^{i3π/4}`, counterclockwise arc to `e^{i5π/4}`, then back through the
//!   origin to the start. Both lobes are traversed counterclockwise; the two
//!   origin passages sit exactly half the curve apart, which is why even
//!   matrix dimensions are rejected for this curve (two sample points would
//!   collide at the origin for every t).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Circle,
    Circuit,
    Crossing,
}

impl CurveKind {
    pub const ALL: [CurveKind; 3] = [CurveKind::Circle, CurveKind::Circuit, CurveKind::Crossing];

    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Circle => "circle",
            CurveKind::Circuit => "circuit",
            CurveKind::Crossing => "crossing",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "circle" => Ok(CurveKind::Circle),
            "circuit" => Ok(CurveKind::Circuit),
            "crossing" => Ok(CurveKind::Crossing),
            other => Err(Error::config(format!(
                "unknown curve '{other}' (expected circle, circuit, or crossing)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum CurveSegment {
    /// Circular arc `center + radius * exp(i (start_angle + f * sweep))` for
    /// `f` in [0, 1]. Negative sweep runs clockwise.
    Arc {
        center: Complex64,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
    Line { from: Complex64, to: Complex64 },
}

impl CurveSegment {
    pub fn length(&self) -> f64 {
        match *self {
            CurveSegment::Arc { radius, sweep, .. } => radius * sweep.abs(),
            CurveSegment::Line { from, to } => (to - from).norm(),
        }
    }

    pub fn point_at(&self, f: f64) -> Complex64 {
        match *self {
            CurveSegment::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let theta = start_angle + f * sweep;
                center + Complex64::new(radius * theta.cos(), radius * theta.sin())
            }
            CurveSegment::Line { from, to } => from + (to - from) * f,
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point_at(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point_at(1.0)
    }
}

#[derive(Clone, Debug)]
pub struct CurveGeometry {
    pub kind: CurveKind,
    pub segments: Vec<CurveSegment>,
    /// Cumulative arc length at the end of each segment.
    pub cumulative: Vec<f64>,
    pub total_length: f64,
    /// Enclosed area as an exact fraction of the unit-disc area π,
    /// stored as (numerator, denominator).
    pub area_fraction: (u32, u32),
}

fn build_geometry(kind: CurveKind) -> CurveGeometry {
    let origin = Complex64::new(0.0, 0.0);
    let unit = |theta: f64| Complex64::new(theta.cos(), theta.sin());
    let (segments, area_fraction) = match kind {
        CurveKind::Circle => (
            vec![CurveSegment::Arc {
                center: origin,
                radius: 1.0,
                start_angle: 0.0,
                sweep: 2.0 * PI,
            }],
            (1, 1),
        ),
        CurveKind::Circuit => (
            vec![
                CurveSegment::Arc {
                    center: origin,
                    radius: 1.0,
                    start_angle: 0.0,
                    sweep: PI,
                },
                CurveSegment::Arc {
                    center: Complex64::new(-2.0 / 3.0, 0.0),
                    radius: 1.0 / 3.0,
                    start_angle: PI,
                    sweep: PI,
                },
                CurveSegment::Arc {
                    center: origin,
                    radius: 1.0 / 3.0,
                    start_angle: PI,
                    sweep: -PI,
                },
                CurveSegment::Arc {
                    center: Complex64::new(2.0 / 3.0, 0.0),
                    radius: 1.0 / 3.0,
                    start_angle: PI,
                    sweep: PI,
                },
            ],
            (5, 9),
        ),
        CurveKind::Crossing => (
            vec![
                CurveSegment::Arc {
                    center: origin,
                    radius: 1.0,
                    start_angle: -PI / 4.0,
                    sweep: PI / 2.0,
                },
                CurveSegment::Line {
                    from: unit(PI / 4.0),
                    to: origin,
                },
                CurveSegment::Line {
                    from: origin,
                    to: unit(3.0 * PI / 4.0),
                },
                CurveSegment::Arc {
                    center: origin,
                    radius: 1.0,
                    start_angle: 3.0 * PI / 4.0,
                    sweep: PI / 2.0,
                },
                CurveSegment::Line {
                    from: unit(5.0 * PI / 4.0),
                    to: origin,
                },
                CurveSegment::Line {
                    from: origin,
                    to: unit(-PI / 4.0),
                },
            ],
            (1, 2),
        ),
    };
    let mut cumulative = Vec::with_capacity(segments.len());
    let mut acc = 0.0;
    for seg in &segments {
        acc += seg.length();
        cumulative.push(acc);
    }
    CurveGeometry {
        kind,
        segments,
        cumulative,
        total_length: acc,
        area_fraction,
    }
}

pub fn geometry(kind: CurveKind) -> &'static CurveGeometry {
    static CIRCLE: OnceLock<CurveGeometry> = OnceLock::new();
    static CIRCUIT: OnceLock<CurveGeometry> = OnceLock::new();
    static CROSSING: OnceLock<CurveGeometry> = OnceLock::new();
    match kind {
        CurveKind::Circle => CIRCLE.get_or_init(|| build_geometry(kind)),
        CurveKind::Circuit => CIRCUIT.get_or_init(|| build_geometry(kind)),
        CurveKind::Crossing => CROSSING.get_or_init(|| build_geometry(kind)),
    }
}

/// Fractional part in [0, 1). `frac(1.0) == 0.0` exactly, so periodic
/// evaluations at t and t+1 are bit-identical.
pub fn frac(t: f64) -> f64 {
    t - t.floor()
}

/// Point on the curve at parameter `u` (reduced mod 1), constant speed.
pub fn curve_point(kind: CurveKind, u: f64) -> Complex64 {
    let g = geometry(kind);
    let s = frac(u) * g.total_length;
    let idx = g.cumulative.partition_point(|&c| c <= s);
    let idx = idx.min(g.segments.len() - 1);
    let seg_start = if idx == 0 { 0.0 } else { g.cumulative[idx - 1] };
    let seg = &g.segments[idx];
    let local = ((s - seg_start) / seg.length()).clamp(0.0, 1.0);
    seg.point_at(local)
}

/// Strict interior test for the region enclosed by the curve. Points on the
/// boundary are excluded.
pub fn contains(kind: CurveKind, z: Complex64) -> bool {
    match kind {
        CurveKind::Circle => z.norm_sqr() < 1.0,
        CurveKind::Circuit => {
            let r2 = z.norm_sqr();
            if z.im > 0.0 {
                r2 < 1.0 && r2 > 1.0 / 9.0
            } else if z.im < 0.0 {
                let left = z + Complex64::new(2.0 / 3.0, 0.0);
                let right = z - Complex64::new(2.0 / 3.0, 0.0);
                left.norm_sqr() < 1.0 / 9.0 || right.norm_sqr() < 1.0 / 9.0
            } else {
                let x = z.re.abs();
                x > 1.0 / 3.0 && x < 1.0
            }
        }
        CurveKind::Crossing => z.norm_sqr() < 1.0 && z.re.abs() > z.im.abs(),
    }
}

/// `k` evenly spaced points `γ(j/k)`, `j = 0..k`.
pub fn polyline(kind: CurveKind, k: usize) -> Vec<Complex64> {
    (0..k)
        .map(|j| curve_point(kind, j as f64 / k as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    /// Signed polygon area via the shoelace formula.
    fn shoelace(points: &[Complex64]) -> f64 {
        let k = points.len();
        let mut acc = 0.0;
        for j in 0..k {
            let p = points[j];
            let q = points[(j + 1) % k];
            acc += p.re * q.im - q.re * p.im;
        }
        acc / 2.0
    }

    #[test]
    fn total_lengths_match_closed_forms() {
        assert!((geometry(CurveKind::Circle).total_length - 2.0 * PI).abs() < 1e-12);
        assert!((geometry(CurveKind::Circuit).total_length - 2.0 * PI).abs() < 1e-12);
        assert!((geometry(CurveKind::Crossing).total_length - (PI + 4.0)).abs() < 1e-12);
    }

    #[test]
    fn segment_chains_are_closed() {
        for kind in CurveKind::ALL {
            let g = geometry(kind);
            for w in g.segments.windows(2) {
                assert!(
                    close(w[0].end(), w[1].start(), 1e-12),
                    "{kind}: segment junction mismatch"
                );
            }
            let first = g.segments.first().unwrap().start();
            let last = g.segments.last().unwrap().end();
            assert!(close(first, last, 1e-12), "{kind}: curve not closed");
        }
    }

    #[test]
    fn periodicity_is_bit_exact() {
        // u + 1.0 is only representable exactly for dyadic u; those cases
        // (and in particular the period endpoints 0 and 1 that loop closure
        // relies on) must agree bit for bit.
        for kind in CurveKind::ALL {
            for u in [0.0, 0.125, 0.25, 0.5, 0.84375] {
                let a = curve_point(kind, u);
                let b = curve_point(kind, u + 1.0);
                assert_eq!(a.re.to_bits(), b.re.to_bits(), "{kind} at {u}");
                assert_eq!(a.im.to_bits(), b.im.to_bits(), "{kind} at {u}");
            }
            // Non-dyadic offsets inherit the rounding of u + 1.0 itself.
            for u in [0.3, 0.77] {
                assert!(close(curve_point(kind, u), curve_point(kind, u + 1.0), 1e-14));
            }
        }
    }

    #[test]
    fn anchor_points() {
        assert!(close(
            curve_point(CurveKind::Circle, 0.0),
            Complex64::new(1.0, 0.0),
            1e-15
        ));
        assert!(close(
            curve_point(CurveKind::Circle, 0.25),
            Complex64::new(0.0, 1.0),
            1e-15
        ));
        assert!(close(
            curve_point(CurveKind::Circuit, 0.0),
            Complex64::new(1.0, 0.0),
            1e-15
        ));
        // Arc length π is the end of the big semicircle.
        assert!(close(
            curve_point(CurveKind::Circuit, 0.5),
            Complex64::new(-1.0, 0.0),
            1e-12
        ));
        let sq = 0.5f64.sqrt();
        assert!(close(
            curve_point(CurveKind::Crossing, 0.0),
            Complex64::new(sq, -sq),
            1e-15
        ));
        // First origin passage at arc length π/2 + 1.
        let u0 = (PI / 2.0 + 1.0) / (PI + 4.0);
        assert!(curve_point(CurveKind::Crossing, u0).norm() < 1e-12);
        // Second passage exactly half the curve later.
        assert!(curve_point(CurveKind::Crossing, u0 + 0.5).norm() < 1e-12);
    }

    #[test]
    fn contains_examples() {
        use CurveKind::*;
        assert!(contains(Circle, Complex64::new(0.0, 0.0)));
        assert!(contains(Circle, Complex64::new(0.999, 0.0)));
        assert!(!contains(Circle, Complex64::new(1.001, 0.0)));

        assert!(contains(Circuit, Complex64::new(0.5, 0.1)));
        assert!(!contains(Circuit, Complex64::new(0.1, 0.1)));
        assert!(!contains(Circuit, Complex64::new(0.0, 0.2)));
        assert!(contains(Circuit, Complex64::new(-2.0 / 3.0, -0.2)));
        assert!(contains(Circuit, Complex64::new(2.0 / 3.0, -0.3)));
        assert!(!contains(Circuit, Complex64::new(0.0, -0.2)));
        assert!(contains(Circuit, Complex64::new(0.9, 0.0)));
        assert!(!contains(Circuit, Complex64::new(0.2, 0.0)));

        assert!(contains(Crossing, Complex64::new(0.5, 0.0)));
        assert!(contains(Crossing, Complex64::new(-0.5, 0.1)));
        assert!(!contains(Crossing, Complex64::new(0.0, 0.5)));
        assert!(!contains(Crossing, Complex64::new(0.3, 0.4)));
        assert!(!contains(Crossing, Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn enclosed_areas_match_fractions() {
        for kind in CurveKind::ALL {
            let g = geometry(kind);
            let want = PI * g.area_fraction.0 as f64 / g.area_fraction.1 as f64;
            let area = shoelace(&polyline(kind, 8192)).abs();
            assert!(
                (area - want).abs() < 1e-3,
                "{kind}: shoelace {area} vs {want}"
            );
        }
    }

    #[test]
    fn circuit_interior_agrees_with_winding_of_polyline() {
        // Monte Carlo cross-check of contains() against the even-odd rule on
        // a fine polyline.
        let pts = polyline(CurveKind::Circuit, 4096);
        let crossings = |z: Complex64| {
            let mut c = 0;
            for j in 0..pts.len() {
                let a = pts[j];
                let b = pts[(j + 1) % pts.len()];
                if (a.im > z.im) != (b.im > z.im) {
                    let x = a.re + (z.im - a.im) / (b.im - a.im) * (b.re - a.re);
                    if x > z.re {
                        c += 1;
                    }
                }
            }
            c % 2 == 1
        };
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..500 {
            let z = Complex64::new(next() * 2.4 - 1.2, next() * 2.4 - 1.2);
            // Skip points too close to the boundary for the polyline test.
            let near_boundary = pts.iter().any(|p| (p - z).norm() < 5e-3);
            if near_boundary {
                continue;
            }
            assert_eq!(contains(CurveKind::Circuit, z), crossings(z), "at {z}");
        }
    }

    #[test]
    fn frac_reduces_into_unit_interval() {
        assert_eq!(frac(1.0), 0.0);
        assert_eq!(frac(0.0), 0.0);
        assert_eq!(frac(2.5), 0.5);
        assert_eq!(frac(-0.25), 0.75);
    }

    proptest! {
        #[test]
        fn curve_speed_is_total_length(u in 0.0f64..1.0, kind_idx in 0usize..3) {
            let kind = CurveKind::ALL[kind_idx];
            let l = geometry(kind).total_length;
            let d = 1e-6;
            let step = (curve_point(kind, u + d) - curve_point(kind, u)).norm();
            // Chord length never exceeds arc length; equality away from corners.
            prop_assert!(step <= l * d * (1.0 + 1e-6));
        }

        #[test]
        fn curve_stays_in_closed_unit_disc(u in 0.0f64..1.0, kind_idx in 0usize..3) {
            let kind = CurveKind::ALL[kind_idx];
            prop_assert!(curve_point(kind, u).norm() <= 1.0 + 1e-12);
        }
    }
}
