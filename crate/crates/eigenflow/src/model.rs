//! The interpolated matrix family `R(s, t) = α(s) C + β(s) U(t)`.
//!
//! `C` is a fixed random base matrix drawn once per seed, `U(t)` is the
//! diagonal matrix of `n` equally spaced points on a closed curve, and the
//! interpolation weights are `α(s) = cos(sπ/2)`, `β(s) = sin(sπ/2)`, so the
//! family moves from the random matrix at `s = 0` to the curve diagonal at
//! `s = 1` with `α² + β² = 1` throughout.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::curves::{self, CurveKind};
use crate::error::{Error, Result};
use crate::matrix::{canonical_sort, ComplexMatrix};

pub const MAX_DIMENSION: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    ComplexGaussian,
    SymmetricBernoulli,
    TracelessComplexGaussian,
    TracelessBernoulli,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 4] = [
        EnsembleKind::ComplexGaussian,
        EnsembleKind::SymmetricBernoulli,
        EnsembleKind::TracelessComplexGaussian,
        EnsembleKind::TracelessBernoulli,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::ComplexGaussian => "complex_gaussian",
            EnsembleKind::SymmetricBernoulli => "symmetric_bernoulli",
            EnsembleKind::TracelessComplexGaussian => "traceless_complex_gaussian",
            EnsembleKind::TracelessBernoulli => "traceless_bernoulli",
        }
    }

    pub fn is_traceless(self) -> bool {
        matches!(
            self,
            EnsembleKind::TracelessComplexGaussian | EnsembleKind::TracelessBernoulli
        )
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EnsembleKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown ensemble '{s}' (expected one of complex_gaussian, \
                     symmetric_bernoulli, traceless_complex_gaussian, traceless_bernoulli)"
                ))
            })
    }
}

/// How the base matrix `C` is prepared.
///
/// `Plain` draws from the ensemble directly. `Meander` and `Sectors` rotate a
/// hand-picked spectrum into general position: eigenvalues of an auxiliary
/// Ginibre draw that land strictly inside the circuit (respectively crossing)
/// region, conjugated by a Haar unitary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitKind {
    #[default]
    Plain,
    Meander,
    Sectors,
}

impl InitKind {
    pub const ALL: [InitKind; 3] = [InitKind::Plain, InitKind::Meander, InitKind::Sectors];

    pub fn name(self) -> &'static str {
        match self {
            InitKind::Plain => "plain",
            InitKind::Meander => "meander",
            InitKind::Sectors => "sectors",
        }
    }

    /// Region whose interior the initial spectrum is confined to.
    pub fn region(self) -> Option<CurveKind> {
        match self {
            InitKind::Plain => None,
            InitKind::Meander => Some(CurveKind::Circuit),
            InitKind::Sectors => Some(CurveKind::Crossing),
        }
    }
}

impl fmt::Display for InitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InitKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown init '{s}' (expected plain, meander, or sectors)"
                ))
            })
    }
}

/// Full description of one model instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelSpec {
    pub n: usize,
    pub ensemble: EnsembleKind,
    pub curve: CurveKind,
    pub seed: u64,
    #[serde(default)]
    pub init: InitKind,
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if self.n > MAX_DIMENSION {
            return Err(Error::config(format!(
                "n must be at most {MAX_DIMENSION}, got {}",
                self.n
            )));
        }
        if self.curve == CurveKind::Crossing && self.n % 2 == 0 {
            return Err(Error::config(format!(
                "the crossing curve requires odd n (got {}): its two origin \
                 passages sit exactly half a period apart, so an even n puts \
                 two sample points at the origin for every t",
                self.n
            )));
        }
        if let Some(region) = self.init.region() {
            if self.curve != region {
                return Err(Error::config(format!(
                    "init '{}' pins the initial spectrum inside the {} region \
                     and requires curve '{}', got '{}'",
                    self.init, region, region, self.curve
                )));
            }
        }
        Ok(())
    }

    /// Draws the base matrix `C` for this spec.
    pub fn base_matrix(&self) -> Result<ComplexMatrix> {
        self.validate()?;
        match self.init {
            InitKind::Plain => sample_ginibre(self.n, self.ensemble, self.seed),
            InitKind::Meander | InitKind::Sectors => build_rotated_initial(self),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterpolationWeights {
    pub alpha: f64,
    pub beta: f64,
}

/// `α(s) = cos(sπ/2)`, `β(s) = sin(sπ/2)` for `s` in [0, 1].
pub fn interpolation_weights(s: f64) -> Result<InterpolationWeights> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::config(format!(
            "interpolation parameter s must lie in [0, 1], got {s}"
        )));
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    Ok(InterpolationWeights {
        alpha: (s * half_pi).cos(),
        beta: (s * half_pi).sin(),
    })
}

// RNG sub-stream derivation. Every random draw in the crate goes through a
// ChaCha12 generator seeded from splitmix64-mixed (master, stream) pairs, so
// the base draw, the Haar rotation, and each retry of the rotated
// initializer consume independent streams of a single master seed.
const STREAM_BASE: u64 = 0;
const STREAM_HAAR: u64 = 1;
const STREAM_ATTEMPT: u64 = 2;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut state = master;
    let mixed = splitmix64(&mut state) ^ stream.wrapping_mul(0xD1B5_4A32_D192_ED03);
    let mut state = mixed;
    splitmix64(&mut state)
}

fn rng_for(master: u64, stream: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(derive_seed(master, stream))
}

/// Draws the base ensemble matrix. Entries are sampled row-major. Complex
/// Gaussian entries have independent re/im parts of variance `1/(2n)` (entry
/// variance `1/n`); Bernoulli entries are `±1/√n`. Traceless variants
/// subtract `(tr/n) I` after sampling.
pub fn sample_ginibre(n: usize, ensemble: EnsembleKind, seed: u64) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::config("matrix dimension must be positive"));
    }
    let mut rng = rng_for(seed, STREAM_BASE);
    let mut m = match ensemble {
        EnsembleKind::ComplexGaussian | EnsembleKind::TracelessComplexGaussian => {
            let sd = (1.0 / (2.0 * n as f64)).sqrt();
            let normal = Normal::new(0.0, sd).expect("valid std dev");
            ComplexMatrix::from_fn(n, |_, _| {
                let re = normal.sample(&mut rng);
                let im = normal.sample(&mut rng);
                Complex64::new(re, im)
            })
        }
        EnsembleKind::SymmetricBernoulli | EnsembleKind::TracelessBernoulli => {
            let scale = 1.0 / (n as f64).sqrt();
            ComplexMatrix::from_fn(n, |_, _| {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                Complex64::new(sign * scale, 0.0)
            })
        }
    };
    if ensemble.is_traceless() {
        let shift = m.trace() / n as f64;
        for i in 0..n {
            let v = m.get(i, i) - shift;
            m.set(i, i, v);
        }
    }
    Ok(m)
}

/// Haar-distributed unitary via modified Gram-Schmidt (with a second
/// orthogonalization pass) on a complex Gaussian matrix. The normalization
/// keeps the implicit R factor's diagonal positive, which is the phase
/// convention that makes the QR draw Haar-distributed.
pub fn sample_haar_unitary(n: usize, seed: u64) -> Result<ComplexMatrix> {
    let mut rng = rng_for(seed, STREAM_HAAR);
    let normal = Normal::new(0.0, 1.0).expect("valid std dev");
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng)))
                .collect()
        })
        .collect();
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let proj: Complex64 = (0..n).map(|k| cols[i][k].conj() * cols[j][k]).sum();
                for k in 0..n {
                    let v = cols[j][k] - proj * cols[i][k];
                    cols[j][k] = v;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::NumericalFailure {
                n,
                detail: "Gram-Schmidt encountered a numerically dependent column".to_string(),
            });
        }
        for k in 0..n {
            cols[j][k] /= norm;
        }
    }
    let q = ComplexMatrix::from_fn(n, |i, j| cols[j][i]);
    let gram = q.adjoint().mul(&q);
    let defect = gram.max_abs_entry_diff(&ComplexMatrix::identity(n));
    if defect > 1e-10 {
        return Err(Error::NumericalFailure {
            n,
            detail: format!("orthonormalization defect {defect:.3e} exceeds 1e-10"),
        });
    }
    Ok(q)
}

/// Auxiliary Ginibre dimension for a rotated initializer: `ceil(n / f)` where
/// `f` is the region's share of the unit-disc area, computed exactly from the
/// fraction's integer numerator and denominator.
pub fn auxiliary_dimension(n: usize, region: CurveKind) -> usize {
    let (num, den) = curves::geometry(region).area_fraction;
    (n * den as usize).div_ceil(num as usize)
}

const MAX_INIT_ATTEMPTS: usize = 1000;

/// Builds a base matrix whose spectrum lies strictly inside the region
/// enclosed by the init's curve: eigenvalues of an auxiliary Ginibre draw
/// filtered to the region interior (resampled with fresh sub-seeds until at
/// least n land inside), conjugated by a Haar unitary.
pub fn build_rotated_initial(spec: &ModelSpec) -> Result<ComplexMatrix> {
    let region = spec.init.region().ok_or_else(|| {
        Error::config("build_rotated_initial requires init meander or sectors")
    })?;
    let aux_n = auxiliary_dimension(spec.n, region);
    for attempt in 0..MAX_INIT_ATTEMPTS {
        let aux_seed = derive_seed(spec.seed, STREAM_ATTEMPT + attempt as u64);
        let aux = sample_ginibre(aux_n, spec.ensemble, aux_seed)?;
        let mut inside: Vec<Complex64> = aux
            .eigenvalues()?
            .into_iter()
            .filter(|&z| curves::contains(region, z))
            .collect();
        if inside.len() < spec.n {
            continue;
        }
        canonical_sort(&mut inside);
        inside.truncate(spec.n);
        let d = ComplexMatrix::diagonal(&inside);
        let v = sample_haar_unitary(spec.n, spec.seed)?;
        return Ok(v.mul(&d).mul(&v.adjoint()));
    }
    Err(Error::InitializationFailure {
        attempts: MAX_INIT_ATTEMPTS,
        needed: spec.n,
        curve: region.name().into(),
    })
}

/// `U(t) = diag(γ(frac(t) + k/n))`, `k = 0..n`. Evaluating at `t` and `t + 1`
/// is bit-identical because `frac` is applied before the offsets.
pub fn curve_matrix(curve: CurveKind, n: usize, t: f64) -> ComplexMatrix {
    let base = curves::frac(t);
    let entries: Vec<Complex64> = (0..n)
        .map(|k| curves::curve_point(curve, base + k as f64 / n as f64))
        .collect();
    ComplexMatrix::diagonal(&entries)
}

/// `R(s, t) = α(s) C + β(s) U(t)`.
pub fn assemble(spec: &ModelSpec, base: &ComplexMatrix, s: f64, t: f64) -> Result<ComplexMatrix> {
    if base.dim() != spec.n {
        return Err(Error::config(format!(
            "base matrix dimension {} does not match spec n = {}",
            base.dim(),
            spec.n
        )));
    }
    if !t.is_finite() {
        return Err(Error::config(format!("t must be finite, got {t}")));
    }
    let w = interpolation_weights(s)?;
    let u = curve_matrix(spec.curve, spec.n, t);
    Ok(base.linear_combination(w.alpha, &u, w.beta))
}
