//! Spectra of the four base ensembles.
//!
//! Samples each ensemble at n = 40 and prints summary statistics of the
//! eigenvalues. All four are normalized so the circular law applies: the
//! spectrum fills the unit disc as n grows. Traceless variants differ only
//! by the subtracted mean eigenvalue, which recenters the cloud.
//!
//! Run with: cargo run --example ensemble_spectra

use eigenflow::model::{EnsembleKind, InitKind, ModelSpec};
use eigenflow::tracking::eigenvalues_canonical;
use eigenflow::curves::CurveKind;
use num_complex::Complex64;

fn main() -> eigenflow::Result<()> {
    let n = 40;
    println!(
        "{:<26} {:>10} {:>10} {:>12} {:>12}",
        "ensemble", "radius", "mean |z|", "trace/n", "inside disc"
    );
    for ensemble in EnsembleKind::ALL {
        let spec = ModelSpec {
            n,
            ensemble,
            curve: CurveKind::Circle,
            seed: 7,
            init: InitKind::Plain,
        };
        let base = spec.base_matrix()?;
        let values = eigenvalues_canonical(&base)?;

        let radius = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mean_abs: f64 = values.iter().map(|z| z.norm()).sum::<f64>() / n as f64;
        let trace = base.trace() / Complex64::new(n as f64, 0.0);
        let inside = values.iter().filter(|z| z.norm() < 1.0).count();

        println!(
            "{:<26} {:>10.4} {:>10.4} {:>12.2e} {:>9}/{}",
            ensemble.to_string(),
            radius,
            mean_abs,
            trace.norm(),
            inside,
            n
        );
    }
    Ok(())
}
