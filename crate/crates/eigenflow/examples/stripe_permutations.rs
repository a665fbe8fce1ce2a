//! Stripe permutations σ(s).
//!
//! At fixed s the eigenvalues of R(s,t) move continuously in t and return to
//! the same multiset at t = 1, but individually they may land on each
//! other's starting points. Tracking one full period produces the stripe
//! permutation σ(s). At s = 0 the matrix is static (identity); as s grows,
//! collisions swept by the stripes braid the eigenvalues into longer and
//! longer cycles; at s = 1 the circle carrier rotates every eigenvalue back
//! to itself.
//!
//! Run with: cargo run --example stripe_permutations

use eigenflow::curves::CurveKind;
use eigenflow::model::{EnsembleKind, InitKind, ModelSpec};
use eigenflow::tracking::{stripe_permutation, WalkOptions};

fn main() -> eigenflow::Result<()> {
    let spec = ModelSpec {
        n: 7,
        ensemble: EnsembleKind::ComplexGaussian,
        curve: CurveKind::Circle,
        seed: 4,
        init: InitKind::Plain,
    };
    let base = spec.base_matrix()?;
    let walk = WalkOptions::for_dimension(spec.n);

    println!("n = {}, seed = {}", spec.n, spec.seed);
    for k in 0..=10 {
        let s = k as f64 / 10.0;
        let sigma = stripe_permutation(&spec, &base, s, &walk)?;
        let cycles: Vec<String> = sigma
            .cycles()
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|i| i.to_string()).collect();
                format!("({})", body.join(" "))
            })
            .collect();
        println!("s = {s:>4.2}  sigma = {:?}  cycles {}", sigma.image(), cycles.join(""));
    }
    Ok(())
}
