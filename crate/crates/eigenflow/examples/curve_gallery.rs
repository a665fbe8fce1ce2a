//! The three carrier curves and their geometry.
//!
//! Prints arc length and enclosed area for the circle, the circuit (upper
//! semicircle plus three small semicircular detours) and the self-crossing
//! bow tie, then writes an SVG gallery so the shapes can be eyeballed.
//!
//! Run with: cargo run --example curve_gallery

use eigenflow::curves::{contains, curve_point, geometry, polyline, CurveKind};
use num_complex::Complex64;

fn shoelace(points: &[Complex64]) -> f64 {
    let mut twice_area = 0.0;
    for w in points.windows(2) {
        twice_area += w[0].re * w[1].im - w[1].re * w[0].im;
    }
    (twice_area / 2.0).abs()
}

fn main() {
    println!(
        "{:<10} {:>12} {:>14} {:>14} {:>10}",
        "curve", "length", "area", "disc fraction", "segments"
    );
    for kind in CurveKind::ALL {
        let g = geometry(kind);
        let pts = polyline(kind, 20_000);
        let (num, den) = g.area_fraction;
        println!(
            "{:<10} {:>12.8} {:>14.8} {:>11}/{:<2} {:>8}",
            kind.to_string(),
            g.total_length,
            shoelace(&pts),
            num,
            den,
            g.segments.len()
        );
    }

    // Interior membership drives the rotated initial conditions: eigenvalues
    // are kept only when they fall strictly inside the region.
    println!("\ninterior samples:");
    for (z, label) in [
        (Complex64::new(0.5, 0.0), "0.5"),
        (Complex64::new(0.0, 0.5), "0.5i"),
        (Complex64::new(-0.66, -0.2), "-0.66-0.2i"),
        (Complex64::new(0.2, 0.5), "0.2+0.5i"),
    ] {
        let memberships: Vec<String> = CurveKind::ALL
            .iter()
            .filter(|&&k| contains(k, z))
            .map(|k| k.to_string())
            .collect();
        println!("  {label:>11} inside: {}", memberships.join(", "));
    }

    let mut svg = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"340\" \
         viewBox=\"0 0 960 340\">\n<rect width=\"960\" height=\"340\" fill=\"white\"/>\n",
    );
    for (idx, kind) in CurveKind::ALL.iter().enumerate() {
        let cx = 160.0 + 320.0 * idx as f64;
        let cy = 170.0;
        let scale = 130.0;
        let mut points = String::new();
        for k in 0..=1200 {
            let z = curve_point(*kind, k as f64 / 1200.0);
            points.push_str(&format!(
                "{:.2},{:.2} ",
                cx + scale * z.re,
                cy - scale * z.im
            ));
        }
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#365c8d\" stroke-width=\"2\"/>\n\
             <text x=\"{cx}\" y=\"320\" font-family=\"sans-serif\" font-size=\"15\" \
             text-anchor=\"middle\">{kind}</text>\n",
            points.trim_end()
        ));
    }
    svg.push_str("</svg>\n");

    let path = std::env::temp_dir().join("eigenflow_curve_gallery.svg");
    std::fs::write(&path, svg).expect("write svg");
    println!("\nwrote {}", path.display());
}
