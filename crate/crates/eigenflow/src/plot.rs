//! Minimal SVG rendering for eigenvalue trajectories and count histograms.
//!
//! Output is plain SVG 1.1 text with no external dependencies, suitable for
//! browsers and vector editors. Rendering is deterministic: the same inputs
//! produce byte-identical files.

use crate::stats::Histogram;
use crate::tracking::TracePoint;

/// Discrete yellow-to-purple color ramp used for cycle-rank coloring.
pub const COLOR_RAMP: [&str; 8] = [
    "#fde725", "#a0da39", "#4ac16d", "#1fa187", "#277f8e", "#365c8d", "#46327e", "#440154",
];

/// Color for a 1-based rank out of `max` ranks. Rank 1 is yellow, rank `max`
/// purple. A single rank maps to a mid-ramp tone so lone trajectories stay
/// visible on white.
pub fn ramp_color(rank: usize, max: usize) -> &'static str {
    if max <= 1 {
        return COLOR_RAMP[4];
    }
    let rank = rank.clamp(1, max);
    let pos = (rank - 1) as f64 / (max - 1) as f64;
    let idx = (pos * (COLOR_RAMP.len() - 1) as f64).round() as usize;
    COLOR_RAMP[idx]
}

pub fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// One fixed-s trajectory bundle: the t-trace plus a color rank per
/// eigenvalue index (see [`crate::stats::cycle_coloring`]).
pub struct StripePlot<'a> {
    pub s: f64,
    pub trace: &'a [TracePoint],
    /// 1-based color rank per eigenvalue index.
    pub ranks: &'a [usize],
    pub max_rank: usize,
}

/// A collision mark drawn as an X with a hover title.
pub struct Mark {
    pub re: f64,
    pub im: f64,
    pub label: String,
}

const VIEW: f64 = 720.0;
const PAD: f64 = 40.0;
const DOMAIN: f64 = 1.45;

fn project(re: f64, im: f64) -> (f64, f64) {
    let x = PAD + (re + DOMAIN) / (2.0 * DOMAIN) * VIEW;
    let y = PAD + (DOMAIN - im) / (2.0 * DOMAIN) * VIEW;
    (x, y)
}

fn fmt2(v: f64) -> String {
    format!("{v:.2}")
}

/// Renders eigenvalue trajectories in the complex plane: one polyline per
/// eigenvalue per stripe, colored by cycle rank, with collision marks drawn
/// as X glyphs carrying `<title>` hover labels. The viewport is the square
/// [-1.45, 1.45]^2 with the imaginary axis pointing up.
pub fn render_tracks_svg(stripes: &[StripePlot], marks: &[Mark], title: &str) -> String {
    let size = VIEW + 2.0 * PAD;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n"
    ));
    svg.push_str(&format!(
        "  <title>{}</title>\n  <rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n",
        xml_escape(title)
    ));

    // Axes through the origin and the unit circle for reference.
    let (ox, oy) = project(0.0, 0.0);
    let (x0, _) = project(-DOMAIN, 0.0);
    let (x1, _) = project(DOMAIN, 0.0);
    let (_, y0) = project(0.0, DOMAIN);
    let (_, y1) = project(0.0, -DOMAIN);
    svg.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#ddd\"/>\n",
        fmt2(x0),
        fmt2(oy),
        fmt2(x1),
        fmt2(oy)
    ));
    svg.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#ddd\"/>\n",
        fmt2(ox),
        fmt2(y0),
        fmt2(ox),
        fmt2(y1)
    ));
    let unit_r = VIEW / (2.0 * DOMAIN);
    svg.push_str(&format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#eee\"/>\n",
        fmt2(ox),
        fmt2(oy),
        fmt2(unit_r)
    ));

    for stripe in stripes {
        let n = stripe.trace.first().map_or(0, |pt| pt.values.len());
        for index in 0..n {
            let mut points = String::new();
            for pt in stripe.trace {
                let z = pt.values[index];
                let (x, y) = project(z.re, z.im);
                if !points.is_empty() {
                    points.push(' ');
                }
                points.push_str(&format!("{},{}", fmt2(x), fmt2(y)));
            }
            let rank = stripe.ranks.get(index).copied().unwrap_or(1);
            let color = ramp_color(rank, stripe.max_rank);
            svg.push_str(&format!(
                "  <polyline points=\"{points}\" fill=\"none\" stroke=\"{color}\" \
                 stroke-width=\"1.1\" stroke-opacity=\"0.85\"><title>s={} index={index}</title>\
                 </polyline>\n",
                stripe.s
            ));
        }
    }

    for mark in marks {
        let (x, y) = project(mark.re, mark.im);
        let r = 5.0;
        svg.push_str(&format!(
            "  <path d=\"M {} {} L {} {} M {} {} L {} {}\" stroke=\"#d62728\" \
             stroke-width=\"1.8\" fill=\"none\"><title>{}</title></path>\n",
            fmt2(x - r),
            fmt2(y - r),
            fmt2(x + r),
            fmt2(y + r),
            fmt2(x - r),
            fmt2(y + r),
            fmt2(x + r),
            fmt2(y - r),
            xml_escape(&mark.label)
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

/// Renders a count histogram as vertical bars with bin-edge tick labels.
pub fn render_histogram_svg(hist: &Histogram, title: &str) -> String {
    let width = 640.0;
    let height = 400.0;
    let pad = 48.0;
    let plot_w = width - 2.0 * pad;
    let plot_h = height - 2.0 * pad;
    let max_count = hist.counts.iter().copied().max().unwrap_or(0).max(1) as f64;
    let bins = hist.counts.len().max(1) as f64;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str(&format!(
        "  <title>{}</title>\n  <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n",
        xml_escape(title)
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\">{}</text>\n",
        fmt2(width / 2.0),
        fmt2(pad / 2.0),
        xml_escape(title)
    ));

    for (k, &count) in hist.counts.iter().enumerate() {
        let bar_h = count as f64 / max_count * plot_h;
        let x = pad + k as f64 / bins * plot_w;
        let w = plot_w / bins;
        let y = pad + plot_h - bar_h;
        svg.push_str(&format!(
            "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#365c8d\" \
             stroke=\"white\" stroke-width=\"0.5\"><title>[{}, {}): {count}</title></rect>\n",
            fmt2(x),
            fmt2(y),
            fmt2(w),
            fmt2(bar_h),
            hist.bin_edges[k],
            hist.bin_edges[k + 1]
        ));
    }

    // Baseline plus first/last edge and peak-count labels.
    svg.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333\"/>\n",
        fmt2(pad),
        fmt2(pad + plot_h),
        fmt2(pad + plot_w),
        fmt2(pad + plot_h)
    ));
    let label = |x: f64, y: f64, anchor: &str, text: String| {
        format!(
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"{anchor}\">{}</text>\n",
            fmt2(x),
            fmt2(y),
            xml_escape(&text)
        )
    };
    if let (Some(first), Some(last)) = (hist.bin_edges.first(), hist.bin_edges.last()) {
        svg.push_str(&label(pad, pad + plot_h + 16.0, "middle", format!("{first}")));
        svg.push_str(&label(
            pad + plot_w,
            pad + plot_h + 16.0,
            "middle",
            format!("{last}"),
        ));
    }
    svg.push_str(&label(
        pad - 6.0,
        pad + 4.0,
        "end",
        format!("{}", max_count as usize),
    ));
    svg.push_str(&label(
        pad - 6.0,
        pad + plot_h + 4.0,
        "end",
        "0".into(),
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
         text-anchor=\"middle\">mean={:.3} var={:.3} total={}</text>\n",
        fmt2(width / 2.0),
        fmt2(height - 12.0),
        hist.mean,
        hist.variance,
        hist.total
    ));
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn ramp_endpoints_and_midtone() {
        assert_eq!(ramp_color(1, 8), "#fde725");
        assert_eq!(ramp_color(8, 8), "#440154");
        assert_eq!(ramp_color(1, 1), "#277f8e");
        assert_eq!(ramp_color(2, 3), COLOR_RAMP[4]);
        // Out-of-range ranks clamp instead of panicking.
        assert_eq!(ramp_color(0, 4), COLOR_RAMP[0]);
        assert_eq!(ramp_color(9, 4), COLOR_RAMP[7]);
    }

    #[test]
    fn escape_covers_xml_specials() {
        assert_eq!(xml_escape("a<b&c>\"d'"), "a&lt;b&amp;c&gt;&quot;d&apos;");
        assert_eq!(xml_escape("plain"), "plain");
    }

    #[test]
    fn tracks_svg_contains_polylines_and_marks() {
        let trace = vec![
            TracePoint {
                s: 0.5,
                t: 0.0,
                values: vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            },
            TracePoint {
                s: 0.5,
                t: 0.5,
                values: vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)],
            },
        ];
        let stripes = [StripePlot {
            s: 0.5,
            trace: &trace,
            ranks: &[1, 2],
            max_rank: 2,
        }];
        let marks = [Mark {
            re: 0.25,
            im: -0.25,
            label: "t=0.125 <pair 0,1>".into(),
        }];
        let svg = render_tracks_svg(&stripes, &marks, "demo");
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("#fde725") && svg.contains("#440154"));
        assert!(svg.contains("t=0.125 &lt;pair 0,1&gt;"));
        assert!(svg.ends_with("</svg>\n"));
        // Deterministic output.
        assert_eq!(svg, render_tracks_svg(&stripes, &marks, "demo"));
    }

    #[test]
    fn histogram_svg_has_one_bar_per_bin() {
        let hist = Histogram {
            bin_width: 1.0,
            bin_edges: vec![88.0, 89.0, 90.0, 91.0],
            counts: vec![3, 0, 17],
            total: 20,
            mean: 89.7,
            variance: 0.41,
        };
        let svg = render_histogram_svg(&hist, "counts");
        assert_eq!(svg.matches("<rect").count(), 4);
        assert!(svg.contains("[90, 91): 17"));
        assert!(svg.contains("mean=89.700"));
    }
}
