//! Standalone SVG ratio plots from checkpoint series.
//!
//! The figure style mirrors the estimation plots the checkpoints feed:
//! estimate divided by conjecture as a function of the iteration count, with
//! a horizontal reference line at 1. Exactly one `<polyline>` (the data) and
//! one `<line>` (the reference) appear in the output; axes are drawn with
//! `<path>` elements so the structure stays machine-checkable.

use crate::Error;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 30.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 60.0;

/// One (n, ratio) point of the series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPoint {
    pub n: u64,
    pub ratio: f64,
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-3..1e6).contains(&a) {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}

/// Render the ratio series as a standalone SVG document.
pub fn render_ratio_svg(points: &[RatioPoint], title: &str) -> Result<String, Error> {
    if points.is_empty() {
        return Err(Error::Malformed {
            what: "ratio series",
            detail: "no points to plot".to_string(),
        });
    }
    let n_min = points.first().map(|p| p.n).unwrap_or(0) as f64;
    let n_max = points.last().map(|p| p.n).unwrap_or(1) as f64;
    let n_span = (n_max - n_min).max(1.0);

    let mut r_min = points.iter().map(|p| p.ratio).fold(f64::INFINITY, f64::min);
    let mut r_max = points
        .iter()
        .map(|p| p.ratio)
        .fold(f64::NEG_INFINITY, f64::max);
    // Keep the reference line in frame.
    r_min = r_min.min(1.0);
    r_max = r_max.max(1.0);
    let pad = ((r_max - r_min) * 0.08).max(1e-12);
    r_min -= pad;
    r_max += pad;
    let r_span = r_max - r_min;

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let x = |n: f64| MARGIN_L + (n - n_min) / n_span * plot_w;
    let y = |r: f64| MARGIN_T + (r_max - r) / r_span * plot_h;

    let mut coords = String::new();
    for p in points {
        coords.push_str(&format!("{:.2},{:.2} ", x(p.n as f64), y(p.ratio)));
    }
    let coords = coords.trim_end();

    let y_ref = y(1.0);
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">{}</text>\n",
        WIDTH / 2.0,
        title
    ));
    // Axes as paths so the reference <line> stays unique.
    svg.push_str(&format!(
        "  <path d=\"M {l:.1} {t:.1} L {l:.1} {b:.1} L {r:.1} {b:.1}\" stroke=\"black\" fill=\"none\"/>\n",
        l = MARGIN_L,
        t = MARGIN_T,
        b = HEIGHT - MARGIN_B,
        r = WIDTH - MARGIN_R
    ));
    // Y tick labels at min / 1 / max.
    for (v, anchor) in [(r_min + pad, "end"), (1.0, "end"), (r_max - pad, "end")] {
        svg.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"{anchor}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            MARGIN_L - 6.0,
            y(v) + 4.0,
            fmt_tick(v)
        ));
    }
    // X tick labels at the ends.
    for v in [n_min, n_max] {
        svg.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            x(v),
            HEIGHT - MARGIN_B + 18.0,
            fmt_tick(v)
        ));
    }
    svg.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">iterations</text>\n",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 14.0
    ));
    svg.push_str(&format!(
        "  <line x1=\"{:.1}\" y1=\"{y_ref:.2}\" x2=\"{:.1}\" y2=\"{y_ref:.2}\" stroke=\"#888888\" stroke-dasharray=\"6,4\"/>\n",
        MARGIN_L,
        WIDTH - MARGIN_R
    ));
    svg.push_str(&format!(
        "  <polyline points=\"{coords}\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\"/>\n"
    ));
    svg.push_str("</svg>\n");
    Ok(svg)
}
