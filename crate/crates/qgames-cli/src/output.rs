//! Emitters shared by the subcommands: 15-significant-digit number
//! formatting, CSV parsing, and the single-curve SVG plot.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

/// Serialize a number with 15 significant digits.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.14e}")
}

/// A `[re, im]` JSON pair.
pub fn fmt_complex(re: f64, im: f64) -> String {
    format!("[{},{}]", fmt_sig(re), fmt_sig(im))
}

/// Write to the given path, or to standard output when no path is set.
pub fn write_output(out: &Option<PathBuf>, content: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => io::stdout().write_all(content.as_bytes()),
    }
}

/// Parse a `beta,entropy_nats` CSV produced by `entropy-curve`.
pub fn parse_curve_csv(path: &Path) -> Result<Vec<(f64, f64)>, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut lines = text.lines();
    match lines.next() {
        Some("beta,entropy_nats") => {}
        Some(other) => return Err(format!("unexpected CSV header: {other:?}")),
        None => return Err("CSV file is empty".into()),
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let beta: f64 = fields
            .next()
            .and_then(|f| f.trim().parse().ok())
            .ok_or_else(|| format!("row {}: bad beta field", idx + 1))?;
        let entropy: f64 = fields
            .next()
            .and_then(|f| f.trim().parse().ok())
            .ok_or_else(|| format!("row {}: bad entropy field", idx + 1))?;
        if fields.next().is_some() {
            return Err(format!("row {}: too many fields", idx + 1));
        }
        rows.push((beta, entropy));
    }
    if rows.len() < 2 {
        return Err("need at least two data rows to plot".into());
    }
    if rows.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err("beta column must be strictly increasing".into());
    }
    Ok(rows)
}

const WIDTH: f64 = 840.0;
const HEIGHT: f64 = 560.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 810.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 520.0;

/// Static SVG 1.1 plot of one entropy curve with a horizontal reference line
/// at log N.
pub fn render_svg(rows: &[(f64, f64)], n: usize) -> String {
    let log_n = (n as f64).ln();
    let x_min = rows[0].0;
    let x_max = rows[rows.len() - 1].0;
    let data_max = rows.iter().map(|&(_, s)| s).fold(0.0, f64::max);
    let y_max = (log_n.max(data_max) * 1.05).max(1e-9);

    let px = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * (RIGHT - LEFT);
    let py = |y: f64| BOTTOM - y / y_max * (BOTTOM - TOP);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // axes
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{BOTTOM}\" x2=\"{RIGHT}\" y2=\"{BOTTOM}\" stroke=\"black\" stroke-width=\"1\"/>\n"
    ));
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{BOTTOM}\" stroke=\"black\" stroke-width=\"1\"/>\n"
    ));

    // ticks and numeric labels
    for k in 0..=5 {
        let x = x_min + (x_max - x_min) * k as f64 / 5.0;
        let xp = px(x);
        svg.push_str(&format!(
            "<line x1=\"{xp:.2}\" y1=\"{BOTTOM}\" x2=\"{xp:.2}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            BOTTOM + 6.0
        ));
        svg.push_str(&format!(
            "<text x=\"{xp:.2}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">{x:.3}</text>\n",
            BOTTOM + 22.0
        ));
        let y = y_max * k as f64 / 5.0;
        let yp = py(y);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{yp:.2}\" x2=\"{LEFT}\" y2=\"{yp:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            LEFT - 6.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"end\">{y:.3}</text>\n",
            LEFT - 10.0,
            yp + 4.0
        ));
    }

    // axis labels
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{}\" font-size=\"15\" text-anchor=\"middle\">beta</text>\n",
        (LEFT + RIGHT) / 2.0,
        HEIGHT - 8.0
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" font-size=\"15\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">entropy (nats)</text>\n",
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0
    ));

    // reference line at log N
    let ref_y = py(log_n);
    svg.push_str(&format!(
        "<line id=\"reference-lnN\" x1=\"{LEFT}\" y1=\"{ref_y:.2}\" x2=\"{RIGHT}\" y2=\"{ref_y:.2}\" stroke=\"#cc3333\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{:.2}\" font-size=\"13\" fill=\"#cc3333\">log {n}</text>\n",
        RIGHT - 48.0,
        ref_y - 6.0
    ));

    // the curve
    let points: Vec<String> = rows
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
        .collect();
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        points.join(" ")
    ));

    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(fmt_sig(0.0), "0.00000000000000e0");
        let s = fmt_sig(std::f64::consts::PI);
        assert_eq!(s, "3.14159265358979e0");
        let round_trip: f64 = s.parse().unwrap();
        assert!((round_trip - std::f64::consts::PI).abs() <= 1e-14);
    }

    #[test]
    fn svg_contains_reference_line() {
        let rows = vec![(0.0, 0.0), (0.5, 0.6), (1.0, 3f64.ln())];
        let svg = render_svg(&rows, 3);
        assert!(svg.contains("reference-lnN"));
        assert!(svg.contains("polyline"));
        assert!(svg.contains("entropy (nats)"));
        assert!(svg.starts_with("<svg"));
    }
}
