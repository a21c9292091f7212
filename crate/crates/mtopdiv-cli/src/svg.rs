//! Self-contained SVG rendering: barcode diagrams and sweep trend plots.
//!
//! The drawings are deliberately plain — fixed canvas, horizontal interval
//! segments grouped by homology dimension, polylines for sweep columns —
//! and the output is always well-formed XML with no external references.

const WIDTH: f64 = 640.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 32.0;
const MARGIN_BOTTOM: f64 = 44.0;
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Axis tick label: short decimal, deterministic.
fn tick(v: f64) -> String {
    format!("{v:.4}")
}

fn coord(v: f64) -> String {
    format!("{v:.2}")
}

fn header(height: f64, title: &str) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"11\">\n",
            "<title>{t}</title>\n",
            "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx}\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">{t}</text>\n"
        ),
        w = WIDTH,
        h = coord(height),
        t = esc(title),
        tx = WIDTH / 2.0,
    )
}

fn x_axis(out: &mut String, height: f64, lo: f64, hi: f64, label: &str) {
    let y = height - MARGIN_BOTTOM;
    let right = WIDTH - MARGIN_RIGHT;
    out.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        MARGIN_LEFT,
        coord(y),
        right,
        coord(y)
    ));
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let v = lo + f * (hi - lo);
        let x = MARGIN_LEFT + f * (right - MARGIN_LEFT);
        out.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\"/>\n",
            coord(y),
            coord(y + 4.0),
            x = coord(x),
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            coord(x),
            coord(y + 16.0),
            tick(v)
        ));
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
        coord((MARGIN_LEFT + right) / 2.0),
        coord(y + 32.0),
        esc(label)
    ));
}

/// Barcode diagram: one horizontal segment per interval, rows grouped by
/// dimension, x axis in filtration-value units. Infinite deaths run to the
/// right edge. `rows` holds `(dim, birth, death)`.
pub fn barcode_svg(rows: &[(usize, f64, f64)]) -> String {
    let max_dim = rows.iter().map(|r| r.0).max().unwrap_or(0);
    let finite_hi = rows
        .iter()
        .flat_map(|&(_, b, d)| [b, if d.is_finite() { d } else { b }])
        .fold(0.0_f64, f64::max);
    let hi = if finite_hi > 0.0 { finite_hi * 1.05 } else { 1.0 };

    let row_h = 10.0;
    let group_gap = 18.0;
    let n_rows = rows.len().max(1);
    let height =
        MARGIN_TOP + MARGIN_BOTTOM + n_rows as f64 * row_h + (max_dim + 1) as f64 * group_gap;

    let mut out = header(height, "cross-barcode");
    let right = WIDTH - MARGIN_RIGHT;
    let scale = |v: f64| MARGIN_LEFT + (v / hi) * (right - MARGIN_LEFT);

    let mut y = MARGIN_TOP;
    for dim in 0..=max_dim {
        let group: Vec<&(usize, f64, f64)> = rows.iter().filter(|r| r.0 == dim).collect();
        let color = PALETTE[dim % PALETTE.len()];
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" fill=\"{color}\">H{dim}</text>\n",
            coord(MARGIN_LEFT - 10.0),
            coord(y + row_h),
        ));
        if group.is_empty() {
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" fill=\"#888888\">(empty)</text>\n",
                coord(MARGIN_LEFT + 4.0),
                coord(y + row_h),
            ));
            y += row_h;
        }
        for &&(_, birth, death) in &group {
            let x1 = scale(birth);
            let x2 = if death.is_finite() { scale(death) } else { right };
            let ymid = y + row_h / 2.0;
            out.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"3\"/>\n",
                coord(x1),
                coord(ymid),
                coord(x2.max(x1 + 1.0)),
                coord(ymid),
            ));
            y += row_h;
        }
        y += group_gap;
    }
    x_axis(&mut out, height, 0.0, hi, "filtration value");
    out.push_str("</svg>\n");
    out
}

/// Trend plot: each series is a named list of `(x, y)` points drawn as a
/// polyline with markers; x axis shared, y axis scaled to all series.
pub fn trend_svg(title: &str, x_label: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let height = 360.0;
    let mut out = header(height, title);
    let right = WIDTH - MARGIN_RIGHT;
    let bottom = height - MARGIN_BOTTOM;

    let points: Vec<(f64, f64)> = series.iter().flat_map(|(_, pts)| pts.iter().copied()).collect();
    let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &points {
        x_lo = x_lo.min(x);
        x_hi = x_hi.max(x);
        y_lo = y_lo.min(y);
        y_hi = y_hi.max(y);
    }
    if points.is_empty() {
        (x_lo, x_hi, y_lo, y_hi) = (0.0, 1.0, 0.0, 1.0);
    }
    if x_hi - x_lo < 1e-12 {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if y_hi - y_lo < 1e-12 {
        y_lo -= 0.5;
        y_hi += 0.5;
    }

    let sx = |v: f64| MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * (right - MARGIN_LEFT);
    let sy = |v: f64| bottom - (v - y_lo) / (y_hi - y_lo) * (bottom - MARGIN_TOP);

    // y axis with ticks
    out.push_str(&format!(
        "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\"/>\n",
        coord(MARGIN_TOP),
        coord(bottom),
        x = MARGIN_LEFT,
    ));
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let v = y_lo + f * (y_hi - y_lo);
        let y = bottom - f * (bottom - MARGIN_TOP);
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
            coord(MARGIN_LEFT - 6.0),
            coord(y + 4.0),
            tick(v)
        ));
    }

    for (idx, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let coords: Vec<String> =
            pts.iter().map(|&(x, y)| format!("{},{}", coord(sx(x)), coord(sy(y)))).collect();
        out.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            coords.join(" ")
        ));
        for &(x, y) in pts {
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>\n",
                coord(sx(x)),
                coord(sy(y)),
            ));
        }
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" fill=\"{color}\">{}</text>\n",
            coord(MARGIN_LEFT + 8.0),
            coord(MARGIN_TOP + 14.0 * idx as f64 + 4.0),
            esc(name)
        ));
    }
    x_axis(&mut out, height, x_lo, x_hi, x_label);
    out.push_str("</svg>\n");
    out
}
