//! Static SVG scatter plots with no dependencies beyond the standard
//! library. One `<circle>` per data point, axis ranges follow the data with
//! 5% margins, and an optional horizontal reference line marks the target
//! level.

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 42.0;
const BOTTOM: f64 = 54.0;

pub struct ScatterSpec<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    /// Horizontal dashed line at this y, drawn when inside the range.
    pub reference_y: Option<f64>,
}

fn padded(min: f64, max: f64) -> (f64, f64) {
    let span = max - min;
    let pad = if span > 0.0 { 0.05 * span } else { 0.5 * min.abs().max(1.0) };
    (min - pad, max + pad)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn scatter(points: &[(f64, f64)], spec: &ScatterSpec) -> String {
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if points.is_empty() {
        (x_min, x_max, y_min, y_max) = (0.0, 1.0, 0.0, 1.0);
    }
    if let Some(r) = spec.reference_y {
        y_min = y_min.min(r);
        y_max = y_max.max(r);
    }
    let (x_lo, x_hi) = padded(x_min, x_max);
    let (y_lo, y_hi) = padded(y_min, y_max);

    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * (WIDTH - LEFT - RIGHT);
    let sy = |y: f64| HEIGHT - BOTTOM - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - TOP - BOTTOM);

    let mut svg = String::with_capacity(64 * points.len() + 2048);
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">{}</text>\n",
        WIDTH / 2.0,
        escape(spec.title)
    ));

    // axes
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        HEIGHT - BOTTOM,
        WIDTH - RIGHT,
        HEIGHT - BOTTOM
    ));
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        HEIGHT - BOTTOM
    ));

    // range labels and axis names
    svg.push_str(&format!(
        "<text x=\"{LEFT}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{:.4}</text>\n",
        HEIGHT - BOTTOM + 18.0,
        x_lo
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{:.4}</text>\n",
        WIDTH - RIGHT,
        HEIGHT - BOTTOM + 18.0,
        x_hi
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">{:.4}</text>\n",
        LEFT - 6.0,
        HEIGHT - BOTTOM,
        y_lo
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{TOP}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">{:.4}</text>\n",
        LEFT - 6.0,
        y_hi
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">{}</text>\n",
        (LEFT + WIDTH - RIGHT) / 2.0,
        HEIGHT - 12.0,
        escape(spec.x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 {:.2})\">{}</text>\n",
        (TOP + HEIGHT - BOTTOM) / 2.0,
        (TOP + HEIGHT - BOTTOM) / 2.0,
        escape(spec.y_label)
    ));

    if let Some(r) = spec.reference_y {
        svg.push_str(&format!(
            "<line x1=\"{LEFT}\" y1=\"{0:.2}\" x2=\"{1:.2}\" y2=\"{0:.2}\" stroke=\"#c02020\" stroke-dasharray=\"5 4\"/>\n",
            sy(r),
            WIDTH - RIGHT
        ));
    }

    for &(x, y) in points {
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"1.6\" fill=\"#20609f\" fill-opacity=\"0.55\"/>\n",
            sx(x),
            sy(y)
        ));
    }

    svg.push_str("</svg>\n");
    svg
}
