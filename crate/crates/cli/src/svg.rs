//! Static SVG overlays of plane curves.

use std::fmt::Write;

/// One polyline with its legend label.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub points: Vec<[f64; 2]>,
}

impl Series {
    pub fn new(label: impl Into<String>, color: &'static str, points: Vec<[f64; 2]>) -> Self {
        Self { label: label.into(), color, points }
    }
}

pub const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

const MARGIN: f64 = 0.05;
// fraction of the plot width reserved right of the curves for the legend
const LEGEND_WIDTH: f64 = 0.3;
// polylines longer than this are thinned to keep files small
const MAX_POINTS: usize = 4000;

fn bounds(series: &[Series]) -> [f64; 4] {
    let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for p in series.iter().flat_map(|s| &s.points).filter(|p| p[0].is_finite() && p[1].is_finite()) {
        b = [b[0].min(p[0]), b[1].min(p[1]), b[2].max(p[0]), b[3].max(p[1])];
    }
    if !b[0].is_finite() {
        return [-1.0, -1.0, 1.0, 1.0];
    }
    // a flat box gets the extent of the other side, a single point a unit box
    let span = (b[2] - b[0]).max(b[3] - b[1]).max(1e-9);
    for (lo, hi) in [(0, 2), (1, 3)] {
        if b[hi] - b[lo] < 1e-3 * span {
            let mid = 0.5 * (b[lo] + b[hi]);
            let half = if span > 1e-9 { 0.05 * span } else { 0.5 };
            b[lo] = mid - half;
            b[hi] = mid + half;
        }
    }
    b
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders the curves with equal axis scales, a 5% margin around their
/// bounding box and a legend on the right. The output depends only on the input.
pub fn render(title: &str, series: &[Series]) -> String {
    let [x0, y0, x1, y1] = bounds(series);
    let (w, h) = (x1 - x0, y1 - y0);
    let (mx, my) = (MARGIN * w, MARGIN * h);
    let (vx, vy) = (x0 - mx, -(y1 + my));
    let (vw, vh) = (w + 2.0 * mx, h + 2.0 * my);
    let legend = LEGEND_WIDTH * vw.max(vh);
    let size = vw.max(vh);
    let stroke = 0.003 * size;
    let font = 0.03 * size;
    let px_w = 800.0;
    let px_h = px_w * vh / (vw + legend);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{px_w:.0}" height="{px_h:.0}" viewBox="{vx:.6} {vy:.6} {:.6} {vh:.6}">"#,
        vw + legend
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(
        out,
        r##"<rect x="{vx:.6}" y="{vy:.6}" width="{vw:.6}" height="{vh:.6}" fill="white" stroke="#cccccc" stroke-width="{:.6}"/>"##,
        stroke * 0.5
    );
    for s in series {
        let step = s.points.len().div_ceil(MAX_POINTS).max(1);
        let mut pts = String::new();
        let n = s.points.len();
        for (i, p) in s.points.iter().enumerate() {
            if (i % step == 0 || i + 1 == n) && p[0].is_finite() && p[1].is_finite() {
                let _ = write!(pts, "{:.6},{:.6} ", p[0], -p[1]);
            }
        }
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{}" stroke-width="{stroke:.6}" stroke-linejoin="round" points="{}"/>"#,
            s.color,
            pts.trim_end()
        );
    }
    let lx = vx + vw + 0.1 * legend;
    for (i, s) in series.iter().enumerate() {
        let ly = vy + font * (1.5 + 1.5 * i as f64);
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{}" stroke-width="{:.6}"/>"#,
            ly - 0.35 * font,
            lx + 0.25 * legend,
            ly - 0.35 * font,
            s.color,
            2.0 * stroke
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.6}" y="{ly:.6}" font-family="sans-serif" font-size="{font:.6}">{}</text>"#,
            lx + 0.32 * legend,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn view_box_has_a_margin() {
        let s = Series::new("a", PALETTE[0], vec![[0.0, 0.0], [10.0, 5.0]]);
        let svg = render("t", &[s]);
        // x from -0.5 to 10.5, y flipped from -5.25 to 0.25, plus the legend strip
        assert!(svg.contains(r#"viewBox="-0.500000 -5.250000 14.300000 5.500000""#), "{svg}");
    }

    #[test]
    fn degenerate_boxes_get_an_extent() {
        let line = Series::new("line", PALETTE[0], vec![[0.0, 1.0], [4.0, 1.0]]);
        assert_eq!(bounds(&[line]), [0.0, 0.8, 4.0, 1.2]);
        let dot = Series::new("dot", PALETTE[0], vec![[2.0, 3.0]]);
        assert_eq!(bounds(&[dot]), [1.5, 2.5, 2.5, 3.5]);
        assert_eq!(bounds(&[]), [-1.0, -1.0, 1.0, 1.0]);
    }

    #[test]
    fn labels_are_escaped() {
        let svg = render("a<b", &[Series::new("x & y", PALETTE[1], vec![[0.0, 0.0], [1.0, 1.0]])]);
        assert!(svg.contains("a&lt;b") && svg.contains("x &amp; y"));
    }
}
