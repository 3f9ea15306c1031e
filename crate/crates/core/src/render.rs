//! SVG output: single casts over the grid, and histograms of batch estimates.
//!
//! Documents are plain text with coordinates printed at a fixed number of
//! decimals, so rendering the same scene twice gives identical bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::estimators::HistogramBin;
use crate::geometry::{Axis, GridSpec, Point, Vertices};
use crate::scalar::Scalar;

/// Maps world coordinates to pixels: `px = (world - origin) · scale`.
///
/// The y axis is not flipped, matching SVG's downward y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport<T> {
    pub origin: Point<T>,
    /// Pixels per world unit.
    pub scale: T,
    pub width: u32,
    pub height: u32,
    pub decimals: usize,
}

impl<T: Scalar> Viewport<T> {
    /// Square canvas of `canvas` pixels showing `span` world units around `center`.
    pub fn around(center: Point<T>, span: T, canvas: u32) -> Self {
        let half = span / T::lit(2.0);
        Viewport {
            origin: Point::new(center.x - half, center.y - half),
            scale: T::lit(f64::from(canvas)) / span,
            width: canvas,
            height: canvas,
            decimals: 2,
        }
    }

    /// The default framing: the triangle's circumscribed square on a 400 px canvas.
    pub fn for_triangle(center: Point<T>, side: T) -> Self {
        Self::around(center, T::lit(2.0) * side / T::lit(3.0).sqrt(), 400)
    }

    pub fn to_pixel(&self, p: Point<T>) -> Point<T> {
        Point::new((p.x - self.origin.x) * self.scale, (p.y - self.origin.y) * self.scale)
    }

    /// World-coordinate extent `(lo, hi)` shown along `axis`.
    pub fn world_range(&self, axis: Axis) -> (T, T) {
        let (lo, px) = match axis {
            Axis::X => (self.origin.x, self.width),
            Axis::Y => (self.origin.y, self.height),
        };
        (lo, lo + T::lit(f64::from(px)) / self.scale)
    }

    fn is_degenerate(&self) -> bool {
        !self.scale.is_positive_finite() || self.width == 0 || self.height == 0
    }
}

/// A cast triangle together with the grid lines visible in the viewport.
#[derive(Debug, Clone, PartialEq)]
pub struct CastScene<T> {
    pub vertices: Vertices<T>,
    /// World x positions of visible vertical lines.
    pub x_lines: Vec<T>,
    /// World y positions of visible horizontal lines.
    pub y_lines: Vec<T>,
    pub viewport: Viewport<T>,
}

impl<T: Scalar> CastScene<T> {
    pub fn new(vertices: Vertices<T>, grid: &GridSpec<T>, viewport: Viewport<T>) -> Result<Self> {
        if viewport.is_degenerate() {
            return Err(Error::invalid("viewport must have a positive scale and canvas"));
        }
        let lines = |axis| {
            let (lo, hi) = viewport.world_range(axis);
            grid.lines_between(axis, lo, hi)
        };
        Ok(CastScene { x_lines: lines(Axis::X), y_lines: lines(Axis::Y), vertices, viewport })
    }
}

fn num<T: Scalar>(v: T, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_owned()
    } else {
        s
    }
}

/// Header, white background, three black edges, red grid lines, footer.
pub fn render_cast<T: Scalar>(scene: &CastScene<T>) -> Result<String> {
    let vp = &scene.viewport;
    if vp.is_degenerate() {
        return Err(Error::invalid("viewport must have a positive scale and canvas"));
    }
    let d = vp.decimals;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg height=\"{h}\" width=\"{w}\" xmlns=\"http://www.w3.org/2000/svg\">",
        h = vp.height,
        w = vp.width
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\" />",
        vp.width, vp.height
    );

    let mut line = |x1: String, y1: String, x2: String, y2: String, color: &str| {
        let _ = writeln!(
            out,
            "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{color}\" stroke-width=\"2\"/>"
        );
    };
    for (p, q) in scene.vertices.edges() {
        let (p, q) = (vp.to_pixel(p), vp.to_pixel(q));
        line(num(p.x, d), num(p.y, d), num(q.x, d), num(q.y, d), "black");
    }
    let (w, h) = (vp.width.to_string(), vp.height.to_string());
    for &x in &scene.x_lines {
        let px = num((x - vp.origin.x) * vp.scale, d);
        line(px.clone(), "0".into(), px, h.clone(), "red");
    }
    for &y in &scene.y_lines {
        let py = num((y - vp.origin.y) * vp.scale, d);
        line("0".into(), py.clone(), w.clone(), py, "red");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramScene {
    pub bins: Vec<HistogramBin>,
    /// Printed in the caption to 5 decimals.
    pub mean: f64,
    pub x_label: String,
    pub y_label: String,
    pub width: u32,
    pub height: u32,
}

impl HistogramScene {
    pub fn new(bins: Vec<HistogramBin>, mean: f64) -> Self {
        HistogramScene {
            bins,
            mean,
            x_label: "estimated value of pi".into(),
            y_label: "runs".into(),
            width: 640,
            height: 400,
        }
    }
}

const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Bar chart of `scene.bins` with a labelled estimate axis and a caption
/// carrying the mean. Bar heights are proportional to counts; the tallest bar
/// spans the full plot height.
pub fn render_histogram(scene: &HistogramScene) -> Result<String> {
    if scene.bins.is_empty() {
        return Err(Error::invalid("histogram needs at least one bin"));
    }
    let (w, h) = (f64::from(scene.width), f64::from(scene.height));
    let plot_w = w - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = h - MARGIN_TOP - MARGIN_BOTTOM;
    if !(plot_w > 0.0 && plot_h > 0.0) {
        return Err(Error::invalid("canvas too small for the histogram margins"));
    }
    let max_count = scene.bins.iter().map(|b| b.count).max().unwrap_or(0).max(1) as f64;
    let bar_w = plot_w / scene.bins.len() as f64;
    let base = MARGIN_TOP + plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg height=\"{}\" width=\"{}\" xmlns=\"http://www.w3.org/2000/svg\">",
        scene.height, scene.width
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\" />",
        scene.width, scene.height
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">mean = {:.5} ({} runs)</text>",
        w / 2.0,
        scene.mean,
        scene.bins.iter().map(|b| b.count).sum::<u64>()
    );

    for (i, bin) in scene.bins.iter().enumerate() {
        let bar_h = plot_h * bin.count as f64 / max_count;
        let _ = writeln!(
            out,
            "<rect class=\"bar\" x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"gray\" stroke=\"black\" stroke-width=\"1\"/>",
            MARGIN_LEFT + bar_w * i as f64,
            base - bar_h,
            bar_w,
            bar_h
        );
    }

    // Axes.
    let _ = writeln!(
        out,
        "<line x1=\"{l:.2}\" y1=\"{b:.2}\" x2=\"{r:.2}\" y2=\"{b:.2}\" stroke=\"black\" stroke-width=\"1\"/>",
        l = MARGIN_LEFT,
        r = MARGIN_LEFT + plot_w,
        b = base
    );
    let _ = writeln!(
        out,
        "<line x1=\"{l:.2}\" y1=\"{t:.2}\" x2=\"{l:.2}\" y2=\"{b:.2}\" stroke=\"black\" stroke-width=\"1\"/>",
        l = MARGIN_LEFT,
        t = MARGIN_TOP,
        b = base
    );

    // Estimate-axis ticks: at most ~8 labelled bin edges.
    let n = scene.bins.len();
    let step = n.div_ceil(8).max(1);
    let mut edges: Vec<(usize, f64)> = (0..n).step_by(step).map(|i| (i, scene.bins[i].low)).collect();
    if edges.last().map(|&(i, _)| i) != Some(n) {
        edges.push((n, scene.bins[n - 1].high));
    }
    for (i, value) in edges {
        let x = MARGIN_LEFT + bar_w * i as f64;
        let _ = writeln!(
            out,
            "<line class=\"tick\" x1=\"{x:.2}\" y1=\"{b:.2}\" x2=\"{x:.2}\" y2=\"{b2:.2}\" stroke=\"black\" stroke-width=\"1\"/>",
            b = base,
            b2 = base + 5.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">{value:.4}</text>",
            y = base + 18.0
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
        MARGIN_LEFT + plot_w / 2.0,
        h - 16.0,
        escape(&scene.x_label)
    );
    let _ = writeln!(
        out,
        "<text x=\"16\" y=\"{y:.2}\" transform=\"rotate(-90 16 {y:.2})\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
        escape(&scene.y_label),
        y = MARGIN_TOP + plot_h / 2.0
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">{}</text>",
        MARGIN_LEFT - 6.0,
        MARGIN_TOP + 4.0,
        max_count as u64
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// `plotNN.svg` with the index zero-padded to two digits; wider indexes keep
/// all their digits.
pub fn filename_for_cast(index: i64) -> Result<String> {
    if index < 0 {
        return Err(Error::invalid(format!("cast index must be nonnegative, got {index}")));
    }
    Ok(format!("plot{index:02}.svg"))
}
