//! Deterministic SVG output: tessellations of the disk, fundamental
//! domains, graphs of interval maps and vertex rulers.
//!
//! All coordinates are written with a fixed number of decimals so that the
//! same input always produces byte-identical files.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use bsmaps_core::moebius::{ccw_turns, turn_of};
use bsmaps_core::{
    CayleyBall, Complex64, GenSet, Geodesic, GroupPresentation, IntervalMarkovMap, PiecewiseMap, Rational,
};
use num_traits::ToPrimitive;
use thiserror::Error;

/// Largest word length accepted for tessellations.
pub const MAX_TESSELLATION_DEPTH: usize = 6;

/// Samples per piece in interval-map graphs.
const SAMPLES: usize = 512;

/// A rendering failure.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    /// The requested depth exceeds [`MAX_TESSELLATION_DEPTH`].
    #[error("depth {depth} exceeds the cap {cap}")]
    DepthTooLarge {
        /// Requested depth.
        depth: usize,
        /// Allowed maximum.
        cap: usize,
    },
    /// The input could not be rendered.
    #[error("cannot render: {0}")]
    Input(String),
}

/// Colour scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Palette {
    /// Coloured strokes.
    #[default]
    Color,
    /// Black and grey only.
    Mono,
}

impl Palette {
    fn main(&self) -> &'static str {
        match self {
            Palette::Color => "#1f4e9c",
            Palette::Mono => "#000000",
        }
    }

    fn accent(&self) -> &'static str {
        match self {
            Palette::Color => "#c0392b",
            Palette::Mono => "#000000",
        }
    }

    fn guide(&self) -> &'static str {
        "#888888"
    }

    /// Colour for piece `j`, cycling through a fixed list.
    fn piece(&self, j: usize) -> &'static str {
        const COLORS: [&str; 6] = ["#c0392b", "#27ae60", "#2980b9", "#8e44ad", "#d35400", "#16a085"];
        match self {
            Palette::Color => COLORS[j % COLORS.len()],
            Palette::Mono => {
                if j.is_multiple_of(2) {
                    "#000000"
                } else {
                    "#777777"
                }
            }
        }
    }
}

/// Image size, stroke width and colours.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderSpec {
    /// Width and height in pixels.
    pub size: u32,
    /// Base stroke width in pixels.
    pub stroke: f64,
    /// Colour scheme.
    pub palette: Palette,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            size: 800,
            stroke: 1.0,
            palette: Palette::Color,
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

struct Svg {
    body: String,
    size: u32,
}

impl Svg {
    fn new(size: u32) -> Self {
        Svg {
            body: String::new(),
            size,
        }
    }

    fn line(&mut self, p: (f64, f64), q: (f64, f64), attrs: &str) {
        writeln!(
            self.body,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {attrs}/>",
            num(p.0),
            num(p.1),
            num(q.0),
            num(q.1)
        )
        .expect("write to string");
    }

    fn path(&mut self, d: &str, attrs: &str) {
        writeln!(self.body, "<path d=\"{d}\" {attrs}/>").expect("write to string");
    }

    fn text(&mut self, p: (f64, f64), s: &str, attrs: &str) {
        writeln!(
            self.body,
            "<text x=\"{}\" y=\"{}\" {attrs}>{s}</text>",
            num(p.0),
            num(p.1)
        )
        .expect("write to string");
    }

    fn raw(&mut self, s: &str) {
        self.body.push_str(s);
        self.body.push('\n');
    }

    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n\
             <rect width=\"{s}\" height=\"{s}\" fill=\"#ffffff\"/>\n{}</svg>\n",
            self.body,
            s = self.size
        )
    }
}

/// Disk coordinates to screen coordinates.
struct DiskFrame {
    center: f64,
    radius: f64,
}

impl DiskFrame {
    fn new(size: u32) -> Self {
        let c = size as f64 / 2.0;
        DiskFrame {
            center: c,
            radius: c - 0.06 * size as f64,
        }
    }

    fn screen(&self, z: Complex64) -> (f64, f64) {
        (self.center + self.radius * z.re, self.center - self.radius * z.im)
    }

    /// SVG path of the geodesic between unit-circle points `a` and `b`.
    fn geodesic_path(&self, a: Complex64, b: Complex64) -> String {
        let p0 = self.screen(a);
        let p1 = self.screen(b);
        let circle = Geodesic::disk(a, b).ok().and_then(|g| g.orthogonal_circle());
        match circle {
            None => format!("M {} {} L {} {}", num(p0.0), num(p0.1), num(p1.0), num(p1.1)),
            Some((c, r)) => {
                let m = self.screen(c - c / c.norm() * r);
                let cross = (p1.0 - p0.0) * (m.1 - p0.1) - (p1.1 - p0.1) * (m.0 - p0.0);
                let sweep = if cross > 0.0 { 0 } else { 1 };
                let rs = num(self.radius * r);
                format!(
                    "M {} {} A {rs} {rs} 0 0 {sweep} {} {}",
                    num(p0.0),
                    num(p0.1),
                    num(p1.0),
                    num(p1.1)
                )
            }
        }
    }

    /// SVG path of the counter-clockwise boundary arc from `a` to `b`.
    fn boundary_arc_path(&self, a: Complex64, b: Complex64) -> String {
        let p0 = self.screen(a);
        let p1 = self.screen(b);
        let len = ccw_turns(turn_of(a), turn_of(b));
        let large = if len > 0.5 { 1 } else { 0 };
        let rs = num(self.radius);
        format!(
            "M {} {} A {rs} {rs} 0 {large} 0 {} {}",
            num(p0.0),
            num(p0.1),
            num(p1.0),
            num(p1.1)
        )
    }

    fn circle(&self, svg: &mut Svg, stroke: &str, width: f64) {
        svg.raw(&format!(
            "<circle cx=\"{c}\" cy=\"{c}\" r=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{}\"/>",
            num(self.radius),
            num(width),
            c = num(self.center)
        ));
    }
}

fn turn_key(z: Complex64) -> i64 {
    let t = turn_of(z);
    let k = (t * 1e9).round() as i64;
    k % 1_000_000_000
}

/// Images of the fundamental polygon's edges under all reduced words of
/// length at most `depth`, deduplicated. Words are visited sphere by sphere
/// in a fixed order, so the list for a larger depth extends the list for a
/// smaller one.
pub fn tessellation_edges(
    gp: &GroupPresentation,
    depth: usize,
) -> Result<Vec<(Complex64, Complex64)>, RenderError> {
    if depth > MAX_TESSELLATION_DEPTH {
        return Err(RenderError::DepthTooLarge {
            depth,
            cap: MAX_TESSELLATION_DEPTH,
        });
    }
    let ball = CayleyBall::build(&GenSet::standard(gp.free_rank()), depth)
        .map_err(|e| RenderError::Input(e.to_string()))?;
    let edges: Vec<(Complex64, Complex64)> = gp
        .domain()
        .edges()
        .iter()
        .map(|g| {
            let (a, b) = g.endpoints();
            (a.z(), b.z())
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in 0..=depth {
        for w in ball.sphere(r) {
            let m = gp.evaluate_word(w);
            for &(a, b) in &edges {
                let (ia, ib) = (m.apply_disk(a), m.apply_disk(b));
                let (ka, kb) = (turn_key(ia), turn_key(ib));
                if ka == kb {
                    continue;
                }
                if seen.insert((ka.min(kb), ka.max(kb))) {
                    out.push((ia, ib));
                }
            }
        }
    }
    Ok(out)
}

/// The tessellation of the disk by translates of the fundamental polygon.
pub fn render_tessellation(
    gp: &GroupPresentation,
    depth: usize,
    spec: &RenderSpec,
) -> Result<String, RenderError> {
    let edges = tessellation_edges(gp, depth)?;
    let frame = DiskFrame::new(spec.size);
    let mut svg = Svg::new(spec.size);
    frame.circle(&mut svg, spec.palette.main(), 1.5 * spec.stroke);
    let attrs = format!(
        "class=\"edge\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"",
        spec.palette.main(),
        num(spec.stroke)
    );
    for (a, b) in edges {
        svg.path(&frame.geodesic_path(a, b), &attrs);
    }
    Ok(svg.finish())
}

/// The ideal polygon on the break points of a map, with each complementary
/// arc coloured and labelled by its piece.
pub fn render_domain(pm: &PiecewiseMap, spec: &RenderSpec) -> Result<String, RenderError> {
    let fd = pm
        .fundamental_domain()
        .map_err(|e| RenderError::Input(e.to_string()))?;
    let frame = DiskFrame::new(spec.size);
    let mut svg = Svg::new(spec.size);
    frame.circle(&mut svg, spec.palette.guide(), spec.stroke);
    let labels = pm.label_strings();
    for (j, (arc, _)) in fd.exterior.iter().enumerate() {
        let color = spec.palette.piece(j);
        svg.path(
            &frame.boundary_arc_path(arc.start(), arc.end()),
            &format!(
                "class=\"arc\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\"",
                num(4.0 * spec.stroke)
            ),
        );
        let m = arc.midpoint() * 1.07;
        let label = labels.get(j).cloned().unwrap_or_else(|| j.to_string());
        svg.text(
            frame.screen(m),
            &escape(&label),
            &format!(
                "class=\"label\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\" fill=\"{color}\"",
                num(spec.size as f64 / 50.0)
            ),
        );
    }
    let attrs = format!(
        "class=\"edge\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"",
        spec.palette.main(),
        num(1.5 * spec.stroke)
    );
    for g in fd.polygon.edges() {
        let (a, b) = g.endpoints();
        svg.path(&frame.geodesic_path(a.z(), b.z()), &attrs);
    }
    Ok(svg.finish())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Plot box for interval graphs.
struct PlotFrame {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
    ymin: f64,
    ymax: f64,
}

impl PlotFrame {
    fn new(size: u32, ymin: f64, ymax: f64) -> Self {
        let m = 0.08 * size as f64;
        PlotFrame {
            left: m,
            top: m,
            width: size as f64 - 2.0 * m,
            height: size as f64 - 2.0 * m,
            ymin,
            ymax,
        }
    }

    fn screen(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.left + self.width * x,
            self.top + self.height * (1.0 - (y - self.ymin) / (self.ymax - self.ymin)),
        )
    }

    fn axes(&self, svg: &mut Svg, spec: &RenderSpec) {
        svg.raw(&format!(
            "<rect class=\"axes\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{}\"/>",
            num(self.left),
            num(self.top),
            num(self.width),
            num(self.height),
            num(spec.stroke)
        ));
    }

    fn polyline(&self, pts: &[(f64, f64)], attrs: &str) -> String {
        let mut d = String::new();
        for (i, &(x, y)) in pts.iter().enumerate() {
            let (sx, sy) = self.screen(x, y);
            let _ = write!(d, "{}{} {}", if i == 0 { "M " } else { " L " }, num(sx), num(sy));
        }
        format!("<path d=\"{d}\" {attrs}/>")
    }
}

fn coeffs_f64(p: &bsmaps_core::FlPiece) -> [f64; 4] {
    p.coeffs.clone().map(|c| c.to_f64().unwrap_or(f64::NAN))
}

fn sample_xs(lo: &Rational, hi: &Rational) -> Vec<f64> {
    let (a, b) = (lo.to_f64().unwrap_or(0.0), hi.to_f64().unwrap_or(1.0));
    (0..=SAMPLES)
        .map(|i| a + (b - a) * i as f64 / SAMPLES as f64)
        .collect()
}

/// Sampled branches of `F`, each continuous on its closed domain.
fn map_branches(imap: &IntervalMarkovMap) -> Vec<Vec<(f64, f64)>> {
    imap.pieces()
        .iter()
        .map(|p| {
            let [a, b, c, d] = coeffs_f64(p);
            let f = |x: f64| (a * x + b) / (c * x + d);
            let xs = sample_xs(&p.lo, &p.hi);
            let shift = if p.wrap {
                f((xs[0] + xs[SAMPLES]) / 2.0).floor()
            } else {
                0.0
            };
            xs.into_iter().map(|x| (x, f(x) - shift)).collect()
        })
        .collect()
}

/// Sampled `ln |F′|` per piece.
fn log_deriv_branches(imap: &IntervalMarkovMap) -> Vec<Vec<(f64, f64)>> {
    imap.pieces()
        .iter()
        .map(|p| {
            let [a, b, c, d] = coeffs_f64(p);
            let det = (a * d - b * c).abs();
            sample_xs(&p.lo, &p.hi)
                .into_iter()
                .map(|x| (x, (det / ((c * x + d) * (c * x + d))).ln()))
                .collect()
        })
        .collect()
}

fn interval_graph(
    imap: &IntervalMarkovMap,
    branches: Vec<Vec<(f64, f64)>>,
    ymin: f64,
    ymax: f64,
    guide: Option<(f64, &str)>,
    spec: &RenderSpec,
) -> String {
    let frame = PlotFrame::new(spec.size, ymin, ymax);
    let mut svg = Svg::new(spec.size);
    frame.axes(&mut svg, spec);
    let dash = format!(
        "class=\"break\" stroke=\"{}\" stroke-width=\"{}\" stroke-dasharray=\"4 4\"",
        spec.palette.guide(),
        num(spec.stroke)
    );
    for x in imap.break_points() {
        let x = x.to_f64().unwrap_or(0.0);
        if x > 0.0 && x < 1.0 {
            svg.line(frame.screen(x, ymin), frame.screen(x, ymax), &dash);
        }
    }
    if let Some((y, label)) = guide {
        let attrs = format!(
            "class=\"guide\" stroke=\"{}\" stroke-width=\"{}\" stroke-dasharray=\"8 4\"",
            spec.palette.accent(),
            num(spec.stroke)
        );
        svg.line(frame.screen(0.0, y), frame.screen(1.0, y), &attrs);
        let (lx, ly) = frame.screen(1.0, y);
        svg.text(
            (lx + 4.0, ly + 4.0),
            label,
            &format!(
                "font-family=\"sans-serif\" font-size=\"{}\" fill=\"{}\"",
                num(spec.size as f64 / 60.0),
                spec.palette.accent()
            ),
        );
    }
    let attrs = format!(
        "class=\"branch\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"",
        spec.palette.main(),
        num(1.5 * spec.stroke)
    );
    for b in branches {
        svg.raw(&frame.polyline(&b, &attrs));
    }
    let label = format!(
        "font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\"",
        num(spec.size as f64 / 50.0)
    );
    let (x0, y0) = frame.screen(0.0, ymin);
    let (x1, _) = frame.screen(1.0, ymin);
    svg.text((x0, y0 + 18.0), "0", &label);
    svg.text((x1, y0 + 18.0), "1", &label);
    svg.text(((x0 + x1) / 2.0, frame.top - 10.0), &escape(imap.name()), &label);
    svg.finish()
}

/// Graph of `F` on `[0, 1]`, one branch per piece, with dashed verticals at
/// the break points.
pub fn render_map_graph(imap: &IntervalMarkovMap, spec: &RenderSpec) -> String {
    interval_graph(imap, map_branches(imap), 0.0, 1.0, None, spec)
}

/// Graph of `ln |F′|` with the horizontal guide `y = ln 3`.
pub fn render_logderiv_graph(imap: &IntervalMarkovMap, spec: &RenderSpec) -> String {
    let branches = log_deriv_branches(imap);
    let top = branches
        .iter()
        .flatten()
        .map(|p| p.1)
        .filter(|y| y.is_finite())
        .fold(3f64.ln(), f64::max);
    let ymax = (top * 1.1 * 4.0).ceil() / 4.0;
    interval_graph(imap, branches, 0.0, ymax, Some((3f64.ln(), "y = ln 3")), spec)
}

/// The rank-`n` vertices of `F` as ticks on `[0, 1]`. Taller ticks appear
/// at lower rank. Exact fractions are printed for ranks up to 3.
pub fn render_vertex_ruler(
    imap: &IntervalMarkovMap,
    rank: usize,
    spec: &RenderSpec,
) -> Result<String, RenderError> {
    let sets = imap
        .vertex_sets(rank)
        .map_err(|e| RenderError::Input(e.to_string()))?;
    let size = spec.size as f64;
    let (left, right, base) = (0.06 * size, 0.94 * size, 0.6 * size);
    let tall = 0.3 * size;
    let mut svg = Svg::new(spec.size);
    svg.line(
        (left, base),
        (right, base),
        &format!(
            "class=\"axis\" stroke=\"#000000\" stroke-width=\"{}\"",
            num(spec.stroke)
        ),
    );
    let last = sets.last().expect("nonempty");
    for v in last {
        let first = sets
            .iter()
            .position(|s| s.binary_search(v).is_ok())
            .unwrap_or(rank);
        let h = tall * (rank + 1 - first) as f64 / (rank + 1) as f64;
        let x = left + (right - left) * v.to_f64().unwrap_or(0.0);
        let color = spec.palette.piece(first);
        svg.line(
            (x, base),
            (x, base - h),
            &format!(
                "class=\"tick\" stroke=\"{color}\" stroke-width=\"{}\"",
                num(spec.stroke)
            ),
        );
        if rank <= 3 {
            svg.text(
                (x, base + 14.0),
                &v.to_string(),
                &format!(
                    "class=\"label\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"end\" transform=\"rotate(-60 {} {})\"",
                    num(size / 70.0),
                    num(x),
                    num(base + 14.0)
                ),
            );
        }
    }
    svg.text(
        (size / 2.0, 0.2 * size),
        &format!("{}: rank {rank}, {} vertices", escape(imap.name()), last.len()),
        &format!(
            "font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\"",
            num(size / 40.0)
        ),
    );
    Ok(svg.finish())
}
