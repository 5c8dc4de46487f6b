//! Self-contained SVG figures.
//!
//! Output is a pure function of the [`PlotSpec`]: no timestamps, no random
//! ids, fixed-precision coordinates.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::boundary::{BoundaryPoint, Side};
use crate::classify::{SweepResult, Verdict};
use crate::potential::PotentialGrid;
use crate::stationary::{CurveAxis, Equilibrium, EquilibriumKind, FixedPointCurve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlotKind {
    PhasePlane,
    Contour,
    BoundaryOverlay,
    TimeSeries,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Layer {
    /// Filled cells where `0 < P < level`, white elsewhere, with iso-lines at
    /// fifths of `level`.
    PotentialField {
        grid: PotentialGrid,
        level: f64,
    },
    /// Two-colour bounded / divergent map.
    VerdictMap(SweepResult),
    /// The four fixed-point curve branches (zero sets of `f` in red, `g` in blue).
    FixedPointCurves,
    /// `w = 0`, `u = 0`, `u = w` solid; `u = -w` dashed.
    InvariantLines,
    /// The line `w = u` only.
    Diagonal,
    Equilibria(Vec<Equilibrium>),
    Orbit {
        points: Vec<(f64, f64)>,
        color: String,
    },
    /// Lower limits as blue squares, upper limits as black circles.
    BoundaryPoints(Vec<BoundaryPoint>),
    Series {
        label: String,
        points: Vec<(f64, f64)>,
        color: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub kind: PlotKind,
    pub title: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub layers: Vec<Layer>,
}

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;
/// Cap on drawn cells per axis for raster-like layers.
const MAX_CELLS: usize = 200;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    w: f64,
    h: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN_LEFT + (x - self.x0) / (self.x1 - self.x0) * self.w
    }

    fn py(&self, y: f64) -> f64 {
        MARGIN_TOP + (1.0 - (y - self.y0) / (self.y1 - self.y0)) * self.h
    }
}

fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0) {
        return vec![lo];
    }
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn fmt_tick(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

/// Five-stop perceptual ramp, `t` in `[0, 1]`.
fn ramp(t: f64) -> String {
    const STOPS: [(u8, u8, u8); 5] = [
        (0x44, 0x01, 0x54),
        (0x3b, 0x52, 0x8b),
        (0x21, 0x91, 0x8c),
        (0x5e, 0xc9, 0x62),
        (0xfd, 0xe7, 0x25),
    ];
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let k = (t.floor() as usize).min(STOPS.len() - 2);
    let f = t - k as f64;
    let mix = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * f).round() as u8;
    let (a, b) = (STOPS[k], STOPS[k + 1]);
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(a.0, b.0),
        mix(a.1, b.1),
        mix(a.2, b.2)
    )
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl PlotSpec {
    pub fn new(
        kind: PlotKind,
        title: impl Into<String>,
        x_range: (f64, f64),
        y_range: (f64, f64),
    ) -> Self {
        Self {
            kind,
            title: title.into(),
            x_range,
            y_range,
            layers: Vec::new(),
        }
    }

    pub fn layer(mut self, layer: Layer) -> Self {
        self.layers.push(layer);
        self
    }

    fn axis_labels(&self) -> (&'static str, &'static str) {
        match self.kind {
            PlotKind::TimeSeries => ("t", "amplitude"),
            PlotKind::BoundaryOverlay => ("u0", "w0"),
            _ => ("u", "w"),
        }
    }

    pub fn render(&self) -> String {
        let (pw, ph) = match self.kind {
            PlotKind::TimeSeries => (800.0, 360.0),
            _ => (560.0, 560.0),
        };
        let frame = Frame {
            x0: self.x_range.0,
            x1: self.x_range.1,
            y0: self.y_range.0,
            y1: self.y_range.1,
            w: pw,
            h: ph,
        };
        let width = MARGIN_LEFT + pw + MARGIN_RIGHT;
        let height = MARGIN_TOP + ph + MARGIN_BOTTOM;

        let mut s = String::new();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
        )
        .unwrap();
        writeln!(
            s,
            r#"<defs><clipPath id="plot-area"><rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{pw}" height="{ph}"/></clipPath></defs>"#
        )
        .unwrap();
        writeln!(
            s,
            r#"<rect width="{width}" height="{height}" fill="white"/>"#
        )
        .unwrap();
        writeln!(s, r#"<g clip-path="url(#plot-area)">"#).unwrap();
        for layer in &self.layers {
            render_layer(&mut s, &frame, layer);
        }
        s.push_str("</g>\n");
        render_axes(&mut s, &frame, self.axis_labels());
        writeln!(
            s,
            r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
            MARGIN_LEFT + pw / 2.0,
            xml_escape(&self.title)
        )
        .unwrap();
        render_legend(&mut s, &frame, &self.layers);
        s.push_str("</svg>\n");
        s
    }
}

fn render_axes(s: &mut String, f: &Frame, (xl, yl): (&str, &str)) {
    writeln!(
        s,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        f.w, f.h
    )
    .unwrap();
    let bottom = MARGIN_TOP + f.h;
    for x in nice_ticks(f.x0, f.x1) {
        let px = f.px(x);
        writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{bottom:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            bottom + 5.0,
            bottom + 18.0,
            fmt_tick(x)
        )
        .unwrap();
    }
    for y in nice_ticks(f.y0, f.y1) {
        let py = f.py(y);
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{MARGIN_LEFT}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 5.0,
            MARGIN_LEFT - 8.0,
            py + 4.0,
            fmt_tick(y)
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{xl}</text>"#,
        MARGIN_LEFT + f.w / 2.0,
        bottom + 40.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{yl}</text>"#,
        MARGIN_TOP + f.h / 2.0,
        MARGIN_TOP + f.h / 2.0
    )
    .unwrap();
}

fn render_legend(s: &mut String, f: &Frame, layers: &[Layer]) {
    let labels: Vec<(&str, &str)> = layers
        .iter()
        .filter_map(|l| match l {
            Layer::Series { label, color, .. } => Some((label.as_str(), color.as_str())),
            _ => None,
        })
        .collect();
    for (k, (label, color)) in labels.iter().enumerate() {
        let y = MARGIN_TOP + 16.0 + 16.0 * k as f64;
        let x = MARGIN_LEFT + f.w - 90.0;
        writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            x + 20.0,
            x + 26.0,
            y + 4.0,
            xml_escape(label)
        )
        .unwrap();
    }
}

fn polyline(s: &mut String, f: &Frame, pts: impl IntoIterator<Item = (f64, f64)>, attrs: &str) {
    s.push_str("<polyline fill=\"none\" ");
    s.push_str(attrs);
    s.push_str(" points=\"");
    let mut first = true;
    for (x, y) in pts {
        if !(x.is_finite() && y.is_finite()) {
            continue;
        }
        if !first {
            s.push(' ');
        }
        first = false;
        write!(s, "{:.2},{:.2}", f.px(x), f.py(y)).unwrap();
    }
    s.push_str("\"/>\n");
}

fn cell_rects(
    s: &mut String,
    f: &Frame,
    (x_range, nx): ((f64, f64), usize),
    (y_range, ny): ((f64, f64), usize),
    mut color: impl FnMut(usize, usize) -> Option<String>,
) {
    let stride_x = nx.div_ceil(MAX_CELLS).max(1);
    let stride_y = ny.div_ceil(MAX_CELLS).max(1);
    let dx = if nx > 1 {
        (x_range.1 - x_range.0) / (nx - 1) as f64
    } else {
        x_range.1 - x_range.0
    };
    let dy = if ny > 1 {
        (y_range.1 - y_range.0) / (ny - 1) as f64
    } else {
        y_range.1 - y_range.0
    };
    let (cw, ch) = (dx * stride_x as f64, dy * stride_y as f64);
    for j in (0..ny).step_by(stride_y) {
        for i in (0..nx).step_by(stride_x) {
            let Some(c) = color(i, j) else { continue };
            let x = x_range.0 + i as f64 * dx - cw / 2.0;
            let y = y_range.0 + j as f64 * dy + ch / 2.0;
            writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{c}"/>"#,
                f.px(x),
                f.py(y),
                (f.px(x + cw) - f.px(x)).abs() + 0.3,
                (f.py(y - ch) - f.py(y)).abs() + 0.3
            )
            .unwrap();
        }
    }
}

/// Marching-squares segments of `grid` at `level`, in data coordinates.
pub fn contour_segments(grid: &PotentialGrid, level: f64) -> Vec<[(f64, f64); 2]> {
    let mut segs = Vec::new();
    let lerp = |a: (f64, f64, f64), b: (f64, f64, f64)| {
        let t = (level - a.2) / (b.2 - a.2);
        (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
    };
    for j in 0..grid.n_w.saturating_sub(1) {
        for i in 0..grid.n_u.saturating_sub(1) {
            let corner = |di: usize, dj: usize| {
                (
                    grid.u_at(i + di),
                    grid.w_at(j + dj),
                    grid.get(i + di, j + dj),
                )
            };
            let (a, b, c, d) = (corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1));
            if [a.2, b.2, c.2, d.2].iter().any(|v| !v.is_finite()) {
                continue;
            }
            let mut hits = Vec::with_capacity(4);
            for (p, q) in [(a, b), (b, c), (d, c), (a, d)] {
                if (p.2 >= level) != (q.2 >= level) {
                    hits.push(lerp(p, q));
                }
            }
            for pair in hits.chunks_exact(2) {
                segs.push([pair[0], pair[1]]);
            }
        }
    }
    segs
}

fn render_layer(s: &mut String, f: &Frame, layer: &Layer) {
    match layer {
        Layer::PotentialField { grid, level } => {
            cell_rects(
                s,
                f,
                (grid.u_range, grid.n_u),
                (grid.w_range, grid.n_w),
                |i, j| {
                    let v = grid.get(i, j);
                    (v > 0.0 && v < *level).then(|| ramp(v / level))
                },
            );
            for k in 1..=5 {
                let lv = level * k as f64 / 5.0;
                let segs = contour_segments(grid, lv);
                if segs.is_empty() {
                    continue;
                }
                write!(s, r##"<path class="contour" data-level="{lv:.4}" fill="none" stroke="#333" stroke-width="0.6" d=""##).unwrap();
                for [p, q] in segs {
                    write!(
                        s,
                        "M{:.2} {:.2}L{:.2} {:.2}",
                        f.px(p.0),
                        f.py(p.1),
                        f.px(q.0),
                        f.py(q.1)
                    )
                    .unwrap();
                }
                s.push_str("\"/>\n");
            }
        }
        Layer::VerdictMap(sw) => cell_rects(
            s,
            f,
            (sw.u0_range, sw.n_u),
            (sw.w0_range, sw.n_w),
            |i, j| {
                Some(
                    match sw.get(i, j).verdict() {
                        Some(Verdict::Bounded) => "#2c7fb8",
                        Some(Verdict::Divergent) => "#fdd49e",
                        None => "#999999",
                    }
                    .to_string(),
                )
            },
        ),
        Layer::FixedPointCurves => {
            for c in FixedPointCurve::ALL {
                let (range, color) = match c.which {
                    CurveAxis::UOfW => ((f.y0, f.y1), "#d62728"),
                    CurveAxis::WOfU => ((f.x0, f.x1), "#1f77b4"),
                };
                let n = 400;
                let pts =
                    (0..=n).map(|k| c.point(range.0 + (range.1 - range.0) * k as f64 / n as f64));
                polyline(
                    s,
                    f,
                    pts,
                    &format!(r#"stroke="{color}" stroke-width="1.5""#),
                );
            }
        }
        Layer::InvariantLines => {
            let big = 1e3;
            polyline(
                s,
                f,
                [(-big, 0.0), (big, 0.0)],
                r##"stroke="#d62728" stroke-width="1.5""##,
            );
            polyline(
                s,
                f,
                [(0.0, -big), (0.0, big)],
                r##"stroke="#d62728" stroke-width="1.5""##,
            );
            polyline(
                s,
                f,
                [(-big, -big), (big, big)],
                r##"stroke="#d62728" stroke-width="1.5""##,
            );
            polyline(
                s,
                f,
                [(-big, big), (big, -big)],
                r##"stroke="#1f77b4" stroke-width="1.5" stroke-dasharray="6 4""##,
            );
        }
        Layer::Diagonal => {
            let big = 1e3;
            polyline(
                s,
                f,
                [(-big, -big), (big, big)],
                r#"stroke="black" stroke-width="1.2""#,
            );
        }
        Layer::Equilibria(eqs) => {
            for e in eqs {
                let fill = match e.kind {
                    EquilibriumKind::CoupledNontrivial => "#2ca02c",
                    _ => "black",
                };
                writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{fill}"/>"#,
                    f.px(e.u),
                    f.py(e.w)
                )
                .unwrap();
            }
        }
        Layer::Orbit { points, color } | Layer::Series { points, color, .. } => {
            polyline(
                s,
                f,
                points.iter().copied(),
                &format!(r#"stroke="{color}" stroke-width="0.8""#),
            );
        }
        Layer::BoundaryPoints(points) => {
            for b in points {
                let (x, y) = (f.px(b.u0), f.py(b.w0));
                match b.side {
                    Side::Lower => writeln!(
                        s,
                        r##"<rect x="{:.2}" y="{:.2}" width="7" height="7" fill="#1f4fd6"/>"##,
                        x - 3.5,
                        y - 3.5
                    ),
                    Side::Upper => writeln!(
                        s,
                        r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="none" stroke="black" stroke-width="1.5"/>"#
                    ),
                }
                .unwrap();
            }
        }
    }
}
