//! Static SVG figures on log-log axes: trajectories, polygons and power curves.

use std::fmt::Write;

use crate::polygon::Curve;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// A log-log figure. Paths decide the view when present; otherwise the polygons do.
#[derive(Debug, Clone, Default)]
pub struct Figure {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub paths: Vec<Vec<[f64; 2]>>,
    pub polygons: Vec<Vec<[f64; 2]>>,
    /// Curves with a dash flag.
    pub curves: Vec<(Curve, bool)>,
}

struct View {
    lo: [f64; 2],
    hi: [f64; 2],
}

impl View {
    fn fit(points: impl Iterator<Item = [f64; 2]>) -> View {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points.filter(|p| p[0] > 0.0 && p[1] > 0.0) {
            for k in 0..2 {
                let v = p[k].log10();
                lo[k] = lo[k].min(v);
                hi[k] = hi[k].max(v);
            }
        }
        for k in 0..2 {
            if !lo[k].is_finite() {
                lo[k] = -1.0;
                hi[k] = 1.0;
            }
            let pad = ((hi[k] - lo[k]) * 0.05).max(0.1);
            lo[k] -= pad;
            hi[k] += pad;
        }
        View { lo, hi }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let span = SIZE - 2.0 * MARGIN;
        let x = MARGIN + (p[0].log10() - self.lo[0]) / (self.hi[0] - self.lo[0]) * span;
        let y = SIZE - MARGIN - (p[1].log10() - self.lo[1]) / (self.hi[1] - self.lo[1]) * span;
        (x, y)
    }
}

fn points_attr(view: &View, pts: &[[f64; 2]]) -> String {
    let mut s = String::new();
    for (i, p) in pts.iter().filter(|p| p[0] > 0.0 && p[1] > 0.0).enumerate() {
        let (x, y) = view.map(*p);
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x:.2},{y:.2}");
    }
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn ticks(lo: f64, hi: f64) -> Vec<i32> {
    let (a, b) = (lo.ceil() as i32, hi.floor() as i32);
    let stride = ((b - a) / 8).max(1);
    (a..=b).filter(|t| (t - a) % stride == 0).collect()
}

impl Figure {
    pub fn render(&self) -> String {
        let view = if self.paths.iter().any(|p| !p.is_empty()) {
            View::fit(self.paths.iter().flatten().copied())
        } else {
            View::fit(self.polygons.iter().flatten().copied())
        };
        let (x0, x1) = (MARGIN, SIZE - MARGIN);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(
            s,
            r#"<clipPath id="plot"><rect x="{x0}" y="{x0}" width="{w}" height="{w}"/></clipPath>"#,
            w = x1 - x0
        );
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<rect x="{x0}" y="{x0}" width="{w}" height="{w}" fill="none" stroke="black"/>"#,
            w = x1 - x0
        );
        for t in ticks(view.lo[0], view.hi[0]) {
            let (x, _) = view.map([10f64.powi(t), 1.0]);
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{x1}" x2="{x:.2}" y2="{y2}" stroke="black"/>"#,
                y2 = x1 + 5.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{y}" font-size="11" text-anchor="middle">1e{t}</text>"#,
                y = x1 + 18.0
            );
        }
        for t in ticks(view.lo[1], view.hi[1]) {
            let (_, y) = view.map([1.0, 10f64.powi(t)]);
            let _ = writeln!(
                s,
                r#"<line x1="{a}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/>"#,
                a = x0 - 5.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{a}" y="{y:.2}" font-size="11" text-anchor="end" dominant-baseline="middle">1e{t}</text>"#,
                a = x0 - 8.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{c}" y="30" font-size="14" text-anchor="middle">{}</text>"#,
            escape(&self.title),
            c = SIZE / 2.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{c}" y="{y}" font-size="12" text-anchor="middle">{}</text>"#,
            escape(&self.x_label),
            c = SIZE / 2.0,
            y = SIZE - 15.0
        );
        let _ = writeln!(
            s,
            r#"<text x="15" y="{c}" font-size="12" text-anchor="middle" transform="rotate(-90 15 {c})">{}</text>"#,
            escape(&self.y_label),
            c = SIZE / 2.0
        );
        let _ = writeln!(s, r#"<g clip-path="url(#plot)">"#);
        for (curve, dashed) in &self.curves {
            let xa = 10f64.powf(view.lo[0]);
            let xb = 10f64.powf(view.hi[0]);
            let (ax, ay) = view.map([xa, curve.eval(xa)]);
            let (bx, by) = view.map([xb, curve.eval(xb)]);
            if [ax, ay, bx, by].iter().all(|v| v.is_finite()) {
                let dash = if *dashed { r#" stroke-dasharray="4 3""# } else { "" };
                let _ = writeln!(
                    s,
                    r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="gray"{dash}/>"#
                );
            }
        }
        for poly in &self.polygons {
            let _ = writeln!(
                s,
                r##"<polygon points="{}" fill="#dde8f5" fill-opacity="0.5" stroke="#1f3b73"/>"##,
                points_attr(&view, poly)
            );
        }
        for (i, path) in self.paths.iter().enumerate() {
            let color = COLORS[i % COLORS.len()];
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.2"/>"#,
                points_attr(&view, path)
            );
            if let Some(p) = path.first() {
                let (x, y) = view.map(*p);
                let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#);
            }
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

/// Sweep diagram on linear axes: source complexes, their hull, reactions as arrows (violating
/// ones in red) and the tested directions drawn from the hull's centre.
#[derive(Debug, Clone, Default)]
pub struct SweepDiagram {
    pub title: String,
    pub sources: Vec<[f64; 2]>,
    pub hull: Vec<[f64; 2]>,
    /// `(source, target, violating)`.
    pub reactions: Vec<([f64; 2], [f64; 2], bool)>,
    pub directions: Vec<[f64; 2]>,
}

impl SweepDiagram {
    pub fn render(&self) -> String {
        let pts = self.sources.iter().chain(self.reactions.iter().map(|(_, t, _)| t));
        let (mut lo, mut hi) = ([0.0f64; 2], [1.0f64; 2]);
        for p in pts {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]) + 1.0;
        let (ox, oy) = (lo[0] - 0.5, lo[1] - 0.5);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        let map = |p: [f64; 2]| (MARGIN + (p[0] - ox) * scale, SIZE - MARGIN - (p[1] - oy) * scale);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(
            s,
            r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="context-stroke"/></marker></defs>"#
        );
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{c}" y="30" font-size="14" text-anchor="middle">{}</text>"#,
            escape(&self.title),
            c = SIZE / 2.0
        );
        let (ax, ay) = map([0.0, 0.0]);
        let _ = writeln!(
            s,
            r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{x:.2}" y2="{ay:.2}" stroke="black"/>"#,
            x = SIZE - MARGIN
        );
        let _ = writeln!(
            s,
            r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{ax:.2}" y2="{MARGIN:.2}" stroke="black"/>"#
        );
        if self.hull.len() >= 2 {
            let pts: Vec<String> = self
                .hull
                .iter()
                .map(|p| {
                    let (x, y) = map(*p);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(
                s,
                r##"<polygon points="{}" fill="#eef3fa" stroke="#1f3b73"/>"##,
                pts.join(" ")
            );
        }
        let centre = if self.hull.is_empty() {
            [0.0, 0.0]
        } else {
            let n = self.hull.len() as f64;
            [
                self.hull.iter().map(|p| p[0]).sum::<f64>() / n,
                self.hull.iter().map(|p| p[1]).sum::<f64>() / n,
            ]
        };
        for d in &self.directions {
            let len = d[0].hypot(d[1]);
            if len > 0.0 {
                let tip = [centre[0] + 0.6 * d[0] / len, centre[1] + 0.6 * d[1] / len];
                let ((x1, y1), (x2, y2)) = (map(centre), map(tip));
                let _ = writeln!(
                    s,
                    r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="gray" stroke-dasharray="3 2" marker-end="url(#arrow)"/>"#
                );
            }
        }
        for (src, tgt, bad) in &self.reactions {
            let ((x1, y1), (x2, y2)) = (map(*src), map(*tgt));
            let color = if *bad { "#d62728" } else { "#444444" };
            let _ = writeln!(
                s,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="1.4" marker-end="url(#arrow)"/>"#
            );
        }
        for p in &self.sources {
            let (x, y) = map(*p);
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
        }
        s.push_str("</svg>\n");
        s
    }
}
