//! SVG drawing of a polygon with its visible pairs styled by class.
//!
//! When a few vertices lie very far from the rest (the counterexample's hull
//! corners) the main panel zooms on the others and clips; each far vertex gets
//! a break marker where its direction leaves the frame, and a small inset shows
//! the whole polygon at true scale.

use std::fmt::Write as _;

use crate::analysis::AnalysisResult;
use crate::classifier::EdgeClass;

const MAIN: f64 = 760.0;
const MARGIN: f64 = 40.0;
const INSET: f64 = 240.0;
/// A vertex this many median distances from the median point counts as far.
const FAR_FACTOR: f64 = 8.0;

#[derive(Debug, Clone, Default)]
pub struct RenderOptions {
    pub title: Option<String>,
    /// Pairs drawn with an extra highlight halo.
    pub highlight: Vec<(usize, usize)>,
    /// Label vertices with their indices.
    pub labels: bool,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

/// Indices of vertices far from the bulk of the polygon.
pub fn far_vertices(pts: &[[f64; 2]]) -> Vec<usize> {
    if pts.len() < 5 {
        return Vec::new();
    }
    let cx = median(pts.iter().map(|p| p[0]).collect());
    let cy = median(pts.iter().map(|p| p[1]).collect());
    let d: Vec<f64> = pts.iter().map(|p| (p[0] - cx).hypot(p[1] - cy)).collect();
    let md = median(d.clone());
    if md <= 0.0 {
        return Vec::new();
    }
    let far: Vec<usize> = (0..pts.len()).filter(|&i| d[i] > FAR_FACTOR * md).collect();
    // Keep at least three vertices in the zoomed panel.
    if pts.len() - far.len() < 3 {
        Vec::new()
    } else {
        far
    }
}

/// Maps world coordinates into a square box, y up.
struct View {
    min: [f64; 2],
    scale: f64,
    origin: [f64; 2],
    size: f64,
}

impl View {
    fn fit(pts: &[[f64; 2]], origin: [f64; 2], size: f64, pad: f64) -> View {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in pts {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0);
        let scale = (size - 2.0 * pad) / span;
        // Centre the shorter side.
        let min = [
            lo[0] - ((span - (hi[0] - lo[0])) / 2.0) - pad / scale,
            lo[1] - ((span - (hi[1] - lo[1])) / 2.0) - pad / scale,
        ];
        View { min, scale, origin, size }
    }

    fn map(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.origin[0] + (p[0] - self.min[0]) * self.scale,
            self.origin[1] + self.size - (p[1] - self.min[1]) * self.scale,
        ]
    }
}

fn class_name(c: EdgeClass) -> &'static str {
    match c {
        EdgeClass::Internal => "internal",
        EdgeClass::External => "external",
        EdgeClass::Boundary => "boundary",
        EdgeClass::Ambiguous => "ambiguous",
    }
}

const STYLE: &str = "<style>
  .boundary { stroke: #111; stroke-width: 2.2; fill: none; }
  .internal { stroke: #1b7f3b; stroke-width: 1.1; }
  .external { stroke: #c0392b; stroke-width: 1.1; stroke-dasharray: 6 4; }
  .ambiguous { stroke: #e67e22; stroke-width: 2.6; stroke-dasharray: 10 3 2 3; }
  .halo { stroke: #f1c40f; stroke-width: 9; stroke-opacity: 0.45; }
  .vertex { fill: #111; }
  .label { font: 12px sans-serif; fill: #222; }
  .break { font: 12px sans-serif; fill: #555; }
  .frame { fill: none; stroke: #999; stroke-width: 1; }
</style>
";

fn fmt2(p: [f64; 2]) -> String {
    format!("{:.2},{:.2}", p[0], p[1])
}

fn draw(out: &mut String, r: &AnalysisResult, pts: &[[f64; 2]], view: &View, opts: &RenderOptions, small: bool) {
    let halo: Vec<(usize, usize)> = opts.highlight.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for e in &r.edges {
        let (a, b) = e.pair;
        if e.class == EdgeClass::Boundary {
            continue;
        }
        let (p, q) = (view.map(pts[a]), view.map(pts[b]));
        if !small && halo.contains(&e.pair) {
            let _ = writeln!(out, "<line class=\"halo\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>", p[0], p[1], q[0], q[1]);
        }
        let _ = writeln!(
            out,
            "<line class=\"{}\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"><title>({a}, {b}) {:?} {}</title></line>",
            class_name(e.class),
            p[0],
            p[1],
            q[0],
            q[1],
            e.class,
            e.provenance.label()
        );
    }
    let ring: Vec<String> = pts.iter().map(|&p| fmt2(view.map(p))).collect();
    let _ = writeln!(out, "<polygon class=\"boundary\" points=\"{}\"/>", ring.join(" "));
    let rad = if small { 1.5 } else { 3.0 };
    for (i, &p) in pts.iter().enumerate() {
        let s = view.map(p);
        let _ = writeln!(out, "<circle class=\"vertex\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"{rad}\"/>", s[0], s[1]);
        if opts.labels && !small {
            let _ = writeln!(out, "<text class=\"label\" x=\"{:.2}\" y=\"{:.2}\">{i}</text>", s[0] + 5.0, s[1] - 5.0);
        }
    }
}

/// Point where the ray from `c` towards `p` leaves the square `[lo, hi]^2`.
fn exit_point(c: [f64; 2], p: [f64; 2], lo: f64, hi: f64) -> [f64; 2] {
    let d = [p[0] - c[0], p[1] - c[1]];
    let mut t = f64::INFINITY;
    for k in 0..2 {
        if d[k] > 0.0 {
            t = t.min((hi - c[k]) / d[k]);
        } else if d[k] < 0.0 {
            t = t.min((lo - c[k]) / d[k]);
        }
    }
    [c[0] + t * d[0], c[1] + t * d[1]]
}

pub fn render_svg(r: &AnalysisResult, opts: &RenderOptions) -> String {
    let pts: Vec<[f64; 2]> = r.vertices.iter().map(|p| [p.x as f64, p.y as f64]).collect();
    let far = far_vertices(&pts);
    let width = if far.is_empty() { MAIN } else { MAIN + INSET + MARGIN };
    let top = if opts.title.is_some() { 30.0 } else { 0.0 };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = width,
        h = MAIN + top
    );
    out.push_str(STYLE);
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    if let Some(t) = &opts.title {
        let _ = writeln!(out, "<text class=\"label\" x=\"{MARGIN}\" y=\"20\">{}</text>", escape(t));
    }
    let near: Vec<[f64; 2]> = (0..pts.len()).filter(|i| !far.contains(i)).map(|i| pts[i]).collect();
    let view = View::fit(&near, [0.0, top], MAIN, MARGIN);
    if far.is_empty() {
        draw(&mut out, r, &pts, &view, opts, false);
    } else {
        let (lo, hi) = (MARGIN / 2.0, MAIN - MARGIN / 2.0);
        let _ = writeln!(
            out,
            "<clipPath id=\"main\"><rect x=\"{lo}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\"/></clipPath>",
            lo + top,
            hi - lo,
            hi - lo
        );
        let _ = writeln!(out, "<rect class=\"frame\" x=\"{lo}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\"/>", lo + top, hi - lo, hi - lo);
        out.push_str("<g clip-path=\"url(#main)\">\n");
        draw(&mut out, r, &pts, &view, opts, false);
        out.push_str("</g>\n");
        let c = [MAIN / 2.0, MAIN / 2.0 + top];
        for &i in &far {
            let s = view.map(pts[i]);
            let e = exit_point(c, s, lo, hi);
            let e = [e[0], e[1].clamp(lo + top, hi + top)];
            let lx = e[0].clamp(lo + 4.0, hi - 150.0);
            let ly = (e[1] + if e[1] < c[1] { 16.0 } else { -8.0 }).clamp(top + 14.0, top + MAIN - 4.0);
            let _ = writeln!(
                out,
                "<text class=\"break\" x=\"{lx:.2}\" y=\"{ly:.2}\">// {i} at ({}, {})</text>",
                r.vertices[i].x, r.vertices[i].y
            );
        }
        let ox = MAIN + MARGIN / 2.0;
        let inset = View::fit(&pts, [ox, top + MARGIN], INSET, 10.0);
        let _ = writeln!(out, "<rect class=\"frame\" x=\"{ox}\" y=\"{:.2}\" width=\"{INSET}\" height=\"{INSET}\"/>", top + MARGIN);
        let _ = writeln!(out, "<text class=\"label\" x=\"{ox}\" y=\"{:.2}\">whole polygon</text>", top + MARGIN - 6.0);
        draw(&mut out, r, &pts, &inset, opts, true);
    }
    legend(&mut out, width, top);
    out.push_str("</svg>\n");
    out
}

fn legend(out: &mut String, width: f64, top: f64) {
    let x = width - 150.0;
    let y0 = top + MAIN - 80.0;
    for (k, c) in ["internal", "external", "ambiguous", "boundary"].iter().enumerate() {
        let y = y0 + 18.0 * k as f64;
        let _ = writeln!(out, "<line class=\"{c}\" x1=\"{x}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\"/>", x + 40.0);
        let _ = writeln!(out, "<text class=\"label\" x=\"{}\" y=\"{}\">{c}</text>", x + 48.0, y + 4.0);
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::polygon::Polygon;

    #[test]
    fn styles_and_far_vertices() {
        let p = Polygon::from_coords(&[(0, 0), (10, 0), (10, 10), (5, 4), (0, 10)]).unwrap();
        let r = analyze(&p, 0, false).unwrap();
        let svg = render_svg(&r, &RenderOptions::default());
        assert!(svg.contains("class=\"external\""));
        assert!(svg.contains("class=\"internal\""));
        assert!(!svg.contains("clipPath"));

        let pair = crate::oracle::counterexample::reconstruct_counterexample();
        let r = analyze(&pair.a, 0, false).unwrap();
        let svg = render_svg(&r, &RenderOptions { highlight: vec![(0, 8)], labels: true, title: None });
        assert!(svg.contains("clipPath"));
        assert!(svg.contains("class=\"ambiguous\""));
        assert!(svg.contains("class=\"halo\""));
        for v in [9, 10, 11] {
            assert!(svg.contains(&format!("// {v} at")), "missing break marker for {v}");
        }
    }
}
