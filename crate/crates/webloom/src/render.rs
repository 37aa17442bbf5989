//! Deterministic SVG drawings of maps, webs, matchings and dimer overlays.
//! Boundary vertices sit on a circle in clockwise order. Interior vertices
//! are placed at the barycenter of their neighbours (Tutte layout), with a
//! radial fallback for vertices that cannot reach the boundary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::compatibility::Matching;
use crate::dimers::{MultiDimer, PlabicGraph};
use crate::planar_map::{Color, CombMap};
use crate::webs::Web;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InteriorLayout {
    Barycentric,
    Given,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderSpec {
    /// Radius of the boundary circle.
    pub radius: f64,
    /// Angle of boundary vertex 1 in degrees, counterclockwise from the
    /// positive x axis.
    pub first_angle: f64,
    /// Clockwise angle between consecutive boundary vertices in degrees;
    /// `None` spaces them evenly.
    pub step: Option<f64>,
    pub interior_layout: InteriorLayout,
    /// Interior positions used by the `given` layout, keyed by vertex id.
    pub positions: BTreeMap<usize, [f64; 2]>,
    pub stroke_width: f64,
    pub vertex_radius: f64,
    /// Draw arrowheads on edges joining two boundary vertices of a web.
    pub arrowheads: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            radius: 100.0,
            first_angle: 90.0,
            step: None,
            interior_layout: InteriorLayout::Barycentric,
            positions: BTreeMap::new(),
            stroke_width: 1.5,
            vertex_radius: 4.0,
            arrowheads: true,
        }
    }
}

/// Coordinates of every vertex, indexed by id - 1, with y pointing up.
pub fn layout(g: &CombMap, spec: &RenderSpec) -> Vec<[f64; 2]> {
    let n = g.n();
    let nv = g.vertex_count();
    let step = spec.step.unwrap_or(if n == 0 { 0.0 } else { 360.0 / n as f64 });
    let mut pos = vec![[0.0, 0.0]; nv];
    for i in 1..=n {
        let a = (spec.first_angle - step * (i - 1) as f64).to_radians();
        pos[i - 1] = [spec.radius * a.cos(), spec.radius * a.sin()];
    }
    let mut fixed = vec![false; nv];
    fixed[..n].iter_mut().for_each(|f| *f = true);
    if spec.interior_layout == InteriorLayout::Given {
        for (&v, &p) in &spec.positions {
            if v > n && v <= nv {
                pos[v - 1] = p;
                fixed[v - 1] = true;
            }
        }
    }
    // vertices whose component has no fixed vertex get a radial fallback
    let mut anchored = fixed.clone();
    let mut stack: Vec<usize> = (1..=nv).filter(|&v| fixed[v - 1]).collect();
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !anchored[w - 1] {
                anchored[w - 1] = true;
                stack.push(w);
            }
        }
    }
    let loose: Vec<usize> = (n + 1..=nv).filter(|&v| !anchored[v - 1]).collect();
    for (j, &v) in loose.iter().enumerate() {
        let a = std::f64::consts::TAU * j as f64 / loose.len() as f64;
        pos[v - 1] = [0.3 * spec.radius * a.cos(), 0.3 * spec.radius * a.sin()];
        fixed[v - 1] = true;
    }
    let free: Vec<usize> = (n + 1..=nv).filter(|&v| !fixed[v - 1]).collect();
    // Gauss-Seidel sweeps converge for a connected system with fixed anchors
    for _ in 0..4000 {
        let mut delta: f64 = 0.0;
        for &v in &free {
            let nb = g.neighbors(v);
            if nb.is_empty() {
                continue;
            }
            let mut s = [0.0, 0.0];
            for &w in &nb {
                s[0] += pos[w - 1][0];
                s[1] += pos[w - 1][1];
            }
            let p = [s[0] / nb.len() as f64, s[1] / nb.len() as f64];
            delta = delta.max((p[0] - pos[v - 1][0]).abs() + (p[1] - pos[v - 1][1]).abs());
            pos[v - 1] = p;
        }
        if delta < 1e-9 {
            break;
        }
    }
    pos
}

struct Canvas {
    out: String,
    margin: f64,
    radius: f64,
}

impl Canvas {
    fn new(spec: &RenderSpec) -> Canvas {
        let margin = 24.0;
        let size = 2.0 * (spec.radius + margin);
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#);
        let _ = writeln!(
            out,
            r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#
        );
        let c = spec.radius + margin;
        let _ = writeln!(out, r#"<circle cx="{c:.3}" cy="{c:.3}" r="{:.3}" fill="none" stroke="gray" stroke-width="1"/>"#, spec.radius);
        Canvas { out, margin, radius: spec.radius }
    }

    /// Screen coordinates (y down).
    fn xy(&self, p: [f64; 2]) -> (f64, f64) {
        let c = self.radius + self.margin;
        (c + p[0], c - p[1])
    }

    fn line(&mut self, a: [f64; 2], b: [f64; 2], color: &str, width: f64, arrow: bool) {
        let (x1, y1) = self.xy(a);
        let (x2, y2) = self.xy(b);
        let marker = if arrow { r#" marker-end="url(#arrow)""# } else { "" };
        let _ = writeln!(self.out, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{color}" stroke-width="{width:.3}"{marker}/>"#);
    }

    /// Two offset strands crossing at the midpoint, for multiplicity >= 2.
    fn bowtie(&mut self, a: [f64; 2], b: [f64; 2], m: usize, color: &str, width: f64) {
        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let off = [-dy / len * 2.5, dx / len * 2.5];
        let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        for s in [1.0, -1.0] {
            let p = [a[0] + s * off[0], a[1] + s * off[1]];
            let q = [b[0] - s * off[0], b[1] - s * off[1]];
            let pts: Vec<(f64, f64)> = [p, mid, q].iter().map(|&x| self.xy(x)).collect();
            let _ = writeln!(
                self.out,
                r#"<polyline points="{:.3},{:.3} {:.3},{:.3} {:.3},{:.3}" fill="none" stroke="{color}" stroke-width="{width:.3}"/>"#,
                pts[0].0, pts[0].1, pts[1].0, pts[1].1, pts[2].0, pts[2].1
            );
        }
        if m > 2 {
            let (x, y) = self.xy([mid[0] + 2.0 * off[0], mid[1] + 2.0 * off[1]]);
            let _ = writeln!(self.out, r#"<text x="{x:.3}" y="{y:.3}" font-size="9" text-anchor="middle">{m}</text>"#);
        }
    }

    fn vertex(&mut self, p: [f64; 2], color: Color, r: f64) {
        let (x, y) = self.xy(p);
        let fill = match color {
            Color::White => "white",
            Color::Black => "black",
        };
        let _ = writeln!(self.out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r:.3}" fill="{fill}" stroke="black" stroke-width="1"/>"#);
    }

    fn label(&mut self, p: [f64; 2], text: &str) {
        let norm = (p[0] * p[0] + p[1] * p[1]).sqrt().max(1e-9);
        let s = (norm + 12.0) / norm;
        let (x, y) = self.xy([p[0] * s, p[1] * s]);
        let _ = writeln!(self.out, r#"<text x="{x:.3}" y="{:.3}" font-size="11" text-anchor="middle">{text}</text>"#, y + 4.0);
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

fn draw_map(g: &CombMap, spec: &RenderSpec, style: &dyn Fn(usize) -> (usize, &'static str), arrows: bool) -> String {
    let pos = layout(g, spec);
    let mut c = Canvas::new(spec);
    for (k, e) in g.edges().iter().enumerate() {
        let (m, color) = style(k);
        if m == 0 {
            continue;
        }
        let (a, b) = (pos[e.u - 1], pos[e.v - 1]);
        if m >= 2 {
            c.bowtie(a, b, m, color, spec.stroke_width);
        } else if arrows && g.is_boundary(e.u) && g.is_boundary(e.v) {
            let (from, to) = if g.color(e.u) == Color::Black { (a, b) } else { (b, a) };
            // stop the arrowhead at the rim of the target vertex
            let (dx, dy) = (to[0] - from[0], to[1] - from[1]);
            let len = (dx * dx + dy * dy).sqrt().max(1e-9);
            let t = 1.0 - spec.vertex_radius / len;
            c.line(from, [from[0] + dx * t, from[1] + dy * t], color, spec.stroke_width, true);
        } else {
            c.line(a, b, color, spec.stroke_width, false);
        }
    }
    for v in 1..=g.vertex_count() {
        c.vertex(pos[v - 1], g.color(v), spec.vertex_radius);
    }
    for i in 1..=g.n() {
        c.label(pos[i - 1], &i.to_string());
    }
    c.finish()
}

/// Any rotation system, hourglass graph or plabic graph.
pub fn render_map(g: &CombMap, spec: &RenderSpec) -> String {
    draw_map(g, spec, &|k| (g.edge(k).m, "black"), false)
}

/// A web, with arrows on boundary-to-boundary edges and a note of the
/// number of closed loops.
pub fn render_web(w: &Web, spec: &RenderSpec) -> String {
    let mut svg = draw_map(w.map(), spec, &|_| (1, "black"), spec.arrowheads);
    if w.loops() > 0 {
        let note = format!("<text x=\"4\" y=\"14\" font-size=\"11\">loops: {}</text>\n</svg>\n", w.loops());
        svg.truncate(svg.len() - "</svg>\n".len());
        svg.push_str(&note);
    }
    svg
}

/// Chords of a matching; isolated white vertices are hollow, matched ones
/// filled.
pub fn render_matching(m: &Matching, spec: &RenderSpec) -> String {
    let n = m.n;
    let step = spec.step.unwrap_or(360.0 / n as f64);
    let at = |i: usize| {
        let a = (spec.first_angle - step * (i - 1) as f64).to_radians();
        [spec.radius * a.cos(), spec.radius * a.sin()]
    };
    let mut c = Canvas::new(spec);
    for &(a, b) in &m.pairs {
        c.line(at(a), at(b), "black", spec.stroke_width, false);
    }
    for i in 1..=n {
        if m.isolated_white.contains(&i) {
            c.vertex(at(i), Color::White, spec.vertex_radius);
        } else if m.pairs.iter().any(|&(a, b)| a == i || b == i) {
            c.vertex(at(i), Color::Black, spec.vertex_radius);
        }
        c.label(at(i), &i.to_string());
    }
    c.finish()
}

/// A plabic graph with the edges of a superimposed dimer configuration
/// highlighted; an edge used `k` times is drawn with `k` strands.
pub fn render_dimer(g: &PlabicGraph, d: &MultiDimer, spec: &RenderSpec) -> String {
    let map = g.map();
    let svg_edges = |k: usize| match d.multiplicity.get(k).copied().unwrap_or(0) {
        0 => (1, "#bbbbbb"),
        m => (m, "#a0208c"),
    };
    draw_map(map, spec, &svg_edges, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar_map::build::star;

    #[test]
    fn tripod_is_deterministic() {
        let w = Web::new(star(3, &[1, 2, 3], Color::White)).unwrap();
        let spec = RenderSpec::default();
        let a = render_web(&w, &spec);
        assert_eq!(a, render_web(&w, &spec));
        // boundary circle plus four vertices, three segments
        assert_eq!(a.matches("<circle").count(), 5);
        assert_eq!(a.matches("<line").count(), 3);
    }

    #[test]
    fn tutte_layout_places_tripod_center_at_origin() {
        let g = star(3, &[1, 2, 3], Color::White);
        let pos = layout(&g, &RenderSpec::default());
        assert!(pos[3][0].abs() < 1e-6 && pos[3][1].abs() < 1e-6);
    }

    #[test]
    fn matching_drawing() {
        let m = Matching::new(8, vec![(2, 7), (3, 4), (5, 6)], vec![1]).unwrap();
        let svg = render_matching(&m, &RenderSpec::default());
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches(r#"fill="white""#).count(), 1);
    }

    #[test]
    fn spec_roundtrips_through_json() {
        let spec = RenderSpec { radius: 50.0, ..RenderSpec::default() };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<RenderSpec>(&text).unwrap(), spec);
        let partial: RenderSpec = serde_json::from_str(r#"{"radius": 80}"#).unwrap();
        assert_eq!(partial.radius, 80.0);
    }
}
