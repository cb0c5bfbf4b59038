//! SVG drawings of laminations in the unit disk, leaves drawn as
//! hyperbolic geodesics.

use std::f64::consts::PI;
use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::chords::Chord;
use crate::circle::{arc_length, Angle};
use crate::lamination::Lamination;
use crate::lamsets::LamSet;
use crate::quadgap::GapGen;

/// A geodesic in the unit disk, in math coordinates (y pointing up).
#[derive(Clone, Debug, PartialEq)]
pub enum Geodesic {
    Line { from: (f64, f64), to: (f64, f64) },
    Arc { from: (f64, f64), to: (f64, f64), center: (f64, f64), radius: f64 },
}

fn point(x: &Angle) -> (f64, f64) {
    let t = 2.0 * PI * x.to_f64();
    (t.cos(), t.sin())
}

/// The geodesic joining the endpoints of `c`: a diameter when they are
/// antipodal, otherwise an arc of the circle orthogonal to the boundary.
pub fn geodesic(c: &Chord) -> Option<Geodesic> {
    if c.is_degenerate() {
        return None;
    }
    let (from, to) = (point(&c.a), point(&c.b));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let ab = arc_length(&c.a, &c.b);
    if ab == half {
        return Some(Geodesic::Line { from, to });
    }
    let (start, short) = if ab < half { (&c.a, ab) } else { (&c.b, arc_length(&c.b, &c.a)) };
    let delta = 2.0 * PI * short.to_f64().unwrap_or(0.0);
    let phi = 2.0 * PI * start.to_f64() + delta / 2.0;
    let dist = 1.0 / (delta / 2.0).cos();
    let center = (dist * phi.cos(), dist * phi.sin());
    Some(Geodesic::Arc { from, to, center, radius: (delta / 2.0).tan() })
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub size: u32,
    pub margin: f64,
    pub stroke_width: f64,
    pub leaf_color: String,
    pub palette: Vec<String>,
    /// Print the angle next to each vertex of a filled polygon.
    pub label_angles: bool,
    /// Chords drawn on top in the highlight color.
    pub highlight: Vec<Chord>,
    pub highlight_color: String,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            size: 800,
            margin: 10.0,
            stroke_width: 0.8,
            leaf_color: "#202020".into(),
            palette: ["#f4a261", "#2a9d8f", "#e9c46a", "#8ab17d", "#e76f51", "#9b5de5"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            label_angles: false,
            highlight: Vec::new(),
            highlight_color: "#d62828".into(),
        }
    }
}

struct Frame {
    c: f64,
    r: f64,
}

impl Frame {
    fn px(&self, p: (f64, f64)) -> (f64, f64) {
        (self.c + self.r * p.0, self.c - self.r * p.1)
    }
}

fn path_of(frame: &Frame, g: &Geodesic) -> String {
    match g {
        Geodesic::Line { from, to } => {
            let (a, b) = (frame.px(*from), frame.px(*to));
            format!("M {:.6} {:.6} L {:.6} {:.6}", a.0, a.1, b.0, b.1)
        }
        Geodesic::Arc { from, to, center, radius } => {
            let (a, b, c) = (frame.px(*from), frame.px(*to), frame.px(*center));
            let cross = (a.0 - c.0) * (b.1 - c.1) - (a.1 - c.1) * (b.0 - c.0);
            let sweep = if cross > 0.0 { 1 } else { 0 };
            let r = frame.r * radius;
            format!("M {:.6} {:.6} A {:.6} {:.6} 0 0 {} {:.6} {:.6}", a.0, a.1, r, r, sweep, b.0, b.1)
        }
    }
}

fn polygon(frame: &Frame, vs: &[Angle], color: &str) -> String {
    let pts: Vec<String> = vs
        .iter()
        .map(|v| {
            let p = frame.px(point(v));
            format!("{:.6},{:.6}", p.0, p.1)
        })
        .collect();
    format!("<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.35\" stroke=\"none\"/>\n", pts.join(" "))
}

/// Draw chords, with optional filled vertex polygons underneath.
pub fn render_chords(chords: &[Chord], fills: &[Vec<Angle>], spec: &RenderSpec) -> String {
    let size = spec.size as f64;
    let frame = Frame { c: size / 2.0, r: size / 2.0 - spec.margin };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
        spec.size
    );
    let _ = writeln!(s, "<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>", spec.size);
    for (i, f) in fills.iter().enumerate() {
        if f.len() >= 3 {
            let color = &spec.palette[i % spec.palette.len()];
            s.push_str(&polygon(&frame, f, color));
        }
    }
    let _ = writeln!(
        s,
        "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\" fill=\"none\" stroke=\"black\" stroke-width=\"{:.6}\"/>",
        frame.c,
        frame.c,
        frame.r,
        spec.stroke_width * 1.5
    );
    let strokes = chords
        .iter()
        .map(|c| (c, &spec.leaf_color, spec.stroke_width))
        .chain(spec.highlight.iter().map(|c| (c, &spec.highlight_color, spec.stroke_width * 2.5)));
    for (c, color, width) in strokes {
        if let Some(g) = geodesic(c) {
            let _ = writeln!(
                s,
                "<path d=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{width:.6}\"/>",
                path_of(&frame, &g),
            );
        }
    }
    if spec.label_angles {
        let labelled: std::collections::BTreeSet<&Angle> = fills.iter().flatten().collect();
        for v in labelled {
            let (x, y) = point(v);
            let p = frame.px((x, y));
            let q = (p.0 + 6.0 * x, p.1 - 6.0 * y);
            let _ = writeln!(
                s,
                "<text x=\"{:.6}\" y=\"{:.6}\" font-size=\"10\" font-family=\"sans-serif\">{v}</text>",
                q.0, q.1
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Draw a lamination with its registered gaps shaded.
pub fn render_lamination(l: &Lamination, spec: &RenderSpec) -> String {
    let mut fills: Vec<Vec<Angle>> = l.finite_gaps.iter().map(|g| g.vertices().to_vec()).collect();
    for g in &l.gaps {
        fills.push(g.vertices(l.depth.min(4)));
    }
    let chords: Vec<Chord> = l.leaves.iter().cloned().collect();
    render_chords(&chords, &fills, spec)
}

/// Draw a finite set as a filled polygon with its edges.
pub fn render_lamset(g: &LamSet, spec: &RenderSpec) -> String {
    let edges: Vec<Chord> = g.holes().into_iter().map(|(c, _)| c).collect();
    render_chords(&edges, &[g.vertices().to_vec()], spec)
}

/// Draw an infinite gap through its edges found within `depth`.
pub fn render_gap(g: &GapGen, depth: usize, spec: &RenderSpec) -> String {
    render_chords(&g.edges(depth), &[g.vertices(depth)], spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Chord {
        s.parse().unwrap()
    }

    #[test]
    fn diameter_is_straight() {
        assert!(matches!(geodesic(&c("0-1/2")), Some(Geodesic::Line { .. })));
        assert!(geodesic(&c("1/3-1/3")).is_none());
    }

    #[test]
    fn arc_is_orthogonal_to_boundary() {
        for s in ["1/12-5/12", "7/26-11/26", "9/10-1/10", "2/3-1/5"] {
            let Some(Geodesic::Arc { from, to, center, radius }) = geodesic(&c(s)) else {
                panic!("{s}");
            };
            for p in [from, to] {
                let dr = ((p.0 - center.0).powi(2) + (p.1 - center.1).powi(2)).sqrt();
                assert!((dr - radius).abs() < 1e-9, "{s}");
            }
            let cc = center.0 * center.0 + center.1 * center.1;
            assert!((cc - (1.0 + radius * radius)).abs() < 1e-9, "{s}");
        }
    }

    #[test]
    fn output_is_deterministic() {
        let spec = RenderSpec::default();
        let ch = vec![c("1/6-1/3"), c("0-1/2")];
        assert_eq!(render_chords(&ch, &[], &spec), render_chords(&ch, &[], &spec));
    }
}
