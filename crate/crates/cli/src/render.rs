//! Static SVG 1.1 pictures of homotopy tracks.
//!
//! Frames are drawn as polylines whose color runs from blue (first frame) to
//! red (last frame). The output depends only on the input: coordinates are
//! printed with a fixed number of digits and no metadata is written.

use std::fmt::Write;

use awin_core::{HomotopyTrack, Pt, Surface};

const WIDTH: f64 = 640.0;

fn lift(t: &HomotopyTrack) -> Vec<Vec<(f64, f64)>> {
    let (ox, oy) = t.offset();
    t.frames()
        .iter()
        .map(|c| {
            let mut pts: Vec<(f64, f64)> = c.vertices.iter().map(Pt::to_f64).collect();
            let (x0, y0) = pts[0];
            pts.push((x0 + ox as f64, y0 + oy as f64));
            pts
        })
        .collect()
}

fn color(i: usize, n: usize) -> String {
    let s = if n <= 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
    let r = (255.0 * s).round() as u8;
    let b = (255.0 * (1.0 - s)).round() as u8;
    format!("#{r:02x}30{b:02x}")
}

struct Frame {
    min: (f64, f64),
    scale: f64,
    height: f64,
    pad: f64,
}

impl Frame {
    fn fit(pts: impl Iterator<Item = (f64, f64)>) -> Frame {
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for (x, y) in pts {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        let w = (hi.0 - lo.0).max(1e-9);
        let h = (hi.1 - lo.1).max(1e-9);
        let pad = 24.0;
        let scale = (WIDTH - 2.0 * pad) / w.max(h);
        Frame {
            min: lo,
            scale,
            height: (h * scale + 2.0 * pad).ceil(),
            pad,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let sx = self.pad + (x - self.min.0) * self.scale;
        let sy = self.height - self.pad - (y - self.min.1) * self.scale;
        (sx, sy)
    }
}

fn polyline(out: &mut String, f: &Frame, pts: &[(f64, f64)], attrs: &str) {
    out.push_str("  <polyline points=\"");
    for (i, &p) in pts.iter().enumerate() {
        let (x, y) = f.map(p);
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x:.3},{y:.3}");
    }
    let _ = writeln!(out, "\" fill=\"none\" {attrs}/>");
}

/// Renders the track, an optional marked point and, on the torus, the unit
/// square of the fundamental domain.
pub fn render_svg(t: &HomotopyTrack, point: Option<&Pt>) -> String {
    let frames = lift(t);
    let mut extent: Vec<(f64, f64)> = frames.iter().flatten().copied().collect();
    let marked = point.map(Pt::to_f64);
    extent.extend(marked);
    let punctures: Vec<(f64, f64)> = t.surface().punctures().iter().map(Pt::to_f64).collect();
    extent.extend(punctures.iter().copied());
    if t.surface().is_torus() {
        extent.extend([(0.0, 0.0), (1.0, 1.0)]);
    }
    let f = Frame::fit(extent.into_iter());

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {WIDTH:.3} {h:.3}\">",
        h = f.height
    );
    let _ = writeln!(out, "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    if let Surface::FlatTorus = t.surface() {
        let square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)];
        polyline(
            &mut out,
            &f,
            &square,
            "stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"",
        );
    }
    let n = frames.len();
    for (i, pts) in frames.iter().enumerate() {
        let attrs = format!("stroke=\"{}\" stroke-width=\"1.5\" stroke-opacity=\"0.8\"", color(i, n));
        polyline(&mut out, &f, pts, &attrs);
    }
    for p in &punctures {
        let (x, y) = f.map(*p);
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"white\" stroke=\"black\"/>"
        );
    }
    if let Some(p) = marked {
        let (x, y) = f.map(p);
        let arm = 7.0;
        let _ = writeln!(
            out,
            "  <path d=\"M {:.3} {y:.3} H {:.3} M {x:.3} {:.3} V {:.3}\" stroke=\"black\" stroke-width=\"1.5\"/>",
            x - arm,
            x + arm,
            y - arm,
            y + arm
        );
    }
    out.push_str("</svg>\n");
    out
}
