//! Deterministic SVG rendering of `P + Λ` over a window.
//!
//! Faces are filled by covering multiplicity, translate outlines are drawn on
//! top, and a legend lists the multiplicities present. Exact coordinates are
//! converted to floating point only when written out.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::Result;
use crate::oracle::{approx_point, decompose, Polygon, TranslateSet, Window};
use crate::plane::PlaneVector;

const BITS: u64 = 30;
const CANVAS: f64 = 800.0;
const LEGEND_WIDTH: f64 = 140.0;

/// Fill color for multiplicity `k`: white for uncovered, then well-separated hues.
pub fn color(k: u64) -> String {
    if k == 0 {
        return "#ffffff".into();
    }
    let hue = ((k - 1) * 137 % 360) as f64;
    let (r, g, b) = hsl_to_rgb(hue, 0.55, 0.72);
    format!("#{r:02x}{g:02x}{b:02x}")
}

fn hsl_to_rgb(h: f64, s: f64, l: f64) -> (u8, u8, u8) {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let to = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    (to(r), to(g), to(b))
}

struct Frame {
    x0: f64,
    y1: f64,
    scale: f64,
}

impl Frame {
    fn map(&self, p: &PlaneVector) -> (f64, f64) {
        let (x, y) = approx_point(p, BITS);
        ((x - self.x0) * self.scale, (self.y1 - y) * self.scale)
    }

    fn points(&self, pts: &[PlaneVector]) -> String {
        let mut s = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.map(p);
            if i > 0 {
                s.push(' ');
            }
            write!(s, "{x:.3},{y:.3}").unwrap();
        }
        s
    }
}

pub fn render(poly: &Polygon, lambda: &TranslateSet, window: &Window) -> Result<String> {
    let cells = decompose(poly, lambda, window)?;
    let (lo, hi) = poly.bbox();
    let translates = lambda.points_in(&Window::new(
        &window.x0 - &hi.x,
        &window.y0 - &hi.y,
        &window.x1 - &lo.x,
        &window.y1 - &lo.y,
    )?);

    let (wx0, wy0) = approx_point(&window.corners()[0], BITS);
    let (wx1, wy1) = approx_point(&window.corners()[2], BITS);
    let scale = CANVAS / (wx1 - wx0).max(wy1 - wy0);
    let frame = Frame {
        x0: wx0,
        y1: wy1,
        scale,
    };
    let (w, h) = ((wx1 - wx0) * scale, (wy1 - wy0) * scale);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.3} {:.3}">"#,
        w + LEGEND_WIDTH,
        h,
        w + LEGEND_WIDTH,
        h
    )
    .unwrap();
    writeln!(out, r#"<defs><clipPath id="window"><rect x="0" y="0" width="{w:.3}" height="{h:.3}"/></clipPath></defs>"#).unwrap();

    let mut present = BTreeSet::new();
    writeln!(out, r#"<g id="faces" stroke="none">"#).unwrap();
    for c in &cells {
        present.insert(c.count);
        writeln!(
            out,
            r#"<polygon points="{}" fill="{}"/>"#,
            frame.points(&c.corners),
            color(c.count)
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();

    writeln!(
        out,
        r##"<g id="outlines" fill="none" stroke="#333333" stroke-width="1" clip-path="url(#window)">"##
    )
    .unwrap();
    for t in &translates {
        let moved: Vec<PlaneVector> = poly.vertices().iter().map(|v| v + t).collect();
        writeln!(out, r#"<polygon points="{}"/>"#, frame.points(&moved)).unwrap();
    }
    writeln!(out, "</g>").unwrap();

    writeln!(
        out,
        r#"<g id="legend" font-family="sans-serif" font-size="14">"#
    )
    .unwrap();
    for (i, k) in present.iter().enumerate() {
        let y = 20.0 + 24.0 * i as f64;
        writeln!(
            out,
            r##"<rect x="{:.3}" y="{:.3}" width="18" height="18" fill="{}" stroke="#333333"/><text x="{:.3}" y="{:.3}">k = {}</text>"##,
            w + 16.0,
            y,
            color(*k),
            w + 42.0,
            y + 14.0,
            k
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
