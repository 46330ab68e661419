//! Minimal SVG rendering of Stokes diagrams.

use ptspectra::stokes::{LineKind, Polyline, StokesDiagram};
use ptspectra::Complex64;
use std::fmt::Write;

const SIZE: f64 = 600.0;

fn style(kind: LineKind) -> &'static str {
    match kind {
        LineKind::AntiStokes => r#"stroke="red" stroke-width="1.5" fill="none""#,
        LineKind::Stokes => r#"stroke="blue" stroke-width="1.5" stroke-dasharray="6 4" fill="none""#,
    }
}

struct Frame {
    scale: f64,
}

impl Frame {
    fn map(&self, z: Complex64) -> (f64, f64) {
        (SIZE / 2.0 + self.scale * z.re, SIZE / 2.0 - self.scale * z.im)
    }
}

/// Asymptotic directions as rays from the origin, or traced lines when
/// `traced` is non-empty. Anti-Stokes solid red, Stokes dashed blue.
pub fn render(diagram: &StokesDiagram, traced: &[Polyline], turning_points: &[Complex64]) -> String {
    let extent = traced
        .iter()
        .flat_map(|p| p.points.iter())
        .chain(turning_points)
        .map(|z| z.norm())
        .fold(1.0f64, f64::max)
        * 1.1;
    let frame = Frame { scale: 0.5 * SIZE / extent };
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let mid = SIZE / 2.0;
    let _ = writeln!(out, r#"<path d="M0 {mid}H{SIZE}M{mid} 0V{SIZE}" stroke="gray" stroke-width="0.5"/>"#);
    if traced.is_empty() {
        for line in &diagram.lines {
            let (x, y) = frame.map(Complex64::from_polar(extent, line.angle));
            let _ = writeln!(out, r#"<line x1="{mid}" y1="{mid}" x2="{x:.2}" y2="{y:.2}" {}/>"#, style(line.kind));
        }
    }
    for poly in traced {
        let mut d = String::new();
        let mut last: Option<(f64, f64)> = None;
        let n = poly.points.len();
        for (i, z) in poly.points.iter().enumerate() {
            let (x, y) = frame.map(*z);
            // drop sub-pixel steps, keep the end point
            if let Some((lx, ly)) = last {
                if (x - lx).hypot(y - ly) < 0.5 && i + 1 < n {
                    continue;
                }
            }
            let _ = write!(d, "{}{x:.2} {y:.2}", if last.is_none() { "M" } else { "L" });
            last = Some((x, y));
        }
        let _ = writeln!(out, r#"<path d="{d}" {}/>"#, style(poly.kind));
    }
    for z in turning_points {
        let (x, y) = frame.map(*z);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
    }
    out.push_str("</svg>\n");
    out
}
