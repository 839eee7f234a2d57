//! Static SVG figures of two polygons and the lattice points between them.

use std::fmt::Write;

use adlv_core::polygon::{lattice_points, LatticePoint};
use adlv_core::{Polygon, Rational, RelCocharacter};
use num_traits::ToPrimitive;

use crate::error::CliResult;

/// Pixels per lattice step.
pub const UNIT: i64 = 40;
const MARGIN: i64 = 40;

/// A rendered figure and the points it marks.
#[derive(Debug, Clone)]
pub struct PairingFigure {
    pub svg: String,
    pub points: Vec<LatticePoint>,
}

struct Frame {
    y_top: i64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        (MARGIN as f64) + x * UNIT as f64
    }

    /// y grows upwards in the figure, downwards in SVG.
    fn y(&self, y: f64) -> f64 {
        (MARGIN as f64) + (self.y_top as f64 - y) * UNIT as f64
    }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn path(frame: &Frame, poly: &Polygon) -> String {
    poly.breakpoints()
        .iter()
        .map(|(x, y)| format!("{:.2},{:.2}", frame.x(*x as f64), frame.y(to_f64(y))))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Draws `P(nu1)` above `P(nu2)` with the counted points filled in.
///
/// Fails under the same preconditions as the lattice count: `nu1 ⪯ nu2` and
/// `nu2` integral.
pub fn pairing_figure(nu1: &RelCocharacter, nu2: &RelCocharacter) -> CliResult<PairingFigure> {
    let points = lattice_points(nu1, nu2)?;
    let (upper, lower) = (Polygon::new(nu1), Polygon::new(nu2));
    let ys = upper
        .breakpoints()
        .iter()
        .chain(lower.breakpoints())
        .map(|(_, y)| y);
    let y_top = ys
        .clone()
        .map(|y| y.ceil().to_integer().to_i64().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let y_bottom = ys
        .map(|y| y.floor().to_integer().to_i64().unwrap_or(0))
        .min()
        .unwrap_or(0);
    let h = nu1.h() as i64;
    let frame = Frame { y_top };
    let width = h * UNIT + 2 * MARGIN;
    let height = (y_top - y_bottom) * UNIT + 2 * MARGIN;

    let mut out = String::new();
    writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"  <rect width="{width}" height="{height}" fill="white"/>"#
    )
    .unwrap();

    writeln!(
        out,
        r##"  <g class="grid" stroke="#d0d0d0" stroke-width="1">"##
    )
    .unwrap();
    for x in 0..=h {
        let sx = frame.x(x as f64);
        let (y0, y1) = (frame.y(y_top as f64), frame.y(y_bottom as f64));
        writeln!(
            out,
            r#"    <line x1="{sx:.2}" y1="{y0:.2}" x2="{sx:.2}" y2="{y1:.2}"/>"#
        )
        .unwrap();
    }
    for y in y_bottom..=y_top {
        let sy = frame.y(y as f64);
        let (x0, x1) = (frame.x(0.0), frame.x(h as f64));
        writeln!(
            out,
            r#"    <line x1="{x0:.2}" y1="{sy:.2}" x2="{x1:.2}" y2="{sy:.2}"/>"#
        )
        .unwrap();
    }
    writeln!(out, "  </g>").unwrap();

    writeln!(
        out,
        r##"  <polyline class="upper" points="{}" fill="none" stroke="#1f5fa8" stroke-width="2"/>"##,
        path(&frame, &upper)
    )
    .unwrap();
    writeln!(
        out,
        r##"  <polyline class="lower" points="{}" fill="none" stroke="#b03a2e" stroke-width="2"/>"##,
        path(&frame, &lower)
    )
    .unwrap();

    writeln!(out, r#"  <g class="points" fill="black">"#).unwrap();
    for p in &points {
        let (cx, cy) = (frame.x(p.x as f64), frame.y(p.y as f64));
        writeln!(
            out,
            r#"    <circle class="dot" cx="{cx:.2}" cy="{cy:.2}" r="4"/>"#
        )
        .unwrap();
    }
    writeln!(out, "  </g>").unwrap();
    writeln!(out, "</svg>").unwrap();

    Ok(PairingFigure { svg: out, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use adlv_core::pairing;

    fn parse(s: &str) -> RelCocharacter {
        RelCocharacter::parse(s).unwrap()
    }

    #[test]
    fn lattice_figure_has_five_dots() {
        let (a, b) = (parse("3/7,3/7,3/7,3/7,3/7,3/7,3/7"), parse("0,0,0,0,0,1,2"));
        let fig = pairing_figure(&a, &b).unwrap();
        assert_eq!(fig.points.len(), 5);
        assert_eq!(fig.svg.matches(r#"class="dot""#).count(), 5);
        assert_eq!(fig.svg.matches("<polyline").count(), 2);
        assert!(fig.svg.contains(r#"width="360" height="200""#));
        // (3, 1) sits three units right of the origin and one unit up.
        assert!(fig.svg.contains(r#"cx="160.00" cy="120.00""#));
        assert_eq!(pairing(&a, &b), 5);
    }

    #[test]
    fn equal_vectors_give_no_dots() {
        let v = parse("0,1,3");
        let fig = pairing_figure(&v, &v).unwrap();
        assert!(fig.points.is_empty());
        assert!(!fig.svg.contains("<circle"));
    }

    #[test]
    fn preconditions_are_enforced() {
        assert!(pairing_figure(&parse("0,1"), &parse("1/2,1/2")).is_err());
        assert!(pairing_figure(&parse("0,1"), &parse("1,0")).is_err());
        assert!(pairing_figure(&parse("0,1"), &parse("0,0,1")).is_err());
    }
}
