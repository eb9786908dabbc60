//! Deterministic static SVG figures of planar curves.

use std::fmt::Write;

use magbill::curves::OrientedCurve;
use magbill::geom::Vec2;

use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct StyledCurve {
    pub curve: OrientedCurve,
    pub stroke: String,
    pub width: f64,
}

impl StyledCurve {
    pub fn new(curve: OrientedCurve, stroke: &str, width: f64) -> Self {
        Self {
            curve,
            stroke: stroke.into(),
            width,
        }
    }
}

const CANVAS: f64 = 800.0;

/// One `<path>` per curve; the viewBox is the joint bounding box plus a 5%
/// margin, with the y axis pointing up.
pub fn emit_svg(curves: &[StyledCurve]) -> CliResult<String> {
    let drawn: Vec<&StyledCurve> = curves.iter().filter(|c| !c.curve.is_empty()).collect();
    if drawn.is_empty() {
        return Err(CliError::Usage("no curves to draw".into()));
    }
    let (mut lo, mut hi) = (Vec2::repeat(f64::INFINITY), Vec2::repeat(f64::NEG_INFINITY));
    for c in &drawn {
        if let Some((a, b)) = c.curve.bounding_box() {
            lo = lo.inf(&a);
            hi = hi.sup(&b);
        }
    }
    let span = (hi - lo).max().max(1e-9);
    let margin = 0.05 * span;
    let (x0, y0) = (lo.x - margin, -(hi.y + margin));
    let (w, h) = (hi.x - lo.x + 2.0 * margin, hi.y - lo.y + 2.0 * margin);
    let scale = CANVAS / w.max(h);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{x0:.6} {y0:.6} {w:.6} {h:.6}">"#,
        w * scale,
        h * scale
    )
    .unwrap();
    for c in drawn {
        let mut d = String::new();
        for (k, p) in c.curve.vertices.iter().enumerate() {
            let cmd = if k == 0 { 'M' } else { 'L' };
            write!(d, "{cmd}{:.6} {:.6} ", p.x, -p.y).unwrap();
        }
        if c.curve.closed {
            d.push('Z');
        }
        writeln!(
            out,
            r#"  <path d="{}" fill="none" stroke="{}" stroke-width="{:.6}"/>"#,
            d.trim_end(),
            c.stroke,
            c.width * span / CANVAS * 2.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
