//! Magnetic ellipses `{X : d(A, X) + d(X, B) = c}`.

use super::contour::extract_level_sets;
use super::point_distance_detail;
use crate::curves::OrientedCurve;
use crate::error::{Error, Result};
use crate::geom::{heading, perp, unit, Vec2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseOptions {
    /// Cells per side of the marching-squares grid.
    pub grid: usize,
    /// Search box; defaults to a square of half-width `2R` about the foci.
    pub bounds: Option<(Vec2, Vec2)>,
    pub refine_tol: f64,
}

impl Default for EllipseOptions {
    fn default() -> Self {
        Self {
            grid: 400,
            bounds: None,
            refine_tol: 1e-10,
        }
    }
}

/// `d(A, X) + d(X, B)`, or NaN where either leg is undefined.
pub fn ellipse_potential(a: Vec2, b: Vec2, radius: f64, x: Vec2) -> f64 {
    let leg = |p: Vec2, q: Vec2| match point_distance_detail(radius, p, q) {
        Ok(d) => d.map_or(0.0, |d| d.value),
        Err(_) => f64::NAN,
    };
    leg(a, x) + leg(x, b)
}

pub fn magnetic_ellipse(a: Vec2, b: Vec2, c: f64, radius: f64) -> Result<OrientedCurve> {
    magnetic_ellipse_with(a, b, c, radius, &EllipseOptions::default())
}

/// The outer level set, counterclockwise. An empty curve means the locus is empty.
pub fn magnetic_ellipse_with(a: Vec2, b: Vec2, c: f64, radius: f64, opts: &EllipseOptions) -> Result<OrientedCurve> {
    let base = ellipse_potential(a, b, radius, a);
    if base.is_nan() {
        return Err(Error::Unreachable {
            distance: (b - a).norm(),
            radius,
        });
    }
    if c <= base {
        return Ok(OrientedCurve::closed(Vec::new()));
    }
    let (lo, hi) = opts.bounds.unwrap_or_else(|| {
        let mid = 0.5 * (a + b);
        let half = Vec2::new(2.0 * radius, 2.0 * radius);
        (mid - half, mid + half)
    });
    let loops = extract_level_sets(
        |x| ellipse_potential(a, b, radius, x) - c,
        lo,
        hi,
        opts.grid,
        opts.grid,
        opts.refine_tol,
    );
    let Some(curve) = loops.into_iter().next() else {
        return Ok(OrientedCurve::closed(Vec::new()));
    };
    let worst = curve
        .vertices
        .iter()
        .map(|&x| (ellipse_potential(a, b, radius, x) - c).abs())
        .fold(0.0, f64::max);
    if worst.is_nan() || worst >= 1e-6 {
        return Err(Error::Invalid(format!(
            "level {c} leaves the region where both distances are defined"
        )));
    }
    Ok(curve)
}

/// Unit tangent of the level set through `x`, with the sublevel set on the left.
pub fn ellipse_tangent(a: Vec2, b: Vec2, radius: f64, x: Vec2) -> Vec2 {
    let h = 1e-6;
    let phi = |p: Vec2| ellipse_potential(a, b, radius, p);
    let grad = Vec2::new(
        (phi(x + Vec2::new(h, 0.0)) - phi(x - Vec2::new(h, 0.0))) / (2.0 * h),
        (phi(x + Vec2::new(0.0, h)) - phi(x - Vec2::new(0.0, h))) / (2.0 * h),
    );
    perp(grad).normalize()
}

/// Follow the minimizing arc from `A` to `x`, reflect by equal angles in the
/// level-set tangent, and report how far the outgoing `R`-circle misses `B`.
pub fn ellipse_focusing_miss(a: Vec2, b: Vec2, radius: f64, x: Vec2) -> Result<f64> {
    let incoming = point_distance_detail(radius, a, x)?.ok_or_else(|| Error::Invalid("point coincides with the focus".into()))?;
    let arc = incoming.minimizing_arc();
    let beta = heading(perp(x - arc.center));
    let tau = heading(ellipse_tangent(a, b, radius, x));
    let gamma = 2.0 * tau - beta;
    let center_out = x + radius * perp(unit(gamma));
    Ok(((b - center_out).norm() - radius).abs())
}
