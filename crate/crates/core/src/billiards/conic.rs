//! Whether a star-shaped curve is a conic with a focus at the origin.

use nalgebra::{DMatrix, DVector};

use crate::curves::OrientedCurve;
use crate::error::{Error, Result};
use crate::geom::{cross, Vec2};

/// Least-squares fit of `1/r = A + B cos θ + C sin θ`, i.e.
/// `r = ℓ / (1 + e cos(θ − θ0))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicFit {
    pub semi_latus: f64,
    pub eccentricity: f64,
    pub theta0: f64,
    /// Root-mean-square of `(r − r_fit) / r` over the samples.
    pub residual: f64,
}

pub fn fit_focal_conic(curve: &OrientedCurve) -> Result<ConicFit> {
    let n = curve.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: n });
    }
    let mut a = DMatrix::zeros(n, 3);
    let mut b = DVector::zeros(n);
    for (i, p) in curve.vertices.iter().enumerate() {
        let r = p.norm();
        if r == 0.0 {
            return Err(Error::Invalid("curve passes through the focus".into()));
        }
        a[(i, 0)] = 1.0;
        a[(i, 1)] = p.x / r;
        a[(i, 2)] = p.y / r;
        b[i] = 1.0 / r;
    }
    let coef = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let (ca, cb, cc) = (coef[0], coef[1], coef[2]);
    let residual = (curve
        .vertices
        .iter()
        .map(|p| {
            let r = p.norm();
            let fit = 1.0 / (ca + (cb * p.x + cc * p.y) / r);
            ((r - fit) / r).powi(2)
        })
        .sum::<f64>()
        / n as f64)
        .sqrt();
    Ok(ConicFit {
        semi_latus: 1.0 / ca,
        eccentricity: cb.hypot(cc) / ca,
        theta0: cc.atan2(cb),
        residual,
    })
}

/// Relative rms residual of the best focal-conic fit.
pub fn focal_conic_residual(curve: &OrientedCurve) -> Result<f64> {
    Ok(fit_focal_conic(curve)?.residual)
}

/// Tangent at vertex `i` from the fourth-order central stencil in the index.
fn stencil_tangent(curve: &OrientedCurve, i: usize) -> Vec2 {
    let n = curve.len() as isize;
    let at = |k: isize| curve.vertices[(i as isize + k).rem_euclid(n) as usize];
    (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / 12.0
}

/// With `Z` the intersection of the tangents at `X = v[i]` and `Y = v[j]`,
/// returns `([Y, Z]/|Y| − [Z, X]/|X|) / |Z|`, which vanishes for every pair
/// exactly when `OZ` bisects the angle `XOY`. `None` for parallel tangents.
pub fn bisector_defect(curve: &OrientedCurve, i: usize, j: usize) -> Option<f64> {
    let (x, y) = (curve.vertices[i], curve.vertices[j]);
    let (tx, ty) = (stencil_tangent(curve, i), stencil_tangent(curve, j));
    let denom = cross(tx, ty);
    if denom.abs() < 1e-12 * tx.norm() * ty.norm() {
        return None;
    }
    let s = cross(y - x, ty) / denom;
    let z = x + s * tx;
    Some((cross(y, z) / y.norm() - cross(z, x) / x.norm()) / z.norm())
}

/// Largest `|bisector_defect|` over pairs `(i, i + offset)` for the given offsets.
pub fn max_bisector_defect(curve: &OrientedCurve, offsets: &[usize]) -> f64 {
    let n = curve.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for &k in offsets {
            if let Some(d) = bisector_defect(curve, i, (i + k) % n) {
                worst = worst.max(d.abs());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use std::f64::consts::TAU;

    use super::*;
    use crate::curves::{ClosedCurve, Ellipse};
    use crate::geom::unit;

    fn polar(n: usize, r: impl Fn(f64) -> f64) -> OrientedCurve {
        OrientedCurve::closed((0..n).map(|k| TAU * k as f64 / n as f64).map(|t| r(t) * unit(t)).collect())
    }

    #[test]
    fn focal_conics_fit_exactly() {
        for e in [0.0, 0.3, 0.6, 0.9] {
            let c = polar(256, |t| 1.0 / (1.0 + e * t.cos()));
            let fit = fit_focal_conic(&c).unwrap();
            assert!(fit.residual < 1e-10);
            assert!((fit.eccentricity - e).abs() < 1e-12);
        }
    }

    #[test]
    fn centered_ellipse_is_not_focal() {
        let c = Ellipse::new(Vec2::zeros(), 2.0, 1.0, 0.0).sample(256);
        assert!(focal_conic_residual(&c).unwrap() > 1e-3);
        assert!(max_bisector_defect(&c, &[17, 64]) > 1e-3);
    }

    #[test]
    fn bisector_holds_on_focal_ellipse() {
        let c = polar(1024, |t| 1.0 / (1.0 + 0.5 * (t - 0.3).cos()));
        assert!(max_bisector_defect(&c, &[17, 64, 300]) < 1e-8);
    }
}
