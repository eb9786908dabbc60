//! Oriented polylines and smooth closed parametric curves.

use std::f64::consts::TAU;
use std::io::Write;

use crate::error::{Error, Result};
use crate::geom::{cross, perp, unit, Vec2};
use crate::numerics::{quad_try, quad_vec, Tolerances};

/// A polyline; `closed` joins the last vertex back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientedCurve {
    pub vertices: Vec<Vec2>,
    pub closed: bool,
}

impl OrientedCurve {
    pub fn closed(vertices: Vec<Vec2>) -> Self {
        Self { vertices, closed: true }
    }

    pub fn open(vertices: Vec<Vec2>) -> Self {
        Self { vertices, closed: false }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self {
            vertices,
            closed: self.closed,
        }
    }

    /// Consecutive vertex pairs, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        let count = if self.closed || n == 0 { n } else { n - 1 };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn length(&self) -> f64 {
        self.edges().map(|(a, b)| (b - a).norm()).sum()
    }

    /// `∮ (x dy − y dx) / 2`; positive for counterclockwise simple curves.
    pub fn signed_area(&self) -> f64 {
        if !self.closed {
            return 0.0;
        }
        0.5 * self.edges().map(|(a, b)| cross(a, b)).sum::<f64>()
    }

    /// Cumulative arclength at each vertex, starting from zero.
    pub fn arclengths(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.vertices.len() + 1);
        let mut s = 0.0;
        out.push(0.0);
        for (a, b) in self.edges() {
            s += (b - a).norm();
            out.push(s);
        }
        out
    }

    /// Point at arclength `s` (wrapped for closed curves, clamped otherwise).
    pub fn point_at(&self, s: f64) -> Vec2 {
        let cum = self.arclengths();
        let total = *cum.last().unwrap_or(&0.0);
        if total == 0.0 {
            return self.vertices.first().copied().unwrap_or_else(Vec2::zeros);
        }
        let s = if self.closed { s.rem_euclid(total) } else { s.clamp(0.0, total) };
        let i = cum.partition_point(|&c| c <= s).saturating_sub(1).min(cum.len() - 2);
        let (a, b) = self.edges().nth(i).expect("edge index in range");
        let span = cum[i + 1] - cum[i];
        if span == 0.0 {
            a
        } else {
            a + (s - cum[i]) / span * (b - a)
        }
    }

    /// Unit tangents at the vertices by central differences of the neighbours.
    pub fn vertex_tangents(&self) -> Vec<Vec2> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let prev = if i > 0 {
                    self.vertices[i - 1]
                } else if self.closed {
                    self.vertices[n - 1]
                } else {
                    self.vertices[i]
                };
                let next = if i + 1 < n {
                    self.vertices[i + 1]
                } else if self.closed {
                    self.vertices[0]
                } else {
                    self.vertices[i]
                };
                let d = next - prev;
                let norm = d.norm();
                if norm == 0.0 {
                    d
                } else {
                    d / norm
                }
            })
            .collect()
    }

    /// Total turning of the edge directions divided by `2π`.
    pub fn rotation_index(&self) -> i64 {
        let dirs: Vec<Vec2> = self.edges().map(|(a, b)| b - a).filter(|d| d.norm() > 0.0).collect();
        if !self.closed || dirs.len() < 2 {
            return 0;
        }
        let n = dirs.len();
        let total: f64 = (0..n)
            .map(|i| {
                let (u, v) = (dirs[i], dirs[(i + 1) % n]);
                cross(u, v).atan2(u.dot(&v))
            })
            .sum();
        (total / TAU).round() as i64
    }

    /// Strictly convex and counterclockwise: every turn is a left turn.
    pub fn is_convex_ccw(&self) -> bool {
        let n = self.vertices.len();
        if !self.closed || n < 3 {
            return false;
        }
        (0..n).all(|i| {
            let (a, b, c) = (self.vertices[i], self.vertices[(i + 1) % n], self.vertices[(i + 2) % n]);
            cross(b - a, c - b) > 0.0
        }) && self.rotation_index() == 1
    }

    pub fn bounding_box(&self) -> Option<(Vec2, Vec2)> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(lo, hi), p| {
            (
                Vec2::new(lo.x.min(p.x), lo.y.min(p.y)),
                Vec2::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }

    /// Largest distance from a vertex of either curve to the other's vertex set.
    pub fn hausdorff(&self, other: &Self) -> f64 {
        let one_way = |a: &Self, b: &Self| {
            a.vertices
                .iter()
                .map(|p| b.vertices.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
        };
        one_way(self, other).max(one_way(other, self))
    }

    /// CSV with columns `x1, x2`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x1", "x2"])?;
        for p in &self.vertices {
            w.write_record([p.x, p.y].map(|v| format!("{v:.16e}")))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// A smooth closed curve `t ↦ γ(t)`, `t ∈ [0, 2π)`.
pub trait ClosedCurve: Send + Sync {
    fn point(&self, t: f64) -> Vec2;

    fn velocity(&self, t: f64) -> Vec2;

    fn acceleration(&self, t: f64) -> Vec2;

    /// Signed curvature `[γ', γ''] / |γ'|³`.
    fn curvature(&self, t: f64) -> f64 {
        let v = self.velocity(t);
        cross(v, self.acceleration(t)) / v.norm().powi(3)
    }

    /// `n` samples at equally spaced parameters.
    fn sample(&self, n: usize) -> OrientedCurve {
        OrientedCurve::closed((0..n).map(|k| self.point(TAU * k as f64 / n as f64)).collect())
    }
}

pub fn curve_length(c: &dyn ClosedCurve, tol: &Tolerances) -> Result<f64> {
    quad_vec(|t| [c.velocity(t).norm()], 0.0, TAU, tol).map(|[v]| v)
}

/// `∮ (x dy − y dx) / 2`.
pub fn curve_signed_area(c: &dyn ClosedCurve, tol: &Tolerances) -> Result<f64> {
    quad_vec(|t| [0.5 * cross(c.point(t), c.velocity(t))], 0.0, TAU, tol).map(|[v]| v)
}

/// Rotation index of the tangent, from the integral of `[γ', γ''] / |γ'|²`.
pub fn curve_rotation_index(c: &dyn ClosedCurve, tol: &Tolerances) -> Result<i64> {
    let [turn] = quad_vec(
        |t| {
            let v = c.velocity(t);
            [cross(v, c.acceleration(t)) / v.norm_squared()]
        },
        0.0,
        TAU,
        tol,
    )?;
    Ok((turn / TAU).round() as i64)
}

/// `∫ L(γ, γ') dt` for any degree-one Lagrangian.
pub fn lagrangian_length<L>(c: &dyn ClosedCurve, mut lagrangian: L, tol: &Tolerances) -> Result<f64>
where
    L: FnMut(Vec2, Vec2) -> Result<f64>,
{
    quad_try(|t| Ok([lagrangian(c.point(t), c.velocity(t))?]), 0.0, TAU, tol).map(|[v]| v)
}

/// `center + (a cos t, b sin t)` rotated by `rotation`; counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub center: Vec2,
    pub a: f64,
    pub b: f64,
    pub rotation: f64,
}

impl Ellipse {
    pub fn new(center: Vec2, a: f64, b: f64, rotation: f64) -> Self {
        Self { center, a, b, rotation }
    }

    pub fn circle(center: Vec2, r: f64) -> Self {
        Self::new(center, r, r, 0.0)
    }

    fn rotate(&self, v: Vec2) -> Vec2 {
        let (s, c) = self.rotation.sin_cos();
        Vec2::new(c * v.x - s * v.y, s * v.x + c * v.y)
    }
}

impl ClosedCurve for Ellipse {
    fn point(&self, t: f64) -> Vec2 {
        self.center + self.rotate(Vec2::new(self.a * t.cos(), self.b * t.sin()))
    }
    fn velocity(&self, t: f64) -> Vec2 {
        self.rotate(Vec2::new(-self.a * t.sin(), self.b * t.cos()))
    }
    fn acceleration(&self, t: f64) -> Vec2 {
        self.rotate(Vec2::new(-self.a * t.cos(), -self.b * t.sin()))
    }
}

/// The convex curve with support function
/// `h(θ) = base + Σ_n (c_n cos nθ + s_n sin nθ)` about `center`, `n ≥ 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportCurve {
    pub center: Vec2,
    pub base: f64,
    /// `(n, c_n, s_n)`.
    pub harmonics: Vec<(u32, f64, f64)>,
}

impl SupportCurve {
    /// `h = 1 + 0.05 cos 4θ` scaled by `size`.
    pub fn rounded_square(center: Vec2, size: f64) -> Self {
        Self {
            center,
            base: size,
            harmonics: vec![(4, 0.05 * size, 0.0)],
        }
    }

    /// `h`, `h'`, `h''`, `h'''`.
    fn support(&self, t: f64) -> [f64; 4] {
        let mut h = [self.base, 0.0, 0.0, 0.0];
        for &(n, c, s) in &self.harmonics {
            let n = n as f64;
            let (sn, cn) = (n * t).sin_cos();
            let w = c * cn + s * sn;
            let dw = n * (-c * sn + s * cn);
            h[0] += w;
            h[1] += dw;
            h[2] -= n * n * w;
            h[3] -= n * n * dw;
        }
        h
    }

    /// Smallest radius of curvature `h + h''` on a fine sample (positive iff convex).
    pub fn min_curvature_radius(&self) -> f64 {
        (0..4096)
            .map(|k| {
                let h = self.support(TAU * k as f64 / 4096.0);
                h[0] + h[2]
            })
            .fold(f64::INFINITY, f64::min)
    }
}

impl ClosedCurve for SupportCurve {
    fn point(&self, t: f64) -> Vec2 {
        let h = self.support(t);
        self.center + h[0] * unit(t) + h[1] * perp(unit(t))
    }
    fn velocity(&self, t: f64) -> Vec2 {
        let h = self.support(t);
        (h[0] + h[2]) * perp(unit(t))
    }
    fn acceleration(&self, t: f64) -> Vec2 {
        let h = self.support(t);
        (h[1] + h[3]) * perp(unit(t)) - (h[0] + h[2]) * unit(t)
    }
}

/// `Γ(t) = γ + t n`, where `n` is the unit normal with `(n, γ')` positively oriented.
pub struct WaveFront<'a> {
    pub base: &'a dyn ClosedCurve,
    pub t: f64,
}

impl ClosedCurve for WaveFront<'_> {
    fn point(&self, s: f64) -> Vec2 {
        let v = self.base.velocity(s);
        self.base.point(s) - self.t * perp(v) / v.norm()
    }
    fn velocity(&self, s: f64) -> Vec2 {
        (1.0 + self.t * self.base.curvature(s)) * self.base.velocity(s)
    }
    fn acceleration(&self, s: f64) -> Vec2 {
        let h = 1e-5;
        (self.velocity(s + h) - self.velocity(s - h)) / (2.0 * h)
    }
}

/// Coorienting normal of a polyline at its vertices.
pub fn vertex_normals(c: &OrientedCurve) -> Vec<Vec2> {
    c.vertex_tangents().into_iter().map(|t| -perp(t)).collect()
}

pub fn ensure_closed(c: &OrientedCurve) -> Result<()> {
    if c.closed {
        Ok(())
    } else {
        Err(Error::Invalid("curve must be closed".into()))
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn polygon_area_and_orientation() {
        let sq = OrientedCurve::closed(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(2.0, 1.0),
            Vec2::new(0.0, 1.0),
        ]);
        assert_eq!(sq.signed_area(), 2.0);
        assert_eq!(sq.reversed().signed_area(), -2.0);
        assert_eq!(sq.length(), 6.0);
        assert_eq!(sq.rotation_index(), 1);
        assert_eq!(sq.reversed().rotation_index(), -1);
        assert!(sq.is_convex_ccw());
        assert!(!sq.reversed().is_convex_ccw());
        assert_eq!(sq.point_at(2.5), Vec2::new(2.0, 0.5));
        assert_eq!(sq.point_at(6.5), Vec2::new(0.5, 0.0));
    }

    #[test]
    fn ellipse_quadratures() {
        let tol = Tolerances::default();
        let e = Ellipse::new(Vec2::new(1.0, -2.0), 3.0, 1.0, 0.4);
        assert!((curve_signed_area(&e, &tol).unwrap() - 3.0 * PI).abs() < 1e-12);
        let c = Ellipse::circle(Vec2::zeros(), 2.0);
        assert!((curve_length(&c, &tol).unwrap() - 4.0 * PI).abs() < 1e-12);
        assert!((c.curvature(0.3) - 0.5).abs() < 1e-14);
        assert_eq!(curve_rotation_index(&e, &tol).unwrap(), 1);
    }

    #[test]
    fn front_of_circle_is_larger_circle() {
        let c = Ellipse::circle(Vec2::new(0.5, 0.5), 1.0);
        let f = WaveFront { base: &c, t: 0.25 };
        for k in 0..8 {
            let p = f.point(0.7 * k as f64);
            assert!(((p - Vec2::new(0.5, 0.5)).norm() - 1.25).abs() < 1e-14);
        }
        let same = WaveFront { base: &c, t: 0.0 };
        assert_eq!(same.point(1.0), c.point(1.0));
    }

    #[test]
    fn front_area_law() {
        let tol = Tolerances::default();
        let e = Ellipse::new(Vec2::new(0.2, 0.1), 2.0, 1.0, 0.3);
        let (s, l) = (curve_signed_area(&e, &tol).unwrap(), curve_length(&e, &tol).unwrap());
        for t in [-1.0, -0.3, 0.5, 2.0] {
            let f = WaveFront { base: &e, t };
            let expected = s + t * l + PI * t * t;
            assert!((curve_signed_area(&f, &tol).unwrap() - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn support_curve_closes_and_is_convex() {
        let r = SupportCurve::rounded_square(Vec2::new(1.0, 1.0), 1.0);
        assert!(r.min_curvature_radius() > 0.0);
        assert!((r.point(0.0) - r.point(TAU)).norm() < 1e-14);
        assert!(r.sample(256).is_convex_ccw());
        let tol = Tolerances::default();
        // perimeter of a support curve = 2π · base
        assert!((curve_length(&r, &tol).unwrap() - TAU).abs() < 1e-12);
        let h = 1e-6;
        let fd = (r.velocity(0.3 + h) - r.velocity(0.3 - h)) / (2.0 * h);
        assert!((fd - r.acceleration(0.3)).norm() < 1e-7);
    }

    #[test]
    fn polyline_normals_point_outward_for_ccw() {
        let c = Ellipse::circle(Vec2::zeros(), 1.0).sample(64);
        for (p, n) in c.vertices.iter().zip(vertex_normals(&c)) {
            assert!((n - p).norm() < 1e-2);
        }
    }

    #[test]
    fn hausdorff_of_shifted_copies() {
        let a = Ellipse::circle(Vec2::zeros(), 1.0).sample(64);
        let b = Ellipse::circle(Vec2::new(0.1, 0.0), 1.0).sample(64);
        assert!((a.hausdorff(&b) - 0.1).abs() < 1e-2);
        assert_eq!(a.hausdorff(&a), 0.0);
    }
}
