//! Distances, lengths and wave fronts of the constant-field magnetic metric
//! `L(x, v) = |v| + [v, x] / (2R)`, whose geodesics are counterclockwise
//! circles of radius `R`.

pub mod contour;
pub mod ellipse;
pub mod string;

pub use contour::extract_level_sets;
pub use ellipse::{ellipse_focusing_miss, ellipse_potential, ellipse_tangent, magnetic_ellipse, magnetic_ellipse_with, EllipseOptions};
pub use string::{string_function, string_level_radius, string_level_set, tangency_gap, tangent_launch, Obstacle, StringLoop};

use std::f64::consts::PI;

use crate::curves::{curve_length, curve_rotation_index, curve_signed_area, vertex_normals, ClosedCurve, OrientedCurve, WaveFront};
use crate::error::{Error, Result};
use crate::geom::{cross, perp, reduce_angle, unit, Vec2};
use crate::numerics::Tolerances;

/// A counterclockwise arc of the circle `center + radius·e(θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcSpec {
    pub center: Vec2,
    pub radius: f64,
    pub start: f64,
    /// Counterclockwise sweep in `(0, 2π]`.
    pub sweep: f64,
}

impl ArcSpec {
    pub fn start_point(&self) -> Vec2 {
        self.center + self.radius * unit(self.start)
    }

    pub fn end_point(&self) -> Vec2 {
        self.center + self.radius * unit(self.start + self.sweep)
    }

    /// The counterclockwise arc of the circle about `center` from `a` to `b`.
    pub fn between(center: Vec2, a: Vec2, b: Vec2) -> Self {
        let start = (a - center).y.atan2((a - center).x);
        let end = (b - center).y.atan2((b - center).x);
        let mut sweep = reduce_angle(end - start, 0.0);
        if sweep == 0.0 {
            sweep = 2.0 * PI;
        }
        Self {
            center,
            radius: (a - center).norm(),
            start,
            sweep,
        }
    }

    /// Point at parameter `u ∈ [0, 1]` and its velocity with respect to `u`.
    pub fn at(&self, u: f64) -> (Vec2, Vec2) {
        let th = self.start + u * self.sweep;
        (
            self.center + self.radius * unit(th),
            self.radius * self.sweep * perp(unit(th)),
        )
    }
}

/// `d(A, B) = θR/2 + [B − A, C]/(2R)` along a geodesic arc.
pub fn arc_distance(radius: f64, arc: &ArcSpec) -> f64 {
    let (a, b) = (arc.start_point(), arc.end_point());
    arc.sweep * radius / 2.0 + cross(b - a, arc.center) / (2.0 * radius)
}

/// Both counterclockwise `R`-arcs from `A` to `B`, with their lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointDistance {
    pub value: f64,
    pub arcs: [ArcSpec; 2],
    pub lengths: [f64; 2],
}

impl PointDistance {
    pub fn minimizing_arc(&self) -> &ArcSpec {
        if self.lengths[0] <= self.lengths[1] {
            &self.arcs[0]
        } else {
            &self.arcs[1]
        }
    }
}

/// Relative slack allowed on `|AB| ≤ 2R` for the limiting antipodal case.
const REACH_SLACK: f64 = 1e-12;

pub fn point_distance_detail(radius: f64, a: Vec2, b: Vec2) -> Result<Option<PointDistance>> {
    let chord = b - a;
    let d = chord.norm();
    if d == 0.0 {
        return Ok(None);
    }
    if d > 2.0 * radius * (1.0 + REACH_SLACK) {
        return Err(Error::Unreachable { distance: d, radius });
    }
    let offset = (radius * radius - 0.25 * d * d).max(0.0).sqrt();
    let mid = 0.5 * (a + b);
    let normal = perp(chord / d);
    let arcs = [mid + offset * normal, mid - offset * normal].map(|c| {
        let mut arc = ArcSpec::between(c, a, b);
        arc.radius = radius;
        arc
    });
    let lengths = arcs.map(|arc| arc_distance(radius, &arc));
    Ok(Some(PointDistance {
        value: lengths[0].min(lengths[1]),
        arcs,
        lengths,
    }))
}

/// Magnetic distance from `A` to `B`: the shorter of the two counterclockwise `R`-arcs.
pub fn point_distance(radius: f64, a: Vec2, b: Vec2) -> Result<f64> {
    Ok(point_distance_detail(radius, a, b)?.map_or(0.0, |d| d.value))
}

/// `l(γ) − S(γ)/R`.
pub fn finsler_length_closed(curve: &OrientedCurve, radius: f64) -> f64 {
    curve.length() - curve.signed_area() / radius
}

pub fn finsler_length_parametric(curve: &dyn ClosedCurve, radius: f64, tol: &Tolerances) -> Result<f64> {
    Ok(curve_length(curve, tol)? - curve_signed_area(curve, tol)? / radius)
}

/// Each vertex moved distance `t` along the coorienting normal.
pub fn wave_front(curve: &OrientedCurve, t: f64) -> OrientedCurve {
    let vertices = curve
        .vertices
        .iter()
        .zip(vertex_normals(curve))
        .map(|(p, n)| p + t * n)
        .collect();
    OrientedCurve {
        vertices,
        closed: curve.closed,
    }
}

/// `(πR² w − S(Γ(−R))) / R` with `w` the rotation index of `γ`.
pub fn length_via_front(curve: &OrientedCurve, radius: f64) -> f64 {
    let w = curve.rotation_index() as f64;
    (PI * radius * radius * w - wave_front(curve, -radius).signed_area()) / radius
}

pub fn length_via_front_parametric(curve: &dyn ClosedCurve, radius: f64, tol: &Tolerances) -> Result<f64> {
    let w = curve_rotation_index(curve, tol)? as f64;
    let front = WaveFront { base: curve, t: -radius };
    Ok((PI * radius * radius * w - curve_signed_area(&front, tol)?) / radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::Ellipse;
    use crate::metrics::MagneticMetric;
    use crate::numerics::quad_1d;

    fn quad_along(arc: &ArcSpec, radius: f64) -> f64 {
        let m = MagneticMetric::constant(radius);
        quad_1d(
            |u| {
                let (x, v) = arc.at(u);
                m.lagrangian(x, v)
            },
            0.0,
            1.0,
            &Tolerances::default(),
        )
        .unwrap()
    }

    #[test]
    fn arc_distance_examples() {
        let half = ArcSpec {
            center: Vec2::zeros(),
            radius: 1.0,
            start: 0.0,
            sweep: PI,
        };
        assert!((arc_distance(1.0, &half) - PI / 2.0).abs() < 1e-15);
        let shifted = ArcSpec {
            center: Vec2::new(0.0, 1.0),
            ..half
        };
        assert!((arc_distance(1.0, &shifted) - (PI / 2.0 - 1.0)).abs() < 1e-15);
        assert!((quad_along(&shifted, 1.0) - (PI / 2.0 - 1.0)).abs() < 1e-10);
        let full = ArcSpec {
            center: Vec2::new(3.0, -2.0),
            radius: 0.7,
            start: 1.0,
            sweep: 2.0 * PI,
        };
        assert!((arc_distance(0.7, &full) - PI * 0.7).abs() < 1e-14);
    }

    #[test]
    fn point_distance_cases() {
        assert_eq!(point_distance(1.0, Vec2::new(0.3, 0.1), Vec2::new(0.3, 0.1)).unwrap(), 0.0);
        assert!(matches!(
            point_distance(1.0, Vec2::zeros(), Vec2::new(2.5, 0.0)),
            Err(Error::Unreachable { .. })
        ));
        let (a, b) = (Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0));
        let d = point_distance_detail(1.0, a, b).unwrap().unwrap();
        assert!((d.arcs[0].sweep - PI).abs() < 1e-12 && (d.arcs[1].sweep - PI).abs() < 1e-12);
        assert!((d.value - PI / 2.0).abs() < 1e-12);
        let (p, q) = (Vec2::new(0.2, 0.3), Vec2::new(-0.5, 0.9));
        let (dpq, dqp) = (point_distance(1.0, p, q).unwrap(), point_distance(1.0, q, p).unwrap());
        assert!((dpq - dqp).abs() > 1e-3);
    }

    #[test]
    fn closed_lengths_of_unit_circles() {
        let ccw = Ellipse::circle(Vec2::zeros(), 1.0);
        let tol = Tolerances::default();
        assert!((finsler_length_parametric(&ccw, 1.0, &tol).unwrap() - PI).abs() < 1e-12);
        let cw = ccw.sample(20000).reversed();
        assert!((finsler_length_closed(&cw, 1.0) - 3.0 * PI).abs() < 1e-6);
        assert!((length_via_front(&cw, 1.0) - 3.0 * PI).abs() < 1e-6);
        let point = OrientedCurve::closed(vec![Vec2::new(1.0, 1.0)]);
        assert_eq!(finsler_length_closed(&point, 1.0), 0.0);
    }

    #[test]
    fn front_of_radius_circle_collapses() {
        let tol = Tolerances::default();
        let c = Ellipse::circle(Vec2::new(0.4, -0.2), 1.5);
        assert!((length_via_front_parametric(&c, 1.5, &tol).unwrap() - 1.5 * PI).abs() < 1e-12);
        let poly = c.sample(4096);
        let front = wave_front(&poly, -1.5);
        assert!(front.vertices.iter().all(|p| (p - Vec2::new(0.4, -0.2)).norm() < 1e-5));
    }

    #[test]
    fn polyline_front_agrees_with_closed_form() {
        let e = Ellipse::new(Vec2::new(0.1, 0.2), 3.0, 1.0, 0.0).sample(20000);
        assert!((length_via_front(&e, 1.0) - finsler_length_closed(&e, 1.0)).abs() < 1e-6);
        let tol = Tolerances::default();
        let ell = Ellipse::new(Vec2::new(0.1, 0.2), 3.0, 1.0, 0.0);
        let a = length_via_front_parametric(&ell, 1.0, &tol).unwrap();
        let b = finsler_length_parametric(&ell, 1.0, &tol).unwrap();
        assert!((a - b).abs() < 1e-8);
    }
}
