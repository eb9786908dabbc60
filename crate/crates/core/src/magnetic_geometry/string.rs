//! The string construction around a circular obstacle.
//!
//! `F(X)` is the magnetic length of the shortest counterclockwise loop from `X`
//! around the obstacle: an `R`-arc from `X` to a point where it touches the
//! obstacle from outside, an arc of the obstacle, and an `R`-arc back to `X`.
//! Level sets of `F` are billiard tables for which the obstacle is a caustic.

use std::f64::consts::TAU;

use crate::curves::OrientedCurve;
use crate::error::{Error, Result};
use crate::geom::{cross, heading, perp, reduce_angle, unit, Vec2};
use crate::numerics::brent;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Obstacle {
    pub center: Vec2,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StringLoop {
    pub value: f64,
    /// Where the outgoing and the returning arc touch the obstacle.
    pub tangency: [Vec2; 2],
    /// Centers of the outgoing and the returning `R`-circle.
    pub centers: [Vec2; 2],
    /// Counterclockwise angle wrapped on the obstacle.
    pub wrapped: f64,
}

impl Obstacle {
    fn check(&self, radius: f64) -> Result<()> {
        if !(self.radius > 0.0 && self.radius < radius) {
            return Err(Error::Unsupported(format!(
                "obstacle radius {} must lie in (0, R) with R = {radius}",
                self.radius
            )));
        }
        Ok(())
    }

    /// Largest distance from the center at which `F` is defined, `2R − ρ`.
    pub fn reach(&self, radius: f64) -> f64 {
        2.0 * radius - self.radius
    }
}

/// Relative slack on the obstacle and reach radii, so that roundoff on the
/// boundary circles does not turn into an error.
const EDGE_SLACK: f64 = 1e-12;

fn swept(center: Vec2, from: Vec2, to: Vec2) -> f64 {
    let sweep = reduce_angle(heading(to - center) - heading(from - center), 0.0);
    // coincident endpoints: no arc rather than a full turn
    if (to - from).norm() < 1e-14 || TAU - sweep < 1e-14 {
        0.0
    } else {
        sweep
    }
}

fn arc_length(radius: f64, center: Vec2, from: Vec2, to: Vec2) -> f64 {
    swept(center, from, to) * radius / 2.0 + cross(to - from, center) / (2.0 * radius)
}

pub fn string_function(obstacle: &Obstacle, radius: f64, x: Vec2) -> Result<StringLoop> {
    obstacle.check(radius)?;
    let (o, rho) = (obstacle.center, obstacle.radius);
    let offset = x - o;
    let d = offset.norm();
    if d < rho * (1.0 - EDGE_SLACK) {
        return Err(Error::InsideObstacle { point: x });
    }
    if d > obstacle.reach(radius) * (1.0 + EDGE_SLACK) {
        return Err(Error::Unreachable { distance: d, radius });
    }
    let m = radius - rho;
    let k = (radius * radius - m * m - d * d) / (2.0 * m);
    let spread = (k / d).clamp(-1.0, 1.0).acos();
    let psi = heading(offset);
    let (phi_a, phi_b) = (psi + spread, psi - spread);
    let centers = [o - m * unit(phi_a), o - m * unit(phi_b)];
    let tangency = [o + rho * unit(phi_a), o + rho * unit(phi_b)];

    let wrapped = TAU - 2.0 * spread;
    let on_obstacle = rho * wrapped - rho * rho * wrapped / (2.0 * radius)
        + cross(tangency[1] - tangency[0], o) / (2.0 * radius);
    let value = arc_length(radius, centers[0], x, tangency[0])
        + on_obstacle
        + arc_length(radius, centers[1], tangency[1], x);
    Ok(StringLoop {
        value,
        tangency,
        centers,
        wrapped,
    })
}

/// Distance from the obstacle center at which `F = c` along the ray at `angle`.
pub fn string_level_radius(obstacle: &Obstacle, radius: f64, c: f64, angle: f64, tol: f64) -> Result<f64> {
    obstacle.check(radius)?;
    let e = unit(angle);
    let f = |r: f64| {
        string_function(obstacle, radius, obstacle.center + r * e)
            .map(|l| l.value - c)
            .unwrap_or(f64::NAN)
    };
    brent(f, obstacle.radius, obstacle.reach(radius), tol)
}

/// The level set `{F = c}` sampled at `n` equally spaced polar angles.
pub fn string_level_set(obstacle: &Obstacle, radius: f64, c: f64, n: usize) -> Result<OrientedCurve> {
    let vertices = (0..n)
        .map(|k| {
            let angle = TAU * k as f64 / n as f64;
            let r = string_level_radius(obstacle, radius, c, angle, 1e-14)?;
            Ok(obstacle.center + r * unit(angle))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrientedCurve::closed(vertices))
}

/// Heading at `x` of the `R`-circle that leaves `x` and touches the obstacle,
/// chosen to point against `outward`.
pub fn tangent_launch(obstacle: &Obstacle, radius: f64, x: Vec2, outward: Vec2) -> Result<f64> {
    let loop_ = string_function(obstacle, radius, x)?;
    let pick = loop_
        .centers
        .iter()
        .map(|&c| perp(x - c))
        .min_by(|a, b| a.dot(&outward).total_cmp(&b.dot(&outward)))
        .expect("two candidate circles");
    Ok(heading(pick))
}

/// `| |C − O| − (R − ρ) |` for the counterclockwise `R`-circle through `x` with heading `alpha`.
pub fn tangency_gap(obstacle: &Obstacle, radius: f64, x: Vec2, alpha: f64) -> f64 {
    let c = x + radius * perp(unit(alpha));
    ((c - obstacle.center).norm() - (radius - obstacle.radius)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{curve_signed_area, Ellipse};
    use crate::numerics::Tolerances;

    fn disc() -> Obstacle {
        Obstacle {
            center: Vec2::zeros(),
            radius: 0.3,
        }
    }

    #[test]
    fn radial_symmetry() {
        let base = string_function(&disc(), 1.0, Vec2::new(0.9, 0.0)).unwrap().value;
        for k in 1..16 {
            let x = 0.9 * unit(0.4 * k as f64);
            assert!((string_function(&disc(), 1.0, x).unwrap().value - base).abs() < 1e-9);
        }
    }

    #[test]
    fn contact_with_obstacle_is_its_length() {
        // From a point on the obstacle the loop is the obstacle itself.
        let ob = Obstacle {
            center: Vec2::new(0.2, -0.1),
            radius: 0.3,
        };
        let x = ob.center + 0.3 * unit(1.0);
        let f = string_function(&ob, 1.0, x).unwrap();
        let circle = Ellipse::circle(ob.center, 0.3);
        let expected = TAU * 0.3 - curve_signed_area(&circle, &Tolerances::default()).unwrap();
        assert!((f.value - expected).abs() < 1e-10);
    }

    #[test]
    fn tangency_geometry() {
        let x = Vec2::new(0.5, 0.7);
        let f = string_function(&disc(), 1.0, x).unwrap();
        for (c, t) in f.centers.iter().zip(f.tangency) {
            assert!(((x - c).norm() - 1.0).abs() < 1e-12);
            assert!(((t - c).norm() - 1.0).abs() < 1e-12);
            assert!((t.norm() - 0.3).abs() < 1e-12);
        }
    }

    #[test]
    fn configuration_errors() {
        assert!(matches!(
            string_function(&disc(), 1.0, Vec2::new(0.1, 0.0)),
            Err(Error::InsideObstacle { .. })
        ));
        assert!(matches!(
            string_function(&disc(), 0.2, Vec2::new(1.0, 0.0)),
            Err(Error::Unsupported(_))
        ));
        assert!(string_function(&disc(), 1.0, Vec2::new(1.8, 0.0)).is_err());
    }

    #[test]
    fn level_set_is_convex_and_encloses() {
        let c = string_function(&disc(), 1.0, Vec2::new(1.0, 0.0)).unwrap().value;
        let level = string_level_set(&disc(), 1.0, c, 128).unwrap();
        assert!(level.is_convex_ccw());
        assert!(level.vertices.iter().all(|p| (p.norm() - 1.0).abs() < 1e-10));
    }
}
