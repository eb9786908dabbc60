//! Finsler reflection by the tangent-line construction on the indicatrix, and
//! the projective reflection law.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geom::{heading, Vec2};
use crate::metrics::{Indicatrix, Metric, ProjectiveMetric};
use crate::numerics::{brent, quad_1d};

/// `|sin(angle to the boundary)|` below which an incidence counts as grazing.
pub const GRAZING_SIN: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    pub velocity: Vec2,
    /// Set when the construction degenerates; `velocity` is then the input.
    pub grazing: bool,
}

impl Reflection {
    pub fn heading(&self) -> f64 {
        heading(self.velocity)
    }
}

/// `L_v(e(θ)) · e(α_b)`: the tangent line to the indicatrix at direction `θ`
/// meets the boundary line at distance `1/Q` from the origin.
fn boundary_momentum(ind: &Indicatrix, boundary_dir: f64, theta: f64) -> Result<f64> {
    let (p, dp) = ind.support(theta)?;
    let (s, c) = (boundary_dir - theta).sin_cos();
    Ok(p * c + dp * s)
}

/// The outgoing velocity on `I` whose tangent line meets the boundary line at
/// the same point as the tangent line at `u_in`.
pub fn finsler_reflect(ind: &Indicatrix, boundary_dir: f64, u_in: Vec2, tol: f64) -> Result<Reflection> {
    let beta = heading(u_in);
    let side = (beta - boundary_dir).sin();
    let q_in = boundary_momentum(ind, boundary_dir, beta)?;
    let scale = ind.support(boundary_dir)?.0.abs().max(ind.support(boundary_dir + PI)?.0.abs());
    if side.abs() < GRAZING_SIN || q_in.abs() < GRAZING_SIN * scale {
        return Ok(Reflection {
            velocity: u_in,
            grazing: true,
        });
    }
    // The momentum is monotone on each open half-plane bounded by the boundary line.
    let (lo, hi) = if side < 0.0 {
        (boundary_dir, boundary_dir + PI)
    } else {
        (boundary_dir - PI, boundary_dir)
    };
    let f = |theta: f64| boundary_momentum(ind, boundary_dir, theta).map_or(f64::NAN, |q| q - q_in);
    let gamma = brent(f, lo, hi, tol)?;
    Ok(Reflection {
        velocity: ind.point_at(gamma)?,
        grazing: false,
    })
}

/// Outgoing heading from matching the boundary component of `L_v` directly on
/// the support function of `m` at `x`. Needs only `p + p_αα > 0`, so it also
/// applies where a gauge choice makes `L` take negative values.
pub fn momentum_reflect(m: &Metric, x: Vec2, boundary_dir: f64, beta: f64, tol: f64) -> Result<f64> {
    let side = (beta - boundary_dir).sin();
    if side.abs() < GRAZING_SIN {
        return Err(Error::Grazing { point: x });
    }
    let momentum = |theta: f64| -> Result<f64> {
        let (p, dp) = m.support_pair(x, theta)?;
        let (s, c) = (boundary_dir - theta).sin_cos();
        Ok(p * c + dp * s)
    };
    let q_in = momentum(beta)?;
    let (lo, hi) = if side < 0.0 {
        (boundary_dir, boundary_dir + PI)
    } else {
        (boundary_dir - PI, boundary_dir)
    };
    brent(|t| momentum(t).map_or(f64::NAN, |q| q - q_in), lo, hi, tol)
}

/// Outgoing direction `γ` for the projective metric at `x`, boundary
/// direction `alpha`, incoming direction `beta`.
pub fn projective_reflect(pm: &ProjectiveMetric, x: Vec2, alpha: f64, beta: f64, tol: f64) -> Result<f64> {
    let side = (beta - alpha).sin();
    if side.abs() < GRAZING_SIN {
        return Err(Error::Grazing { point: x });
    }
    let kernel = |phi: f64| (alpha - phi).cos() * pm.line_weight(x, phi);
    let mismatch = |gamma: f64| {
        let lower = quad_1d(kernel, gamma - FRAC_PI_2, beta - FRAC_PI_2, &pm.tol);
        let upper = quad_1d(kernel, gamma + FRAC_PI_2, beta + FRAC_PI_2, &pm.tol);
        match (lower, upper) {
            (Ok(l), Ok(u)) => l - u,
            _ => f64::NAN,
        }
    };
    let (lo, hi) = if side < 0.0 { (alpha, alpha + PI) } else { (alpha - PI, alpha) };
    brent(mismatch, lo, hi, tol)
}

/// Mirror `beta` in the line of direction `boundary_dir`.
pub fn equal_angle_reflect(boundary_dir: f64, beta: f64) -> f64 {
    2.0 * boundary_dir - beta
}
