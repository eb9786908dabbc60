//! Lagrangians whose extremals are all counterclockwise circles of radius `R`.
//!
//! The support function is
//! `p(x, α) = a cos α + b sin α + ∫_0^{α+π/2} cos(α − φ) G(φ) dφ`
//! with `G(φ) = g(x + R e(φ))` and `α` reduced to `[−π/2, 3π/2)`. When the
//! circle of radius `R` about `x` does not have its center of mass at `x`, this
//! expression jumps by `P(α) = C cos α + S sin α` (the first Fourier moments of
//! `G`) at the cut. We subtract the secular term `t P(α)`, `t = (α + π/2)/2π`,
//! which leaves admissible densities untouched and turns every other density
//! into a genuine smooth metric.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::field::Field;
use super::gauge::GaugeForm;
use super::SupportJet;
use crate::error::{Error, Result};
use crate::geom::{reduce_angle, unit, Vec2};
use crate::numerics::{quad_vec, Tolerances};

#[derive(Debug, Clone)]
pub struct CircleMetric {
    pub radius: f64,
    pub g: Field,
    pub gauge: GaugeForm,
    pub tol: Tolerances,
}

impl CircleMetric {
    pub fn new(radius: f64, g: Field, gauge: GaugeForm, tol: Tolerances) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Invalid(format!("circle radius must be positive, got {radius}")));
        }
        tol.validate()?;
        Ok(Self { radius, g, gauge, tol })
    }

    /// Metric with the canonical gauge `b = 0`, `a = (1/R) ∫_0^{x2} g(x1 + R, s) ds`.
    pub fn canonical(radius: f64, g: Field, tol: Tolerances) -> Result<Self> {
        let gauge = GaugeForm::canonical(g.clone(), radius, tol);
        Self::new(radius, g, gauge, tol)
    }

    /// Same density, gauge shifted by `dh`.
    pub fn with_exact_shift(&self, h: Field) -> Self {
        Self {
            gauge: self.gauge.with_exact(h),
            ..self.clone()
        }
    }

    /// `g` at the point of the `R`-circle about `x` in direction `φ`.
    pub fn density_on_circle(&self, x: Vec2, phi: f64) -> f64 {
        self.g.value(x + self.radius * unit(phi))
    }

    pub fn support(&self, x: Vec2, alpha: f64) -> Result<f64> {
        Ok(self.jet(x, alpha)?.p)
    }

    pub fn lagrangian(&self, x: Vec2, v: Vec2) -> Result<f64> {
        let speed = v.norm();
        if speed == 0.0 {
            return Ok(0.0);
        }
        Ok(speed * self.support(x, v.y.atan2(v.x))?)
    }

    /// Full jet of the support function, every derivative taken under the
    /// integral sign.
    pub fn jet(&self, x: Vec2, alpha: f64) -> Result<SupportJet> {
        let r = self.radius;
        let alpha = reduce_angle(alpha, -FRAC_PI_2);
        let psi = alpha + FRAC_PI_2;
        let sample = |phi: f64| {
            let e = unit(phi);
            let (v, grad) = self.g.value_and_gradient(x + r * e);
            (e, v, grad)
        };
        let head = quad_vec(
            |phi| {
                let (e, v, gr) = sample(phi);
                let (s, c) = (alpha - phi).sin_cos();
                [
                    c * v,
                    s * v,
                    c * gr.x,
                    c * gr.y,
                    s * gr.x,
                    s * gr.y,
                    e.x * v,
                    e.y * v,
                    e.x * gr.x,
                    e.x * gr.y,
                    e.y * gr.x,
                    e.y * gr.y,
                ]
            },
            0.0,
            psi,
            &self.tol,
        )?;
        let tail = quad_vec(
            |phi| {
                let (e, v, gr) = sample(phi);
                [e.x * v, e.y * v, e.x * gr.x, e.x * gr.y, e.y * gr.x, e.y * gr.y]
            },
            psi,
            TAU,
            &self.tol,
        )?;

        let (a, grad_a) = self.gauge.a.value_and_gradient(x);
        let (b, grad_b) = self.gauge.b.value_and_gradient(x);
        let (s, c) = alpha.sin_cos();
        let g_psi = self.density_on_circle(x, psi);

        let p_raw = a * c + b * s + head[0];
        let p_a_raw = -a * s + b * c - head[1];
        let p_aa_raw = -a * c - b * s + g_psi - head[0];
        let p_x_raw = grad_a * c + grad_b * s + Vec2::new(head[2], head[3]);
        let p_ax_raw = -grad_a * s + grad_b * c - Vec2::new(head[4], head[5]);

        let moment_c = head[6] + tail[0];
        let moment_s = head[7] + tail[1];
        let grad_c = Vec2::new(head[8] + tail[2], head[9] + tail[3]);
        let grad_s = Vec2::new(head[10] + tail[4], head[11] + tail[5]);

        let t = psi / TAU;
        let big_p = moment_c * c + moment_s * s;
        let big_p_a = -moment_c * s + moment_s * c;
        let grad_p = grad_c * c + grad_s * s;
        let grad_p_a = -grad_c * s + grad_s * c;

        Ok(SupportJet {
            p: p_raw - t * big_p,
            p_a: p_a_raw - t * big_p_a - big_p / TAU,
            p_aa: p_aa_raw + t * big_p - big_p_a / PI,
            curvature: g_psi - big_p_a / PI,
            p_x: p_x_raw - t * grad_p,
            p_ax: p_ax_raw - t * grad_p_a - grad_p / TAU,
        })
    }
}

/// `p(x, α)` of a circle metric.
pub fn circle_support(c: &CircleMetric, x: Vec2, alpha: f64) -> Result<f64> {
    c.support(x, alpha)
}

/// `p + p_αα` at `(x, α)`. Equals `g(x1 − R sin α, x2 + R cos α)` for admissible `g`.
pub fn support_to_curvature(c: &CircleMetric, x: Vec2, alpha: f64) -> Result<f64> {
    Ok(c.jet(x, alpha)?.curvature)
}
