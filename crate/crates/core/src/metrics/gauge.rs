//! Gauge 1-forms `a dx1 + b dx2` attached to circle metrics.

use std::sync::Arc;

use super::field::{Constant, ExactShift, Field, ScalarField};
use crate::geom::Vec2;
use crate::numerics::{quad_vec, Tolerances};

/// The 1-form `a dx1 + b dx2`.
#[derive(Debug, Clone)]
pub struct GaugeForm {
    pub a: Field,
    pub b: Field,
}

impl GaugeForm {
    pub fn new(a: Field, b: Field) -> Self {
        Self { a, b }
    }

    /// `b = 0`, `a(x1, x2) = (1/R) ∫_0^{x2} g(x1 + R, s) ds`, whose curl is
    /// `g(x1 + R, x2) / R` by construction.
    pub fn canonical(g: Field, radius: f64, tol: Tolerances) -> Self {
        Self {
            a: Arc::new(CanonicalPotential { g, radius, tol }),
            b: Arc::new(Constant(0.0)),
        }
    }

    /// `a_{x2} - b_{x1}`.
    pub fn curl(&self, x: Vec2) -> f64 {
        self.a.gradient(x).y - self.b.gradient(x).x
    }

    /// Add the differential of `h` (which must supply a Hessian).
    pub fn with_exact(&self, h: Field) -> Self {
        Self {
            a: Arc::new(ExactShift {
                base: self.a.clone(),
                potential: h.clone(),
                axis: 0,
            }),
            b: Arc::new(ExactShift {
                base: self.b.clone(),
                potential: h,
                axis: 1,
            }),
        }
    }

    /// `|a_{x2} - b_{x1} - g(x1 + R, x2)/R|` at `x`.
    pub fn compatibility_residual(&self, g: &dyn ScalarField, radius: f64, x: Vec2) -> f64 {
        (self.curl(x) - g.value(x + Vec2::new(radius, 0.0)) / radius).abs()
    }
}

#[derive(Debug, Clone)]
struct CanonicalPotential {
    g: Field,
    radius: f64,
    tol: Tolerances,
}

impl CanonicalPotential {
    fn integrals(&self, x: Vec2) -> [f64; 2] {
        let shift = x.x + self.radius;
        quad_vec(
            |s| {
                let (v, grad) = self.g.value_and_gradient(Vec2::new(shift, s));
                [v, grad.x]
            },
            0.0,
            x.y,
            &self.tol,
        )
        .unwrap_or([f64::NAN; 2])
    }
}

impl ScalarField for CanonicalPotential {
    fn value(&self, x: Vec2) -> f64 {
        self.integrals(x)[0] / self.radius
    }

    fn gradient(&self, x: Vec2) -> Vec2 {
        self.value_and_gradient(x).1
    }

    fn value_and_gradient(&self, x: Vec2) -> (f64, Vec2) {
        let [v, dv] = self.integrals(x);
        let top = self.g.value(Vec2::new(x.x + self.radius, x.y));
        (v / self.radius, Vec2::new(dv / self.radius, top / self.radius))
    }
}
