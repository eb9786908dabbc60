//! Magnetic Lagrangians `|v| + α(x)(v)`.

use std::sync::Arc;

use super::field::{Field, FnField};
use super::SupportJet;
use crate::geom::{cross, Vec2};

/// A magnetic perturbation of the Euclidean metric.
#[derive(Debug, Clone)]
pub enum MagneticMetric {
    /// Constant field `1/R`: `α(x)(v) = [v, x] / (2R)`.
    Constant { radius: f64 },
    /// A general 1-form `f1 dx1 + f2 dx2`.
    Form { f1: Field, f2: Field },
}

impl MagneticMetric {
    pub fn constant(radius: f64) -> Self {
        Self::Constant { radius }
    }

    pub fn form(f1: Field, f2: Field) -> Self {
        Self::Form { f1, f2 }
    }

    /// The constant 1-form `t (cos θ0 dx1 + sin θ0 dx2)`, with `|α| = t` everywhere.
    pub fn uniform(t: f64, theta0: f64) -> Self {
        use super::field::Constant;
        Self::Form {
            f1: Arc::new(Constant(t * theta0.cos())),
            f2: Arc::new(Constant(t * theta0.sin())),
        }
    }

    /// Components `(f1, f2)` and their gradients at `x`.
    fn components(&self, x: Vec2) -> ([f64; 2], [Vec2; 2]) {
        match self {
            Self::Constant { radius } => {
                let k = 0.5 / radius;
                ([k * x.y, -k * x.x], [Vec2::new(0.0, k), Vec2::new(-k, 0.0)])
            }
            Self::Form { f1, f2 } => {
                let (v1, g1) = f1.value_and_gradient(x);
                let (v2, g2) = f2.value_and_gradient(x);
                ([v1, v2], [g1, g2])
            }
        }
    }

    /// `α(x)(v)`.
    pub fn form_at(&self, x: Vec2, v: Vec2) -> f64 {
        match self {
            Self::Constant { radius } => cross(v, x) / (2.0 * radius),
            _ => {
                let ([f1, f2], _) = self.components(x);
                f1 * v.x + f2 * v.y
            }
        }
    }

    /// `|α(x)|`.
    pub fn form_norm(&self, x: Vec2) -> f64 {
        let (f, _) = self.components(x);
        f[0].hypot(f[1])
    }

    /// The magnetic field `B = ∂f1/∂x2 − ∂f2/∂x1`.
    pub fn field_strength(&self, x: Vec2) -> f64 {
        let (_, [g1, g2]) = self.components(x);
        g1.y - g2.x
    }

    /// `B` as a scalar field, for the second-order flow.
    pub fn field(&self) -> Field {
        if let Self::Constant { radius } = self {
            return Arc::new(super::field::Constant(1.0 / radius));
        }
        let (me, me2) = (self.clone(), self.clone());
        Arc::new(FnField::new(
            "magnetic field",
            move |x| me.field_strength(x),
            move |x| {
                let h = 1e-5;
                let d = |e: Vec2| (me2.field_strength(x + h * e) - me2.field_strength(x - h * e)) / (2.0 * h);
                Vec2::new(d(Vec2::x()), d(Vec2::y()))
            },
        ))
    }

    pub fn lagrangian(&self, x: Vec2, v: Vec2) -> f64 {
        v.norm() + self.form_at(x, v)
    }

    pub fn jet(&self, x: Vec2, alpha: f64) -> SupportJet {
        let (c, s) = (alpha.cos(), alpha.sin());
        let ([f1, f2], [g1, g2]) = self.components(x);
        SupportJet {
            p: 1.0 + f1 * c + f2 * s,
            p_a: -f1 * s + f2 * c,
            p_aa: -f1 * c - f2 * s,
            curvature: 1.0,
            p_x: g1 * c + g2 * s,
            p_ax: -g1 * s + g2 * c,
        }
    }
}

/// Evaluate the magnetic Lagrangian `|v| + α(x)(v)`.
pub fn magnetic_lagrangian_eval(m: &MagneticMetric, x: Vec2, v: Vec2) -> f64 {
    m.lagrangian(x, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::field::Quadratic;

    #[test]
    fn euclidean_and_constant_values() {
        let zero = MagneticMetric::uniform(0.0, 0.0);
        assert_eq!(magnetic_lagrangian_eval(&zero, Vec2::new(1.0, 2.0), Vec2::new(3.0, 4.0)), 5.0);
        let m = MagneticMetric::constant(1.0);
        assert!((m.lagrangian(Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0)) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn constant_field_strength_is_inverse_radius() {
        let m = MagneticMetric::constant(0.7);
        assert!((m.field_strength(Vec2::new(0.3, -0.1)) - 1.0 / 0.7).abs() < 1e-14);
        let f = MagneticMetric::form(
            Arc::new(Quadratic { c12: 1.0, ..Default::default() }),
            Arc::new(Quadratic { c11: 0.5, ..Default::default() }),
        );
        // ∂(x1 x2)/∂x2 − ∂(x1²/2)/∂x1 = 0
        assert!(f.field_strength(Vec2::new(0.4, 0.9)).abs() < 1e-15);
    }

    #[test]
    fn homogeneous_of_degree_one() {
        let m = MagneticMetric::constant(1.3);
        for i in 0..10 {
            let x = Vec2::new(0.1 * i as f64, -0.3 + 0.05 * i as f64);
            let v = Vec2::new((i as f64).cos(), (i as f64 * 0.7).sin() + 0.2);
            let t = 0.5 + i as f64;
            assert!((m.lagrangian(x, t * v) - t * m.lagrangian(x, v)).abs() < 1e-13 * t);
        }
    }

    #[test]
    fn jet_matches_lagrangian() {
        let m = MagneticMetric::constant(0.9);
        let x = Vec2::new(0.2, -0.4);
        for k in 0..8 {
            let a = 0.8 * k as f64;
            let j = m.jet(x, a);
            assert!((j.p - m.lagrangian(x, crate::geom::unit(a))).abs() < 1e-15);
            assert!((j.p + j.p_aa - 1.0).abs() < 1e-15);
        }
    }
}
