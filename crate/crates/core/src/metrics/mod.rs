//! Planar Finsler Lagrangians `L(x, v) = |v| p(x, α)` and their support functions.

pub mod circle;
pub mod field;
pub mod gauge;
pub mod indicatrix;
pub mod magnetic;
pub mod projective;
pub mod validate;

pub use circle::{circle_support, support_to_curvature, CircleMetric};
pub use field::{gradient_mismatch, Constant, ExactShift, Field, FnField, Quadratic, ScalarField};
pub use gauge::GaugeForm;
pub use indicatrix::{indicatrix_at, Indicatrix};
pub use magnetic::{magnetic_lagrangian_eval, MagneticMetric};
pub use projective::{hamel_eval, LineDensity, LineSeries, LineTerm, Phase, ProjectiveMetric};
pub use validate::{validate_circle_metric, AdmissibilityReport, ProbeSpec};

use crate::error::{Error, Result};
use crate::geom::{unit, Vec2};

/// `p` with its first and second angular derivatives and first spatial
/// derivatives, at one `(x, α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportJet {
    pub p: f64,
    pub p_a: f64,
    pub p_aa: f64,
    /// `p + p_αα`, evaluated without cancellation where the metric allows.
    pub curvature: f64,
    pub p_x: Vec2,
    pub p_ax: Vec2,
}

impl SupportJet {
    /// Numerator of the heading equation.
    pub fn turning_moment(&self, alpha: f64) -> f64 {
        let (s, c) = alpha.sin_cos();
        self.p_x.y * c - self.p_x.x * s - self.p_ax.x * c - self.p_ax.y * s
    }
}

#[derive(Debug, Clone)]
pub enum Metric {
    Euclidean,
    Magnetic(MagneticMetric),
    Projective(ProjectiveMetric),
    Circle(CircleMetric),
}

impl Metric {
    pub fn kind(&self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Magnetic(MagneticMetric::Constant { .. }) => "magnetic_constant",
            Metric::Magnetic(_) => "magnetic_form",
            Metric::Projective(_) => "projective_hamel",
            Metric::Circle(_) => "circle_lagrangian",
        }
    }

    pub fn jet(&self, x: Vec2, alpha: f64) -> Result<SupportJet> {
        match self {
            Metric::Euclidean => Ok(SupportJet {
                p: 1.0,
                p_a: 0.0,
                p_aa: 0.0,
                curvature: 1.0,
                p_x: Vec2::zeros(),
                p_ax: Vec2::zeros(),
            }),
            Metric::Magnetic(m) => Ok(m.jet(x, alpha)),
            Metric::Projective(m) => m.jet(x, alpha),
            Metric::Circle(m) => m.jet(x, alpha),
        }
    }

    pub fn support(&self, x: Vec2, alpha: f64) -> Result<f64> {
        match self {
            Metric::Euclidean => Ok(1.0),
            Metric::Magnetic(m) => Ok(m.lagrangian(x, unit(alpha))),
            Metric::Projective(m) => m.support(x, alpha),
            Metric::Circle(m) => m.support(x, alpha),
        }
    }

    /// `p` and `p_α` only.
    pub fn support_pair(&self, x: Vec2, alpha: f64) -> Result<(f64, f64)> {
        match self {
            Metric::Euclidean => Ok((1.0, 0.0)),
            _ => {
                let j = self.jet(x, alpha)?;
                Ok((j.p, j.p_a))
            }
        }
    }

    pub fn lagrangian(&self, x: Vec2, v: Vec2) -> Result<f64> {
        let speed = v.norm();
        if speed == 0.0 {
            return Ok(0.0);
        }
        Ok(speed * self.support(x, v.y.atan2(v.x))?)
    }

    /// `dα/ds` of the unit-speed extremal through `(x, α)`.
    pub fn heading_rate(&self, x: Vec2, alpha: f64) -> Result<f64> {
        let jet = self.jet(x, alpha)?;
        if jet.curvature.is_nan() || jet.curvature <= 0.0 {
            return Err(Error::DegenerateGeodesic {
                point: x,
                alpha,
                value: jet.curvature,
            });
        }
        Ok(jet.turning_moment(alpha) / jet.curvature)
    }

    /// The equal-angle reflection law applies to conformally Euclidean
    /// indicatrices and to magnetic ones.
    pub fn reflects_by_equal_angles(&self) -> bool {
        matches!(self, Metric::Euclidean | Metric::Magnetic(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_field_turns_at_inverse_radius() {
        let m = Metric::Magnetic(MagneticMetric::constant(0.8));
        for i in 0..20 {
            let x = Vec2::new(0.1 * i as f64 - 1.0, 0.05 * i as f64);
            let rate = m.heading_rate(x, 0.3 * i as f64).unwrap();
            assert!((rate - 1.25).abs() < 1e-15);
        }
        assert_eq!(Metric::Euclidean.heading_rate(Vec2::zeros(), 1.0).unwrap(), 0.0);
    }

    #[test]
    fn kinds_are_named() {
        assert_eq!(Metric::Magnetic(MagneticMetric::constant(1.0)).kind(), "magnetic_constant");
        assert_eq!(Metric::Magnetic(MagneticMetric::uniform(0.1, 0.0)).kind(), "magnetic_form");
    }
}
