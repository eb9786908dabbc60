//! Projective metrics given by a density on the space of oriented lines.
//!
//! A line is `{y : y·e(φ) = p}`; the Lagrangian is
//! `L(x, v) = ∫_0^{2π} |v·e(φ)| f(x·e(φ), φ) dφ`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::SupportJet;
use crate::error::Result;
use crate::geom::{unit, Vec2};
use crate::numerics::{quad_vec, Tolerances};

/// A positive density `f(p, φ)` on oriented lines.
pub trait LineDensity: Send + Sync + fmt::Debug {
    fn value(&self, p: f64, phi: f64) -> f64;

    /// `∂f/∂p`.
    fn dp(&self, p: f64, phi: f64) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Cos,
    Sin,
}

impl Phase {
    pub fn eval(self, t: f64) -> f64 {
        match self {
            Phase::Cos => t.cos(),
            Phase::Sin => t.sin(),
        }
    }
}

/// `coef · p^power · cos|sin(harmonic · φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineTerm {
    pub coef: f64,
    #[serde(default)]
    pub power: u32,
    #[serde(default)]
    pub harmonic: u32,
    #[serde(default = "default_phase")]
    pub phase: Phase,
}

fn default_phase() -> Phase {
    Phase::Cos
}

/// A finite sum of [`LineTerm`]s.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSeries {
    pub terms: Vec<LineTerm>,
}

impl LineSeries {
    pub fn constant(c: f64) -> Self {
        Self {
            terms: vec![LineTerm {
                coef: c,
                power: 0,
                harmonic: 0,
                phase: Phase::Cos,
            }],
        }
    }

    pub fn term(mut self, coef: f64, power: u32, harmonic: u32, phase: Phase) -> Self {
        self.terms.push(LineTerm {
            coef,
            power,
            harmonic,
            phase,
        });
        self
    }

    /// Whether `f(−p, φ + π) = f(p, φ)` holds term by term.
    pub fn is_reversal_even(&self) -> bool {
        self.terms.iter().all(|t| (t.power + t.harmonic) % 2 == 0 || t.coef == 0.0)
    }
}

impl LineDensity for LineSeries {
    fn value(&self, p: f64, phi: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef * p.powi(t.power as i32) * t.phase.eval(t.harmonic as f64 * phi))
            .sum()
    }

    fn dp(&self, p: f64, phi: f64) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.power > 0)
            .map(|t| t.coef * t.power as f64 * p.powi(t.power as i32 - 1) * t.phase.eval(t.harmonic as f64 * phi))
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct ProjectiveMetric {
    pub density: Arc<dyn LineDensity>,
    pub tol: Tolerances,
}

impl ProjectiveMetric {
    pub fn new(density: Arc<dyn LineDensity>, tol: Tolerances) -> Self {
        Self { density, tol }
    }

    /// `F(φ) = f(x·e(φ), φ)`.
    pub fn line_weight(&self, x: Vec2, phi: f64) -> f64 {
        self.density.value(x.dot(&unit(phi)), phi)
    }

    pub fn support(&self, x: Vec2, alpha: f64) -> Result<f64> {
        let mut total = 0.0;
        for (lo, sign) in [(alpha - FRAC_PI_2, 1.0), (alpha + FRAC_PI_2, -1.0)] {
            let [v] = quad_vec(|phi| [(alpha - phi).cos() * self.line_weight(x, phi)], lo, lo + PI, &self.tol)?;
            total += sign * v;
        }
        Ok(total)
    }

    pub fn lagrangian(&self, x: Vec2, v: Vec2) -> Result<f64> {
        let speed = v.norm();
        if speed == 0.0 {
            return Ok(0.0);
        }
        Ok(speed * self.support(x, v.y.atan2(v.x))?)
    }

    /// The jet splits the integral at the zeros of `cos(α − φ)`, where the
    /// boundary terms of the first derivative vanish.
    pub fn jet(&self, x: Vec2, alpha: f64) -> Result<SupportJet> {
        let mut acc = [0.0; 6];
        for (lo, sign) in [(alpha - FRAC_PI_2, 1.0), (alpha + FRAC_PI_2, -1.0)] {
            let part = quad_vec(
                |phi| {
                    let e = unit(phi);
                    let p = x.dot(&e);
                    let f = self.density.value(p, phi);
                    let fp = self.density.dp(p, phi);
                    let (s, c) = (alpha - phi).sin_cos();
                    [c * f, -s * f, c * fp * e.x, c * fp * e.y, -s * fp * e.x, -s * fp * e.y]
                },
                lo,
                lo + PI,
                &self.tol,
            )?;
            for (a, v) in acc.iter_mut().zip(part) {
                *a += sign * v;
            }
        }
        let curvature = 2.0 * (self.line_weight(x, alpha + FRAC_PI_2) + self.line_weight(x, alpha - FRAC_PI_2));
        Ok(SupportJet {
            p: acc[0],
            p_a: acc[1],
            p_aa: curvature - acc[0],
            curvature,
            p_x: Vec2::new(acc[2], acc[3]),
            p_ax: Vec2::new(acc[4], acc[5]),
        })
    }
}

/// `L(x, v) = ∫ |v·e(φ)| f(x·e(φ), φ) dφ`.
pub fn hamel_eval(pm: &ProjectiveMetric, x: Vec2, v: Vec2) -> Result<f64> {
    pm.lagrangian(x, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic() -> ProjectiveMetric {
        let f = LineSeries::constant(1.0)
            .term(0.3, 0, 2, Phase::Cos)
            .term(0.2, 2, 0, Phase::Cos)
            .term(0.15, 1, 1, Phase::Cos);
        ProjectiveMetric::new(Arc::new(f), Tolerances::default())
    }

    #[test]
    fn constant_density_gives_four_times_euclidean() {
        let pm = ProjectiveMetric::new(Arc::new(LineSeries::constant(1.0)), Tolerances::default());
        let v = unit(0.7);
        assert!((hamel_eval(&pm, Vec2::new(0.3, 2.0), v).unwrap() - 4.0).abs() < 1e-12);
        assert!((hamel_eval(&pm, Vec2::zeros(), 2.5 * v).unwrap() - 10.0).abs() < 1e-11);
    }

    #[test]
    fn angle_only_density_is_translation_invariant() {
        let f = LineSeries::constant(1.0).term(0.4, 0, 2, Phase::Sin);
        let pm = ProjectiveMetric::new(Arc::new(f), Tolerances::default());
        let v = Vec2::new(0.3, -1.2);
        let a = hamel_eval(&pm, Vec2::new(0.1, 0.2), v).unwrap();
        let b = hamel_eval(&pm, Vec2::new(-3.0, 5.0), v).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn jet_matches_differences() {
        let pm = generic();
        let x = Vec2::new(0.4, -0.3);
        let h = 1e-4;
        for alpha in [0.1, 1.7, 3.9] {
            let j = pm.jet(x, alpha).unwrap();
            assert!((j.p - pm.support(x, alpha).unwrap()).abs() < 1e-12);
            let sp = pm.support(x, alpha + h).unwrap();
            let sm = pm.support(x, alpha - h).unwrap();
            assert!(((sp - sm) / (2.0 * h) - j.p_a).abs() < 1e-7);
            assert!(((sp - 2.0 * j.p + sm) / (h * h) - j.p_aa).abs() < 1e-4);
            let dy = Vec2::new(0.0, h);
            let fd = (pm.support(x + dy, alpha).unwrap() - pm.support(x - dy, alpha).unwrap()) / (2.0 * h);
            assert!((fd - j.p_x.y).abs() < 1e-7);
        }
    }

    #[test]
    fn reversal_parity() {
        assert!(generic().density.value(0.3, 0.2) > 0.0);
        let odd = LineSeries::constant(1.0).term(0.1, 1, 0, Phase::Cos);
        assert!(!odd.is_reversal_even());
        let even = LineSeries::constant(1.0).term(0.1, 1, 1, Phase::Sin);
        assert!(even.is_reversal_even());
    }
}
