//! Admissibility checks for circle metrics on a probe grid.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::CircleMetric;
use crate::geom::{unit, Domain, Vec2};
use crate::numerics::quad_vec;

/// Probe points of the working domain and angles per probe circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeSpec {
    pub domain: Domain,
    pub nx: usize,
    pub ny: usize,
    pub angles: usize,
}

impl Default for ProbeSpec {
    fn default() -> Self {
        Self {
            domain: Domain::default(),
            nx: 21,
            ny: 21,
            angles: 64,
        }
    }
}

impl ProbeSpec {
    pub fn on(domain: Domain) -> Self {
        Self {
            domain,
            ..Default::default()
        }
    }

    pub fn coarse(domain: Domain, n: usize, angles: usize) -> Self {
        Self {
            domain,
            nx: n,
            ny: n,
            angles,
        }
    }

    pub fn points(&self) -> Vec<Vec2> {
        self.domain.grid(self.nx, self.ny)
    }
}

/// Worst violations over the probe set. Violations are data: a failed report
/// is a normal return value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    /// `max |∫ G(φ) e(φ) dφ|` over probe circles.
    pub center_of_mass: f64,
    /// `max |a_{x2} − b_{x1} − g(x1 + R, x2)/R|`.
    pub gauge_compatibility: f64,
    /// Smallest value of `g` seen at probes and on probe circles.
    pub min_density: f64,
    pub probes: usize,
}

impl AdmissibilityReport {
    pub fn positive(&self) -> bool {
        self.min_density > 0.0
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.positive() && self.center_of_mass <= tol && self.gauge_compatibility <= tol
    }
}

pub fn validate_circle_metric(c: &CircleMetric, probes: &ProbeSpec) -> AdmissibilityReport {
    let r = c.radius;
    let points = probes.points();
    let mut report = AdmissibilityReport {
        center_of_mass: 0.0,
        gauge_compatibility: 0.0,
        min_density: f64::INFINITY,
        probes: points.len(),
    };
    let worse = |acc: f64, v: f64| if v.is_nan() { f64::INFINITY } else { acc.max(v) };
    for &x in &points {
        let moment = quad_vec(
            |phi| {
                let e = unit(phi);
                let v = c.g.value(x + r * e);
                [v * e.x, v * e.y]
            },
            0.0,
            TAU,
            &c.tol,
        )
        .map(|[m1, m2]| m1.hypot(m2))
        .unwrap_or(f64::INFINITY);
        report.center_of_mass = worse(report.center_of_mass, moment);
        report.gauge_compatibility = worse(
            report.gauge_compatibility,
            c.gauge.compatibility_residual(c.g.as_ref(), r, x),
        );
        report.min_density = report.min_density.min(c.g.value(x));
        for k in 0..probes.angles {
            let v = c.density_on_circle(x, TAU * k as f64 / probes.angles as f64);
            report.min_density = if v.is_nan() { f64::NEG_INFINITY } else { report.min_density.min(v) };
        }
    }
    report
}
