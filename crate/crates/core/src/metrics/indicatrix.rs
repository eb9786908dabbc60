//! Unit-speed indicatrices `{v : L(x, v) = 1}` in polar form `r(θ) = 1/p(x, θ)`.

use std::f64::consts::TAU;

use super::Metric;
use crate::error::{Error, Result};
use crate::geom::{unit, Vec2};

/// Number of angles scanned for positivity of `p`.
pub const POSITIVITY_SAMPLES: usize = 1440;

/// Values of `p` at or below this fraction of `max p` count as degenerate.
const DEGENERACY_RATIO: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Indicatrix {
    metric: Metric,
    point: Vec2,
    scale: f64,
}

impl Indicatrix {
    /// Indicatrix of a fixed polar support, without a positivity scan.
    pub fn unchecked(metric: Metric, point: Vec2) -> Self {
        Self {
            metric,
            point,
            scale: 1.0,
        }
    }

    pub fn point(&self) -> Vec2 {
        self.point
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The same curve dilated by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            scale: self.scale * lambda,
            ..self.clone()
        }
    }

    /// `1/r` and its derivative: the support of the metric divided by the scale.
    pub fn support(&self, theta: f64) -> Result<(f64, f64)> {
        let (p, dp) = self.metric.support_pair(self.point, theta)?;
        Ok((p / self.scale, dp / self.scale))
    }

    pub fn radius(&self, theta: f64) -> Result<f64> {
        Ok(1.0 / self.support(theta)?.0)
    }

    pub fn radius_derivative(&self, theta: f64) -> Result<f64> {
        let (p, dp) = self.support(theta)?;
        Ok(-dp / (p * p))
    }

    pub fn point_at(&self, theta: f64) -> Result<Vec2> {
        Ok(self.radius(theta)? * unit(theta))
    }

    /// `n` points at equally spaced polar angles, counterclockwise from `θ = 0`.
    pub fn sample(&self, n: usize) -> Result<Vec<Vec2>> {
        (0..n).map(|k| self.point_at(TAU * k as f64 / n as f64)).collect()
    }
}

/// Indicatrix of `m` at `x`, failing if `p(x, ·)` is not strictly positive.
pub fn indicatrix_at(m: &Metric, x: Vec2) -> Result<Indicatrix> {
    let step = TAU / POSITIVITY_SAMPLES as f64;
    let values = (0..POSITIVITY_SAMPLES)
        .map(|k| m.support(x, k as f64 * step))
        .collect::<Result<Vec<_>>>()?;
    let peak = values.iter().cloned().fold(f64::MIN, f64::max);
    let (k_min, &v_min) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty sample");
    let threshold = DEGENERACY_RATIO * peak.abs().max(1.0);
    let degenerate = |theta: f64, value: f64| Error::DegenerateIndicatrix { point: x, theta, value };
    if v_min <= threshold {
        return Err(degenerate(k_min as f64 * step, v_min));
    }
    // Golden-section search for a dip between grid angles.
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = ((k_min as f64 - 1.0) * step, (k_min as f64 + 1.0) * step);
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (m.support(x, c)?, m.support(x, d)?);
    for _ in 0..60 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = m.support(x, c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = m.support(x, d)?;
        }
    }
    let (theta, value) = if fc < fd { (c, fc) } else { (d, fd) };
    if value <= threshold {
        return Err(degenerate(theta, value));
    }
    Ok(Indicatrix::unchecked(m.clone(), x))
}
