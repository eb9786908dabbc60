//! Unit-speed magnetic flows and Finsler geodesics, the circle-extremal
//! residual, and least-squares circle fits.

use std::io::Write;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::geom::{perp, unit, unwrap_near, Vec2};
use crate::metrics::{CircleMetric, Metric, ScalarField};
use crate::numerics::ode_rk4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub s: f64,
    pub x: Vec2,
    /// Heading, unwrapped along the trajectory.
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub step: f64,
    /// `|ẋ|` per sample; identically one for the Finsler integrator.
    pub speeds: Vec<f64>,
}

impl Trajectory {
    pub fn points(&self) -> Vec<Vec2> {
        self.samples.iter().map(|s| s.x).collect()
    }

    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory has at least one sample")
    }

    /// `|x(end) − x(0)|`.
    pub fn closing_gap(&self) -> f64 {
        (self.last().x - self.first().x).norm()
    }

    pub fn max_speed_drift(&self) -> f64 {
        let v0 = self.speeds[0];
        self.speeds.iter().map(|v| (v - v0).abs()).fold(0.0, f64::max)
    }

    /// CSV with columns `s, x1, x2, alpha`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["s", "x1", "x2", "alpha"])?;
        for p in &self.samples {
            w.write_record([p.s, p.x.x, p.x.y, p.alpha].map(|v| format!("{v:.16e}")))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Integrate `ẍ = B(x) J ẋ` from `(x0, v0)`, `|v0| = 1`.
pub fn integrate_magnetic_flow(
    field: &dyn ScalarField,
    x0: Vec2,
    v0: Vec2,
    s_max: f64,
    h: f64,
) -> Result<Trajectory> {
    let sol = ode_rk4(
        |_s, y: &[f64; 4]| {
            let b = field.value(Vec2::new(y[0], y[1]));
            Ok([y[2], y[3], -b * y[3], b * y[2]])
        },
        [x0.x, x0.y, v0.x, v0.y],
        s_max,
        h,
    )?;
    let mut alpha = v0.y.atan2(v0.x);
    let mut samples = Vec::with_capacity(sol.s.len());
    let mut speeds = Vec::with_capacity(sol.s.len());
    for (&s, y) in sol.s.iter().zip(&sol.states) {
        alpha = unwrap_near(y[3].atan2(y[2]), alpha);
        samples.push(Sample {
            s,
            x: Vec2::new(y[0], y[1]),
            alpha,
        });
        speeds.push(y[2].hypot(y[3]));
    }
    Ok(Trajectory { samples, step: h, speeds })
}

/// Integrate `dx/ds = e(α)`, `dα/ds = heading rate of m`.
pub fn integrate_finsler_geodesic(m: &Metric, x0: Vec2, alpha0: f64, s_max: f64, h: f64) -> Result<Trajectory> {
    let sol = ode_rk4(
        |_s, y: &[f64; 3]| {
            let (s, c) = y[2].sin_cos();
            Ok([c, s, m.heading_rate(Vec2::new(y[0], y[1]), y[2])?])
        },
        [x0.x, x0.y, alpha0],
        s_max,
        h,
    )?;
    let samples: Vec<_> = sol
        .s
        .iter()
        .zip(&sol.states)
        .map(|(&s, y)| Sample {
            s,
            x: Vec2::new(y[0], y[1]),
            alpha: y[2],
        })
        .collect();
    let speeds = vec![1.0; samples.len()];
    Ok(Trajectory { samples, step: h, speeds })
}

/// `(|v|/R) L_vv(Jv) + L_vx(v) − L_x` at `v = e(α)`, for any metric.
pub fn euler_lagrange_residual(m: &Metric, radius: f64, x: Vec2, alpha: f64) -> Result<Vec2> {
    let jet = m.jet(x, alpha)?;
    let e = unit(alpha);
    let n = perp(e);
    // L_v = p e + p_α Jv, L_vv = (p + p_αα) Jv Jvᵀ on the unit circle.
    let l_vv_jv = jet.curvature * n;
    let l_vx_v = jet.p_x.dot(&e) * e + jet.p_ax.dot(&e) * n;
    Ok(l_vv_jv / radius + l_vx_v - jet.p_x)
}

pub fn el_residual(c: &CircleMetric, x: Vec2, alpha: f64) -> Result<Vec2> {
    euler_lagrange_residual(&Metric::Circle(c.clone()), c.radius, x, alpha)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFit {
    pub center: Vec2,
    pub radius: f64,
    /// Root-mean-square orthogonal distance of the samples from the circle.
    pub rms_residual: f64,
}

pub const MIN_FIT_SAMPLES: usize = 10;

pub fn fit_circle(t: &Trajectory) -> Result<CircleFit> {
    fit_circle_points(&t.points())
}

/// Algebraic fit followed by Gauss–Newton on orthogonal distances.
pub fn fit_circle_points(points: &[Vec2]) -> Result<CircleFit> {
    if points.len() < MIN_FIT_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_FIT_SAMPLES,
            got: points.len(),
        });
    }
    let n = points.len() as f64;
    let mean = points.iter().sum::<Vec2>() / n;
    let local: Vec<Vec2> = points.iter().map(|p| p - mean).collect();

    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in &local {
        sxx += p.x * p.x;
        sxy += p.x * p.y;
        syy += p.y * p.y;
    }
    let trace = sxx + syy;
    let det = sxx * syy - sxy * sxy;
    if trace == 0.0 || det <= 1e-12 * trace * trace {
        return Err(Error::CollinearSamples);
    }

    // |p|² = 2 c·p + k
    let mut ata = Matrix3::zeros();
    let mut atb = Vector3::zeros();
    for p in &local {
        let row = Vector3::new(2.0 * p.x, 2.0 * p.y, 1.0);
        ata += row * row.transpose();
        atb += row * p.norm_squared();
    }
    let sol = ata.lu().solve(&atb).ok_or(Error::CollinearSamples)?;
    let mut c = Vec2::new(sol[0], sol[1]);
    let rr = sol[2] + c.norm_squared();
    if rr.is_nan() || rr <= 0.0 {
        return Err(Error::CollinearSamples);
    }
    let mut r = rr.sqrt();

    for _ in 0..50 {
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for p in &local {
            let d = p - c;
            let dist = d.norm();
            if dist == 0.0 {
                continue;
            }
            let row = Vector3::new(-d.x / dist, -d.y / dist, -1.0);
            let res = dist - r;
            jtj += row * row.transpose();
            jtr += row * res;
        }
        let Some(delta) = jtj.lu().solve(&(-jtr)) else {
            break;
        };
        c += Vec2::new(delta[0], delta[1]);
        r += delta[2];
        if delta.norm() <= 1e-15 * (1.0 + r) {
            break;
        }
    }
    let rms = (local.iter().map(|p| ((p - c).norm() - r).powi(2)).sum::<f64>() / n).sqrt();
    Ok(CircleFit {
        center: c + mean,
        radius: r,
        rms_residual: rms,
    })
}
