//! Densities with equal integrals over all discs of a fixed radius, built from
//! zeros of `J_1`.
//!
//! With `a` a positive zero of `J_1` and `k = a/R`, every plane wave
//! `cos(k x·e(β))` integrates to zero over each disc of radius `R`, and so does
//! any superposition over `β` and over different zeros.

use std::f64::consts::TAU;
use std::io::Write;
use std::sync::Arc;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{unit, Domain, Vec2};
use crate::metrics::{validate_circle_metric, AdmissibilityReport, CircleMetric, Field, Phase, ProbeSpec, ScalarField};
use crate::numerics::{bessel_j, bessel_j1_roots, Tolerances};

/// Largest admissibility violation accepted by [`make_circle_metric`].
pub const ADMISSIBILITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atom {
    pub angle: f64,
    pub mass: f64,
}

/// Angular measure `f(β) dβ` of a plane-wave superposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngularMeasure {
    Atoms(Vec<Atom>),
    /// `f(β) = Σ_n cos[n] cos nβ + sin[n] sin nβ`, `n` from zero.
    Trig {
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
    },
}

impl AngularMeasure {
    /// Upper bound for `|∫ cos-or-sin(k x·e(β)) f(β) dβ|`.
    pub fn bound(&self) -> f64 {
        match self {
            AngularMeasure::Atoms(atoms) => atoms.iter().map(|a| a.mass.abs()).sum(),
            AngularMeasure::Trig { cos, sin } => {
                let c: f64 = cos.iter().map(|v| v.abs()).sum();
                let s: f64 = sin.iter().skip(1).map(|v| v.abs()).sum();
                TAU * (c + s)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityTerm {
    /// Which positive zero of `J_1`, counting from 1.
    pub root_index: usize,
    pub weight: f64,
    pub phase: Phase,
    pub measure: AngularMeasure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExoticDensitySpec {
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(default)]
    pub terms: Vec<DensityTerm>,
    pub offset: f64,
}

impl ExoticDensitySpec {
    pub fn constant(radius: f64, offset: f64) -> Self {
        Self {
            radius,
            terms: Vec::new(),
            offset,
        }
    }

    /// `1 + ε cos(a x1 / R)` with `a` the first zero of `J_1`.
    pub fn single_wave(radius: f64, eps: f64) -> Self {
        Self {
            radius,
            terms: vec![DensityTerm {
                root_index: 1,
                weight: eps,
                phase: Phase::Cos,
                measure: AngularMeasure::Atoms(vec![Atom { angle: 0.0, mass: 1.0 }]),
            }],
            offset: 1.0,
        }
    }

    pub fn with_term(mut self, term: DensityTerm) -> Self {
        self.terms.push(term);
        self
    }

    /// `Σ |weight| · bound` of the oscillatory part.
    pub fn oscillation_bound(&self) -> f64 {
        self.terms.iter().map(|t| t.weight.abs() * t.measure.bound()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::Invalid(format!("density radius must be positive, got {}", self.radius)));
        }
        if let Some(t) = self.terms.iter().find(|t| t.root_index == 0) {
            return Err(Error::Invalid(format!("root_index counts from 1, got {}", t.root_index)));
        }
        let bound = self.oscillation_bound();
        if self.offset.is_nan() || self.offset <= bound {
            return Err(Error::Invalid(format!(
                "offset {} does not exceed the oscillation bound {bound}; density may fail to be positive",
                self.offset
            )));
        }
        Ok(())
    }
}

/// The corpus of admissible densities used by the verification suites.
pub fn density_corpus(radius: f64) -> Vec<(&'static str, ExoticDensitySpec)> {
    let atoms = |list: &[(f64, f64)]| {
        AngularMeasure::Atoms(list.iter().map(|&(angle, mass)| Atom { angle, mass }).collect())
    };
    let two_atoms = ExoticDensitySpec {
        radius,
        terms: vec![
            DensityTerm {
                root_index: 1,
                weight: 0.25,
                phase: Phase::Cos,
                measure: atoms(&[(0.0, 1.0)]),
            },
            DensityTerm {
                root_index: 1,
                weight: 0.25,
                phase: Phase::Cos,
                measure: atoms(&[(std::f64::consts::FRAC_PI_2, 1.0)]),
            },
        ],
        offset: 1.0,
    };
    let superposition = ExoticDensitySpec {
        radius,
        terms: vec![
            DensityTerm {
                root_index: 1,
                weight: 0.2,
                phase: Phase::Cos,
                measure: atoms(&[(0.3, 1.0)]),
            },
            DensityTerm {
                root_index: 2,
                weight: 0.15,
                phase: Phase::Sin,
                measure: atoms(&[(1.1, 1.0), (2.5, -0.5)]),
            },
            DensityTerm {
                root_index: 1,
                weight: 0.02,
                phase: Phase::Cos,
                measure: AngularMeasure::Trig {
                    cos: vec![1.0, 0.0, 0.5],
                    sin: vec![0.0, 0.3],
                },
            },
        ],
        offset: 1.0,
    };
    vec![
        ("constant", ExoticDensitySpec::constant(radius, 1.0)),
        ("single_wave", ExoticDensitySpec::single_wave(radius, 0.5)),
        ("two_waves", two_atoms),
        ("superposition", superposition),
    ]
}

#[derive(Debug, Clone)]
struct Wave {
    k: f64,
    weight: f64,
    phase: Phase,
    measure: AngularMeasure,
}

impl Wave {
    fn value_and_gradient(&self, x: Vec2) -> (f64, Vec2) {
        let k = self.k;
        match &self.measure {
            AngularMeasure::Atoms(atoms) => {
                let mut v = 0.0;
                let mut g = Vec2::zeros();
                for a in atoms {
                    let e = unit(a.angle);
                    let (s, c) = (k * x.dot(&e)).sin_cos();
                    let (val, slope) = match self.phase {
                        Phase::Cos => (c, -s),
                        Phase::Sin => (s, c),
                    };
                    v += a.mass * val;
                    g += a.mass * slope * k * e;
                }
                (self.weight * v, self.weight * g)
            }
            AngularMeasure::Trig { cos, sin } => {
                // ∫ e^{i k x·e(β)} e^{inβ} dβ = 2π i^n Z_n with Z_n = J_n(kρ) e^{inθ}.
                let rho = x.norm();
                let theta = x.y.atan2(x.x);
                let z = |n: i32| {
                    let j = bessel_j(n.unsigned_abs(), k * rho);
                    let j = if n < 0 && n % 2 != 0 { -j } else { j };
                    Complex::from_polar(j, n as f64 * theta)
                };
                let top = cos.len().max(sin.len());
                let mut v = 0.0;
                let mut g = Vec2::zeros();
                for n in 0..top as i32 {
                    let wanted = match self.phase {
                        Phase::Cos => n % 2 == 0,
                        Phase::Sin => n % 2 == 1,
                    };
                    if !wanted {
                        continue;
                    }
                    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    let cn = cos.get(n as usize).copied().unwrap_or(0.0);
                    let sn = if n == 0 { 0.0 } else { sin.get(n as usize).copied().unwrap_or(0.0) };
                    let project = |w: Complex<f64>| TAU * sign * (cn * w.re + sn * w.im);
                    let (zm, z0, zp) = (z(n - 1), z(n), z(n + 1));
                    let dx = (zm - zp) * (0.5 * k);
                    let dy = (zm + zp) * Complex::new(0.0, 0.5 * k);
                    v += project(z0);
                    g += Vec2::new(project(dx), project(dy));
                }
                (self.weight * v, self.weight * g)
            }
        }
    }
}

/// `g(x) = offset + Σ weight · ∫ cos-or-sin(k x·e(β)) f(β) dβ`.
#[derive(Debug, Clone)]
pub struct ExoticDensity {
    offset: f64,
    waves: Vec<Wave>,
}

impl ScalarField for ExoticDensity {
    fn value(&self, x: Vec2) -> f64 {
        self.value_and_gradient(x).0
    }

    fn gradient(&self, x: Vec2) -> Vec2 {
        self.value_and_gradient(x).1
    }

    fn value_and_gradient(&self, x: Vec2) -> (f64, Vec2) {
        self.waves.iter().fold((self.offset, Vec2::zeros()), |(v, g), w| {
            let (dv, dg) = w.value_and_gradient(x);
            (v + dv, g + dg)
        })
    }
}

pub fn exotic_density(spec: &ExoticDensitySpec) -> Result<ExoticDensity> {
    spec.validate()?;
    let deepest = spec.terms.iter().map(|t| t.root_index).max().unwrap_or(0);
    let roots = bessel_j1_roots(deepest);
    let waves = spec
        .terms
        .iter()
        .map(|t| Wave {
            k: roots[t.root_index - 1] / spec.radius,
            weight: t.weight,
            phase: t.phase,
            measure: t.measure.clone(),
        })
        .collect();
    Ok(ExoticDensity {
        offset: spec.offset,
        waves,
    })
}

/// A circle metric together with the admissibility report it passed.
#[derive(Debug, Clone)]
pub struct ValidatedMetric {
    pub metric: CircleMetric,
    pub report: AdmissibilityReport,
}

pub fn make_circle_metric(spec: &ExoticDensitySpec) -> Result<ValidatedMetric> {
    make_circle_metric_with(spec, &ProbeSpec::default(), Tolerances::default())
}

pub fn make_circle_metric_with(spec: &ExoticDensitySpec, probes: &ProbeSpec, tol: Tolerances) -> Result<ValidatedMetric> {
    let g: Field = Arc::new(exotic_density(spec)?);
    let metric = CircleMetric::canonical(spec.radius, g, tol)?;
    let report = validate_circle_metric(&metric, probes);
    if !report.passes(ADMISSIBILITY_TOL) {
        return Err(Error::Inadmissible(format!(
            "center of mass {:e}, gauge {:e}, min density {:e}",
            report.center_of_mass, report.gauge_compatibility, report.min_density
        )));
    }
    Ok(ValidatedMetric { metric, report })
}

/// CSV with columns `x1, x2, g` on an `nx × ny` grid.
pub fn write_density_grid<W: Write>(g: &dyn ScalarField, domain: &Domain, nx: usize, ny: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x1", "x2", "g"])?;
    for p in domain.grid(nx, ny) {
        w.write_record([p.x, p.y, g.value(p)].map(|v| format!("{v:.16e}")))?;
    }
    w.flush()?;
    Ok(())
}
