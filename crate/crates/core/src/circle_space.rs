//! The area form `ω = −(1/R) g du∧dv` on the space of `R`-circle centers and
//! the identities it satisfies.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::curves::{lagrangian_length, ClosedCurve, OrientedCurve, WaveFront};
use crate::error::{Error, Result};
use crate::geom::{unit, Domain, Vec2};
use crate::metrics::{CircleMetric, Field, ScalarField};
use crate::numerics::{quad_try, quad_vec, GaussRule, Tolerances};

#[derive(Debug, Clone)]
pub struct CircleSpaceForm {
    pub radius: f64,
    pub g: Field,
}

/// Nodes per unit length (in units of `R`) of the potential quadrature.
const POTENTIAL_DEGREE: usize = 24;

impl CircleSpaceForm {
    pub fn new(radius: f64, g: Field) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Invalid(format!("circle radius must be positive, got {radius}")));
        }
        Ok(Self { radius, g })
    }

    pub fn of_metric(c: &CircleMetric) -> Self {
        Self {
            radius: c.radius,
            g: c.g.clone(),
        }
    }

    /// `Φ(u, v) = ∫_{u0}^{u} g(s, v) ds`.
    fn potential(&self, rule: &GaussRule, u0: f64, p: Vec2) -> f64 {
        let panels = ((p.x - u0).abs() / (0.5 * self.radius)).ceil() as usize + 1;
        rule.integrate(|s| self.g.value(Vec2::new(s, p.y)), u0, p.x, panels)
    }
}

/// `−(1/R) ∮ Φ dv` over a closed polyline; equals `−(1/R) ∬ g` over the
/// enclosed region, counted with winding multiplicity.
pub fn omega_area(form: &CircleSpaceForm, boundary: &OrientedCurve) -> Result<f64> {
    if !boundary.closed || boundary.len() < 3 {
        return Err(Error::Invalid("omega_area needs a closed curve with at least three vertices".into()));
    }
    let rule = GaussRule::new(POTENTIAL_DEGREE);
    let edge_rule = GaussRule::new(8);
    let u0 = boundary.vertices[0].x;
    let mut total = 0.0;
    for (a, b) in boundary.edges() {
        let d = b - a;
        if d.y == 0.0 {
            continue;
        }
        total += d.y * edge_rule.integrate(|t| form.potential(&rule, u0, a + t * d), 0.0, 1.0, 1);
    }
    Ok(-total / form.radius)
}

/// [`omega_area`] for a smooth parametrized boundary.
pub fn omega_area_parametric(form: &CircleSpaceForm, boundary: &dyn ClosedCurve, tol: &Tolerances) -> Result<f64> {
    let rule = GaussRule::new(POTENTIAL_DEGREE);
    let u0 = boundary.point(0.0).x;
    let [v] = quad_vec(
        |t| [form.potential(&rule, u0, boundary.point(t)) * boundary.velocity(t).y],
        0.0,
        TAU,
        tol,
    )?;
    Ok(-v / form.radius)
}

/// `∬ g` over the disc, radial Gauss times angular trapezoid.
pub fn disc_integral(g: &dyn ScalarField, center: Vec2, radius: f64) -> f64 {
    let rule = GaussRule::new(32);
    let n = 256;
    rule.integrate(
        |r| {
            let ring: f64 = (0..n).map(|k| g.value(center + r * unit(TAU * k as f64 / n as f64))).sum();
            r * ring * TAU / n as f64
        },
        0.0,
        radius,
        4,
    )
}

/// `(∫ g(c + R e(α)) cos α dα, ∫ g(c + R e(α)) sin α dα)`.
pub fn circle_orthogonality(g: &dyn ScalarField, center: Vec2, radius: f64) -> (f64, f64) {
    let n = 512;
    let (mut c, mut s) = (0.0, 0.0);
    for k in 0..n {
        let a = TAU * k as f64 / n as f64;
        let v = g.value(center + radius * unit(a));
        c += v * a.cos();
        s += v * a.sin();
    }
    let w = TAU / n as f64;
    (c * w, s * w)
}

/// Finsler length of the counterclockwise `R`-circle centered at `center`.
pub fn circle_length(c: &CircleMetric, center: Vec2) -> Result<f64> {
    let r = c.radius;
    let [v] = quad_try(
        |phi| Ok([r * c.support(center + r * unit(phi), phi + FRAC_PI_2)?]),
        0.0,
        TAU,
        &c.tol,
    )?;
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LengthAreaCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Length of the reference circle.
    pub circle_length: f64,
    pub omega_area: f64,
}

impl LengthAreaCheck {
    pub fn defect(&self) -> f64 {
        (self.lhs - self.rhs).abs() / (1.0 + self.lhs.abs())
    }
}

/// Finsler length of `γ` against `ω`-area of the front `Γ(−R)` plus the
/// length of one `R`-circle centered at the middle of `domain`.
pub fn length_area_check(c: &CircleMetric, curve: &dyn ClosedCurve, domain: &Domain) -> Result<LengthAreaCheck> {
    let lhs = lagrangian_length(curve, |x, v| c.lagrangian(x, v), &c.tol)?;
    let front = WaveFront {
        base: curve,
        t: -c.radius,
    };
    let area = omega_area_parametric(&CircleSpaceForm::of_metric(c), &front, &c.tol)?;
    let circle = circle_length(c, domain.midpoint())?;
    Ok(LengthAreaCheck {
        lhs,
        rhs: area + circle,
        circle_length: circle,
        omega_area: area,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeLength {
    pub center: [f64; 2],
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthConstancyReport {
    pub probes: Vec<ProbeLength>,
    pub min: f64,
    pub max: f64,
}

impl LengthConstancyReport {
    pub fn spread(&self) -> f64 {
        self.max - self.min
    }
}

pub fn circle_length_constancy(c: &CircleMetric, centers: &[Vec2]) -> Result<LengthConstancyReport> {
    let probes = centers
        .iter()
        .map(|&x| {
            Ok(ProbeLength {
                center: [x.x, x.y],
                length: circle_length(c, x)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min = probes.iter().map(|p| p.length).fold(f64::INFINITY, f64::min);
    let max = probes.iter().map(|p| p.length).fold(f64::NEG_INFINITY, f64::max);
    Ok(LengthConstancyReport { probes, min, max })
}

/// `πR²` for reference; the disc integral of `g ≡ 1`.
pub fn disc_area(radius: f64) -> f64 {
    PI * radius * radius
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::curves::Ellipse;
    use crate::metrics::{Constant, Quadratic};
    use crate::pompeiu::{exotic_density, ExoticDensitySpec};

    fn exotic() -> Field {
        Arc::new(exotic_density(&ExoticDensitySpec::single_wave(1.0, 0.5)).unwrap())
    }

    #[test]
    fn omega_area_of_constant_density() {
        let form = CircleSpaceForm::new(2.0, Arc::new(Constant(1.0))).unwrap();
        let circle = Ellipse::circle(Vec2::new(0.3, -0.2), 0.7);
        let exact = -PI * 0.49 / 2.0;
        let smooth = omega_area_parametric(&form, &circle, &Tolerances::default()).unwrap();
        assert!((smooth - exact).abs() < 1e-13);
        let poly = circle.sample(2000);
        let a = omega_area(&form, &poly).unwrap();
        assert!((a - poly.signed_area() * -0.5).abs() < 1e-13);
        assert!((omega_area(&form, &poly.reversed()).unwrap() + a).abs() < 1e-14);
    }

    #[test]
    fn exotic_disc_has_area_minus_pi_r() {
        let form = CircleSpaceForm::new(1.0, exotic()).unwrap();
        for c in [Vec2::zeros(), Vec2::new(0.7, -1.3)] {
            let a = omega_area_parametric(&form, &Ellipse::circle(c, 1.0), &Tolerances::default()).unwrap();
            assert!((a + PI).abs() < 1e-10, "{a}");
        }
    }

    #[test]
    fn disc_integrals() {
        assert!((disc_integral(&Constant(2.0), Vec2::new(5.0, 1.0), 1.5) - 2.0 * disc_area(1.5)).abs() < 1e-12);
        let g = exotic();
        for c in [Vec2::zeros(), Vec2::new(1.1, 0.4), Vec2::new(-2.0, 3.0)] {
            assert!((disc_integral(g.as_ref(), c, 1.0) - PI).abs() < 1e-10);
        }
        let x1 = Quadratic::affine(0.0, 1.0, 0.0);
        assert!((disc_integral(&x1, Vec2::new(0.8, 0.0), 1.0) - 0.8 * PI).abs() < 1e-12);
    }

    #[test]
    fn orthogonality() {
        let (c, s) = circle_orthogonality(&Constant(1.0), Vec2::new(1.0, 2.0), 1.0);
        assert!(c.abs() < 1e-14 && s.abs() < 1e-14);
        let (c, s) = circle_orthogonality(exotic().as_ref(), Vec2::new(0.4, 0.9), 1.0);
        assert!(c.abs() < 1e-12 && s.abs() < 1e-12);
        let (c, s) = circle_orthogonality(&Quadratic::affine(0.0, 1.0, 0.0), Vec2::new(0.4, 0.9), 1.3);
        assert!((c - PI * 1.3).abs() < 1e-13 && s.abs() < 1e-13);
    }

    #[test]
    fn constant_density_lengths() {
        let c = CircleMetric::canonical(1.0, Arc::new(Constant(1.0)), Tolerances::default()).unwrap();
        let report = circle_length_constancy(&c, &[Vec2::zeros(), Vec2::new(1.0, -0.5)]).unwrap();
        assert!((report.min - PI).abs() < 1e-10 && (report.max - PI).abs() < 1e-10);
        let check = length_area_check(&c, &Ellipse::new(Vec2::zeros(), 1.0, 0.5, 0.0), &Domain::default()).unwrap();
        assert!((check.lhs - check.rhs).abs() < 1e-8, "{check:?}");
    }

    #[test]
    fn inadmissible_lengths_vary() {
        let c = CircleMetric::canonical(1.0, Arc::new(Quadratic::affine(2.0, 1.0, 0.0)), Tolerances::default()).unwrap();
        let report = circle_length_constancy(&c, &[Vec2::zeros(), Vec2::new(1.0, 0.0)]).unwrap();
        assert!(report.spread() > 0.1, "{report:?}");
    }
}
