//! Special functions, quadrature, root finding and fixed-step ODE integration.
//!
//! Everything here is pure; the adaptive routines carry no state between calls
//! and can be used from any number of threads.

mod bessel;
mod ode;
mod quad;
mod roots;

pub use bessel::{bessel_j, bessel_j1_roots, bessel_j_integral};
pub use ode::{ode_rk4, rk4_step, OdeSolution};
pub use quad::{gauss_legendre, quad_1d, quad_try, quad_vec, GaussRule, MAX_SUBDIVISIONS};
pub use roots::{bisect, brent};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by quadrature, integrators and root finders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative tolerance of adaptive quadrature, measured against `∫|f|`.
    pub quad_rel: f64,
    /// Absolute floor of the quadrature error target, for integrals of roundoff.
    pub quad_abs: f64,
    /// Fixed step of the geodesic integrators, in arclength units.
    pub ode_step: f64,
    /// Bracket width at which root finders stop.
    pub root_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quad_rel: 1e-12,
            quad_abs: 1e-15,
            ode_step: 1e-3,
            root_tol: 1e-13,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("quad_rel", self.quad_rel),
            ("quad_abs", self.quad_abs),
            ("ode_step", self.ode_step),
            ("root_tol", self.root_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Invalid(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn with_quad_rel(mut self, quad_rel: f64) -> Self {
        self.quad_rel = quad_rel;
        self
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.ode_step = h;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_tolerances_are_valid() {
        let t = Tolerances::default();
        t.validate().unwrap();
        assert!(t.quad_rel <= 1e-6);
    }

    #[test]
    fn non_positive_tolerances_rejected() {
        assert!(Tolerances::default().with_quad_rel(-1.0).validate().is_err());
        assert!(Tolerances::default().with_step(0.0).validate().is_err());
        let t = Tolerances {
            root_tol: f64::NAN,
            ..Default::default()
        };
        assert!(t.validate().is_err());
    }
}
