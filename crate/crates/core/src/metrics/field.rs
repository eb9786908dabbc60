//! Scalar fields on the plane with analytic gradients.

use std::fmt;
use std::sync::Arc;

use nalgebra::Matrix2;

use crate::geom::Vec2;

/// A smooth function on the plane together with its first (and optionally
/// second) partial derivatives. Implementations must be pure.
pub trait ScalarField: Send + Sync + fmt::Debug {
    fn value(&self, x: Vec2) -> f64;

    fn gradient(&self, x: Vec2) -> Vec2;

    /// Hessian matrix, when the field can supply one.
    fn hessian(&self, _x: Vec2) -> Option<Matrix2<f64>> {
        None
    }

    fn value_and_gradient(&self, x: Vec2) -> (f64, Vec2) {
        (self.value(x), self.gradient(x))
    }
}

pub type Field = Arc<dyn ScalarField>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant(pub f64);

impl ScalarField for Constant {
    fn value(&self, _x: Vec2) -> f64 {
        self.0
    }
    fn gradient(&self, _x: Vec2) -> Vec2 {
        Vec2::zeros()
    }
    fn hessian(&self, _x: Vec2) -> Option<Matrix2<f64>> {
        Some(Matrix2::zeros())
    }
}

/// `c0 + c1 x1 + c2 x2 + c11 x1² + c12 x1 x2 + c22 x2²`.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct Quadratic {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
}

impl Quadratic {
    pub fn affine(c0: f64, c1: f64, c2: f64) -> Self {
        Self {
            c0,
            c1,
            c2,
            ..Default::default()
        }
    }
}

impl ScalarField for Quadratic {
    fn value(&self, x: Vec2) -> f64 {
        self.c0
            + self.c1 * x.x
            + self.c2 * x.y
            + self.c11 * x.x * x.x
            + self.c12 * x.x * x.y
            + self.c22 * x.y * x.y
    }
    fn gradient(&self, x: Vec2) -> Vec2 {
        Vec2::new(
            self.c1 + 2.0 * self.c11 * x.x + self.c12 * x.y,
            self.c2 + self.c12 * x.x + 2.0 * self.c22 * x.y,
        )
    }
    fn hessian(&self, _x: Vec2) -> Option<Matrix2<f64>> {
        Some(Matrix2::new(2.0 * self.c11, self.c12, self.c12, 2.0 * self.c22))
    }
}

type ValueFn = dyn Fn(Vec2) -> f64 + Send + Sync;
type GradFn = dyn Fn(Vec2) -> Vec2 + Send + Sync;
type HessFn = dyn Fn(Vec2) -> Matrix2<f64> + Send + Sync;

/// A field assembled from closures.
#[derive(Clone)]
pub struct FnField {
    name: String,
    value: Arc<ValueFn>,
    gradient: Arc<GradFn>,
    hessian: Option<Arc<HessFn>>,
}

impl FnField {
    pub fn new(
        name: impl Into<String>,
        value: impl Fn(Vec2) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(Vec2) -> Vec2 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            value: Arc::new(value),
            gradient: Arc::new(gradient),
            hessian: None,
        }
    }

    pub fn with_hessian(mut self, hessian: impl Fn(Vec2) -> Matrix2<f64> + Send + Sync + 'static) -> Self {
        self.hessian = Some(Arc::new(hessian));
        self
    }
}

impl fmt::Debug for FnField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnField").field("name", &self.name).finish()
    }
}

impl ScalarField for FnField {
    fn value(&self, x: Vec2) -> f64 {
        (self.value)(x)
    }
    fn gradient(&self, x: Vec2) -> Vec2 {
        (self.gradient)(x)
    }
    fn hessian(&self, x: Vec2) -> Option<Matrix2<f64>> {
        self.hessian.as_ref().map(|h| h(x))
    }
}

/// `base + ∂h/∂x_axis`: one component of a 1-form shifted by the differential of `h`.
#[derive(Debug, Clone)]
pub struct ExactShift {
    pub base: Field,
    pub potential: Field,
    pub axis: usize,
}

impl ScalarField for ExactShift {
    fn value(&self, x: Vec2) -> f64 {
        self.base.value(x) + self.potential.gradient(x)[self.axis]
    }
    fn gradient(&self, x: Vec2) -> Vec2 {
        let h = self
            .potential
            .hessian(x)
            .expect("exact shift potential must supply a Hessian");
        self.base.gradient(x) + h.row(self.axis).transpose()
    }
}

/// Largest relative disagreement between `field.gradient` and central
/// differences of `field.value` over `probes`.
pub fn gradient_mismatch(field: &dyn ScalarField, probes: &[Vec2]) -> f64 {
    let h = 1e-5;
    probes
        .iter()
        .map(|&x| {
            let fd = Vec2::new(
                (field.value(x + Vec2::new(h, 0.0)) - field.value(x - Vec2::new(h, 0.0))) / (2.0 * h),
                (field.value(x + Vec2::new(0.0, h)) - field.value(x - Vec2::new(0.0, h))) / (2.0 * h),
            );
            let g = field.gradient(x);
            (g - fd).norm() / (1.0 + g.norm())
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_gradient_matches_differences() {
        let q = Quadratic {
            c0: 1.0,
            c1: -0.5,
            c2: 2.0,
            c11: 0.3,
            c12: -1.1,
            c22: 0.7,
        };
        let probes: Vec<_> = (0..10).map(|i| Vec2::new(0.3 * i as f64 - 1.0, 0.5 - 0.17 * i as f64)).collect();
        assert!(gradient_mismatch(&q, &probes) < 1e-6);
    }

    #[test]
    fn wrong_gradient_is_detected() {
        let f = FnField::new("bad", |x: Vec2| x.x * x.x, |_x: Vec2| Vec2::new(1.0, 0.0));
        assert!(gradient_mismatch(&f, &[Vec2::new(2.0, 0.0)]) > 0.5);
    }

    #[test]
    fn exact_shift_adds_differential() {
        let base: Field = Arc::new(Constant(0.25));
        let h: Field = Arc::new(Quadratic {
            c12: 1.0,
            ..Default::default()
        });
        let a = ExactShift {
            base,
            potential: h,
            axis: 0,
        };
        let x = Vec2::new(0.4, -2.0);
        // ∂(x1 x2)/∂x1 = x2
        assert!((a.value(x) - (0.25 - 2.0)).abs() < 1e-15);
        assert_eq!(a.gradient(x), Vec2::new(0.0, 1.0));
    }
}
