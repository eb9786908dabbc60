//! Billiards in Finsler and magnetic metrics: reflection laws, tables, and
//! the bounce map.

pub mod conic;
pub mod reflect;

pub use conic::{bisector_defect, fit_focal_conic, focal_conic_residual, max_bisector_defect, ConicFit};
pub use reflect::{equal_angle_reflect, finsler_reflect, momentum_reflect, projective_reflect, Reflection, GRAZING_SIN};

use std::f64::consts::{PI, TAU};
use std::io::Write;
use std::sync::Arc;

use crate::curves::OrientedCurve;
use crate::error::{Error, Result};
use crate::geom::{angle_diff, cross, heading, perp, unit, Vec2};
use crate::metrics::{MagneticMetric, Metric};
use crate::numerics::rk4_step;

/// The boundary of a convex table, described by a level function that is
/// negative inside.
pub trait TableBoundary: Send + Sync {
    fn level(&self, x: Vec2) -> f64;

    /// Outward normal direction (not necessarily unit) at a boundary point.
    fn gradient(&self, x: Vec2) -> Vec2;

    fn perimeter(&self) -> f64;

    /// Counterclockwise arclength parameter of a boundary point.
    fn param_of(&self, x: Vec2) -> f64;

    fn point_at(&self, s: f64) -> Vec2;

    /// Counterclockwise unit tangent at a boundary point.
    fn tangent(&self, x: Vec2) -> Vec2 {
        perp(self.gradient(x)).normalize()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleTable {
    pub center: Vec2,
    pub radius: f64,
}

impl TableBoundary for CircleTable {
    fn level(&self, x: Vec2) -> f64 {
        (x - self.center).norm() - self.radius
    }
    fn gradient(&self, x: Vec2) -> Vec2 {
        (x - self.center).normalize()
    }
    fn perimeter(&self) -> f64 {
        TAU * self.radius
    }
    fn param_of(&self, x: Vec2) -> f64 {
        let d = x - self.center;
        d.y.atan2(d.x).rem_euclid(TAU) * self.radius
    }
    fn point_at(&self, s: f64) -> Vec2 {
        self.center + self.radius * unit(s / self.radius)
    }
}

/// A convex counterclockwise polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonTable {
    outline: OrientedCurve,
    normals: Vec<Vec2>,
}

impl PolygonTable {
    pub fn new(outline: OrientedCurve) -> Result<Self> {
        if !outline.is_convex_ccw() {
            return Err(Error::Invalid("table outline must be closed, convex and counterclockwise".into()));
        }
        let normals = outline.edges().map(|(a, b)| -perp(b - a).normalize()).collect();
        Ok(Self { outline, normals })
    }

    pub fn outline(&self) -> &OrientedCurve {
        &self.outline
    }

    fn active_edge(&self, x: Vec2) -> (usize, f64) {
        self.outline
            .vertices
            .iter()
            .zip(&self.normals)
            .map(|(v, n)| (x - v).dot(n))
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("polygon has edges")
    }
}

impl TableBoundary for PolygonTable {
    fn level(&self, x: Vec2) -> f64 {
        self.active_edge(x).1
    }
    fn gradient(&self, x: Vec2) -> Vec2 {
        self.normals[self.active_edge(x).0]
    }
    fn perimeter(&self) -> f64 {
        self.outline.length()
    }
    fn param_of(&self, x: Vec2) -> f64 {
        let (i, _) = self.active_edge(x);
        let cum = self.outline.arclengths();
        let (a, b) = self.outline.edges().nth(i).expect("edge index");
        let t = (x - a).dot(&(b - a).normalize());
        (cum[i] + t).rem_euclid(self.perimeter())
    }
    fn point_at(&self, s: f64) -> Vec2 {
        self.outline.point_at(s)
    }
}

type LevelFn = dyn Fn(Vec2) -> f64 + Send + Sync;

/// A table given by an arbitrary level function, with a polyline outline for
/// boundary parameters.
#[derive(Clone)]
pub struct LevelSetTable {
    level: Arc<LevelFn>,
    outline: OrientedCurve,
}

impl LevelSetTable {
    pub fn new(level: impl Fn(Vec2) -> f64 + Send + Sync + 'static, outline: OrientedCurve) -> Self {
        Self {
            level: Arc::new(level),
            outline,
        }
    }

    pub fn outline(&self) -> &OrientedCurve {
        &self.outline
    }
}

impl TableBoundary for LevelSetTable {
    fn level(&self, x: Vec2) -> f64 {
        (self.level)(x)
    }
    fn gradient(&self, x: Vec2) -> Vec2 {
        let h = 1e-6;
        let f = |d: Vec2| ((self.level)(x + h * d) - (self.level)(x - h * d)) / (2.0 * h);
        Vec2::new(f(Vec2::x()), f(Vec2::y()))
    }
    fn perimeter(&self) -> f64 {
        self.outline.length()
    }
    fn param_of(&self, x: Vec2) -> f64 {
        let cum = self.outline.arclengths();
        let (i, _) = self
            .outline
            .vertices
            .iter()
            .map(|v| (v - x).norm())
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("outline has vertices");
        cum[i]
    }
    fn point_at(&self, s: f64) -> Vec2 {
        self.outline.point_at(s)
    }
}

/// The half-plane to the left of the directed line `origin + s·direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlaneTable {
    pub origin: Vec2,
    pub direction: Vec2,
}

impl TableBoundary for HalfPlaneTable {
    fn level(&self, x: Vec2) -> f64 {
        -cross(self.direction.normalize(), x - self.origin)
    }
    fn gradient(&self, _x: Vec2) -> Vec2 {
        -perp(self.direction.normalize())
    }
    fn perimeter(&self) -> f64 {
        f64::INFINITY
    }
    fn param_of(&self, x: Vec2) -> f64 {
        (x - self.origin).dot(&self.direction.normalize())
    }
    fn point_at(&self, s: f64) -> Vec2 {
        self.origin + s * self.direction.normalize()
    }
}

#[derive(Clone)]
pub struct BilliardTable {
    pub boundary: Arc<dyn TableBoundary>,
    pub metric: Metric,
    /// Integration step along the geodesic.
    pub step: f64,
    /// Arclength after which an orbit counts as trapped.
    pub cap: Option<f64>,
}

impl BilliardTable {
    pub fn new(boundary: Arc<dyn TableBoundary>, metric: Metric) -> Self {
        Self {
            boundary,
            metric,
            step: 1e-3,
            cap: None,
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn cap(&self) -> f64 {
        self.cap.unwrap_or_else(|| match &self.metric {
            Metric::Magnetic(MagneticMetric::Constant { radius }) => 4.0 * PI * radius,
            _ => 10.0 * self.boundary.perimeter(),
        })
    }

    pub fn state_at(&self, param: f64, direction: f64) -> BilliardState {
        BilliardState {
            param,
            position: self.boundary.point_at(param),
            direction,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilliardState {
    /// Boundary arclength parameter.
    pub param: f64,
    pub position: Vec2,
    /// Outgoing heading, into the table.
    pub direction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bounce {
    pub state: BilliardState,
    /// Heading on arrival.
    pub incoming: f64,
    /// Angles between the boundary tangent and the arriving and leaving
    /// directions, both in `(0, π)`.
    pub angle_in: f64,
    pub angle_out: f64,
    /// Arclength of the chord just travelled.
    pub length: f64,
    pub path: Vec<Vec2>,
}

/// Arclength resolution of the boundary hit.
const HIT_TOL: f64 = 1e-12;

/// Follow the geodesic from `state` to the next boundary hit and reflect there.
pub fn billiard_step(table: &BilliardTable, state: &BilliardState) -> Result<Bounce> {
    let boundary = table.boundary.as_ref();
    let start = state.position;
    if unit(state.direction).dot(&boundary.gradient(start)) >= 0.0 {
        return Err(Error::Invalid("billiard direction must point into the table".into()));
    }
    let metric = &table.metric;
    let mut rhs = |_s: f64, y: &[f64; 3]| -> Result<[f64; 3]> {
        let (s, c) = y[2].sin_cos();
        Ok([c, s, metric.heading_rate(Vec2::new(y[0], y[1]), y[2])?])
    };
    let at = |y: &[f64; 3]| Vec2::new(y[0], y[1]);
    let h = table.step;
    let cap = table.cap();
    let mut y = [start.x, start.y, state.direction];
    let mut s = 0.0;
    let mut path = vec![start];
    let hit = loop {
        if s > cap {
            return Err(Error::Trapped { cap });
        }
        let next = rk4_step(&mut rhs, s, &y, h)?;
        if boundary.level(at(&next)) > 0.0 {
            let (mut lo, mut hi) = (0.0, h);
            while hi - lo > HIT_TOL {
                let mid = 0.5 * (lo + hi);
                if boundary.level(at(&rk4_step(&mut rhs, s, &y, mid)?)) > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let end = rk4_step(&mut rhs, s, &y, hi)?;
            s += hi;
            break end;
        }
        y = next;
        s += h;
        path.push(at(&y));
    };
    let point = at(&hit);
    path.push(point);
    let beta = hit[2];
    let tangent = boundary.tangent(point);
    let boundary_dir = heading(tangent);
    if angle_diff(beta, boundary_dir).sin().abs() < GRAZING_SIN {
        return Err(Error::Grazing { point });
    }
    let gamma = if metric.reflects_by_equal_angles() {
        equal_angle_reflect(boundary_dir, beta)
    } else {
        momentum_reflect(metric, point, boundary_dir, beta, 1e-14)?
    };
    Ok(Bounce {
        state: BilliardState {
            param: boundary.param_of(point),
            position: point,
            direction: gamma,
        },
        incoming: beta,
        angle_in: angle_diff(boundary_dir, beta),
        angle_out: angle_diff(gamma, boundary_dir),
        length: s,
        path,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub start: BilliardState,
    pub bounces: Vec<Bounce>,
}

impl Orbit {
    pub fn path(&self) -> Vec<Vec2> {
        let mut out = vec![self.start.position];
        for b in &self.bounces {
            out.extend(b.path.iter().skip(1));
        }
        out
    }

    /// CSV with columns `bounce, param, incidence`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["bounce", "param", "incidence"])?;
        for (k, b) in self.bounces.iter().enumerate() {
            w.write_record([
                (k + 1).to_string(),
                format!("{:.16e}", b.state.param),
                format!("{:.16e}", b.angle_out),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn iterate_billiard(table: &BilliardTable, start: BilliardState, bounces: usize) -> Result<Orbit> {
    let mut orbit = Orbit {
        start,
        bounces: Vec::with_capacity(bounces),
    };
    let mut state = start;
    for _ in 0..bounces {
        let b = billiard_step(table, &state)?;
        state = b.state;
        orbit.bounces.push(b);
    }
    Ok(orbit)
}
