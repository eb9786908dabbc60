//! Plane vectors and the handful of angle helpers shared by every module.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector2;

/// A point or vector in the Euclidean plane.
pub type Vec2 = Vector2<f64>;

#[inline]
pub fn vec2(x: f64, y: f64) -> Vec2 {
    Vec2::new(x, y)
}

/// Cross product `[a, b] = a1 b2 - a2 b1`.
#[inline]
pub fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Rotation by a quarter turn counterclockwise, `J(v1, v2) = (-v2, v1)`.
#[inline]
pub fn perp(v: Vec2) -> Vec2 {
    Vec2::new(-v.y, v.x)
}

/// Unit vector at angle `theta`.
#[inline]
pub fn unit(theta: f64) -> Vec2 {
    let (s, c) = theta.sin_cos();
    Vec2::new(c, s)
}

/// Polar angle of `v` in `(-pi, pi]`.
#[inline]
pub fn heading(v: Vec2) -> f64 {
    v.y.atan2(v.x)
}

/// Reduce `theta` into `[lo, lo + 2pi)`.
#[inline]
pub fn reduce_angle(theta: f64, lo: f64) -> f64 {
    let r = lo + (theta - lo).rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU
    if r >= lo + TAU {
        lo
    } else {
        r
    }
}

/// Signed angle difference wrapped into `(-pi, pi]`.
#[inline]
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = reduce_angle(a - b, -PI);
    if d == -PI {
        PI
    } else {
        d
    }
}

/// Unwrap `theta` so that it lies within `pi` of `reference`.
#[inline]
pub fn unwrap_near(theta: f64, reference: f64) -> f64 {
    reference + angle_diff(theta, reference)
}

/// Axis-aligned rectangle used as a working domain.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Domain {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl Domain {
    pub fn new(min: Vec2, max: Vec2) -> Self {
        Self {
            min: [min.x, min.y],
            max: [max.x, max.y],
        }
    }

    pub fn square(half_width: f64) -> Self {
        Self {
            min: [-half_width, -half_width],
            max: [half_width, half_width],
        }
    }

    pub fn midpoint(&self) -> Vec2 {
        Vec2::new(
            0.5 * (self.min[0] + self.max[0]),
            0.5 * (self.min[1] + self.max[1]),
        )
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x >= self.min[0] && p.x <= self.max[0] && p.y >= self.min[1] && p.y <= self.max[1]
    }

    pub fn is_valid(&self) -> bool {
        self.min.iter().chain(&self.max).all(|v| v.is_finite())
            && self.max[0] > self.min[0]
            && self.max[1] > self.min[1]
    }

    /// Map `(u, v)` in the unit square onto the domain.
    pub fn lerp(&self, u: f64, v: f64) -> Vec2 {
        Vec2::new(
            self.min[0] + u * (self.max[0] - self.min[0]),
            self.min[1] + v * (self.max[1] - self.min[1]),
        )
    }

    /// Regular `nx * ny` grid of points including the corners.
    pub fn grid(&self, nx: usize, ny: usize) -> Vec<Vec2> {
        let step = |i: usize, n: usize| if n > 1 { i as f64 / (n - 1) as f64 } else { 0.5 };
        (0..ny)
            .flat_map(|j| (0..nx).map(move |i| (i, j)))
            .map(|(i, j)| self.lerp(step(i, nx), step(j, ny)))
            .collect()
    }
}

impl Default for Domain {
    fn default() -> Self {
        Self::square(2.0)
    }
}
