use thiserror::Error;

use crate::geom::Vec2;

/// Failures raised by the numerical routines of this crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("adaptive quadrature on [{a}, {b}] did not converge after {subdivisions} subdivisions (error estimate {estimate:e})")]
    QuadratureDiverged {
        a: f64,
        b: f64,
        subdivisions: usize,
        estimate: f64,
    },

    #[error("no sign change of the target function on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("metric is degenerate at ({x}, {y}): support function {value:e} at direction {theta}", x = .point.x, y = .point.y)]
    DegenerateIndicatrix { point: Vec2, theta: f64, value: f64 },

    #[error("geodesic equation is degenerate at ({x}, {y}), heading {alpha}: p + p'' = {value:e}", x = .point.x, y = .point.y)]
    DegenerateGeodesic { point: Vec2, alpha: f64, value: f64 },

    #[error("samples are collinear; no circle fits them")]
    CollinearSamples,

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("points are {distance} apart but arcs of radius {radius} only join points closer than {limit}", limit = 2.0 * .radius)]
    Unreachable { distance: f64, radius: f64 },

    #[error("orbit did not return to the boundary within arclength {cap}")]
    Trapped { cap: f64 },

    #[error("trajectory meets the boundary tangentially at ({x}, {y})", x = .point.x, y = .point.y)]
    Grazing { point: Vec2 },

    #[error("point ({x}, {y}) lies inside the obstacle", x = .point.x, y = .point.y)]
    InsideObstacle { point: Vec2 },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("circle metric rejected: {0}")]
    Inadmissible(String),

    #[error("output failed: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
