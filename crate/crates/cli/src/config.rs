//! The JSON experiment configuration.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use magbill::geom::{Domain, Vec2};
use magbill::metrics::{
    AdmissibilityReport, CircleMetric, LineSeries, LineTerm, MagneticMetric, Metric, ProbeSpec, ProjectiveMetric,
    Quadratic,
};
use magbill::numerics::Tolerances;
use magbill::pompeiu::{make_circle_metric_with, ExoticDensitySpec};
use serde::Deserialize;

use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub metric: MetricSpec,
    #[serde(default)]
    pub domain: Domain,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub experiment: ExperimentSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricSpec {
    Euclidean {},
    MagneticConstant {
        #[serde(rename = "R")]
        radius: f64,
    },
    /// `L = |v| + f1 dx1 + f2 dx2` with quadratic coefficients.
    MagneticForm { f1: Quadratic, f2: Quadratic },
    ProjectiveHamel { terms: Vec<LineTerm> },
    CircleLagrangian {
        #[serde(rename = "R")]
        radius: f64,
        density: DensitySpec,
        #[serde(default)]
        gauge: GaugeChoice,
    },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum DensitySpec {
    Constant(ConstantDensity),
    Exotic(ExoticDensitySpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantDensity {
    pub constant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaugeChoice {
    /// `b = 0`, `a = (1/R) ∫_0^{x2} g(x1 + R, s) ds`.
    #[default]
    Canonical,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: Option<PathBuf>,
    pub svg: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self { dir: None, svg: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Geodesic,
    Reflect,
    Billiard,
    String,
    Ellipse,
    VerifyAll,
    Density,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Geodesic => "geodesic",
            Self::Reflect => "reflect",
            Self::Billiard => "billiard",
            Self::String => "string",
            Self::Ellipse => "ellipse",
            Self::VerifyAll => "verify-all",
            Self::Density => "density",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExperimentSpec {
    Geodesic(GeodesicParams),
    Reflect(ReflectParams),
    Billiard(BilliardParams),
    String(StringParams),
    Ellipse(EllipseParams),
    VerifyAll(VerifyParams),
    Density(DensityParams),
}

impl ExperimentSpec {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            Self::Geodesic(_) => ExperimentKind::Geodesic,
            Self::Reflect(_) => ExperimentKind::Reflect,
            Self::Billiard(_) => ExperimentKind::Billiard,
            Self::String(_) => ExperimentKind::String,
            Self::Ellipse(_) => ExperimentKind::Ellipse,
            Self::VerifyAll(_) => ExperimentKind::VerifyAll,
            Self::Density(_) => ExperimentKind::Density,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeodesicParams {
    pub starts: usize,
    /// Defaults to one full turn, `2πR`, for metrics with circular geodesics.
    pub arclength: Option<f64>,
    pub radius_tol: f64,
    pub rms_tol: f64,
}

impl Default for GeodesicParams {
    fn default() -> Self {
        Self {
            starts: 20,
            arclength: None,
            radius_tol: 1e-5,
            rms_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReflectParams {
    pub samples: usize,
    pub scales: Vec<f64>,
}

impl Default for ReflectParams {
    fn default() -> Self {
        Self {
            samples: 100,
            scales: vec![0.25, 4.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TableSpec {
    Circle { center: [f64; 2], radius: f64 },
    Ellipse {
        center: [f64; 2],
        a: f64,
        b: f64,
        #[serde(default)]
        rotation: f64,
    },
    /// Vertices of a convex counterclockwise polygon.
    Polygon { vertices: Vec<[f64; 2]> },
}

impl Default for TableSpec {
    fn default() -> Self {
        Self::Circle {
            center: [0.0, 0.0],
            radius: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BilliardParams {
    pub table: TableSpec,
    /// Boundary arclength of the first launch point.
    pub start: f64,
    /// Launch angle from the counterclockwise boundary tangent, in `(0, π)`.
    pub incidence: f64,
    pub bounces: usize,
}

impl Default for BilliardParams {
    fn default() -> Self {
        Self {
            table: TableSpec::default(),
            start: 0.0,
            incidence: PI / 3.0,
            bounces: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StringParams {
    pub obstacle_center: [f64; 2],
    pub obstacle_radius: f64,
    /// The table is the level set of the string function through the point
    /// at this distance to the right of the obstacle center.
    pub level_distance: f64,
    pub samples: usize,
    pub bounces: usize,
    pub gap_tol: f64,
}

impl Default for StringParams {
    fn default() -> Self {
        Self {
            obstacle_center: [0.0, 0.0],
            obstacle_radius: 0.3,
            level_distance: 1.2,
            samples: 720,
            bounces: 20,
            gap_tol: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EllipseParams {
    pub focus_a: [f64; 2],
    pub focus_b: [f64; 2],
    /// Level above `d(A, B)`.
    pub excess: f64,
    pub probes: usize,
    pub grid: usize,
    pub miss_tol: f64,
}

impl Default for EllipseParams {
    fn default() -> Self {
        Self {
            focus_a: [-0.3, 0.0],
            focus_b: [0.3, 0.1],
            excess: 1.0,
            probes: 20,
            grid: 400,
            miss_tol: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyParams {
    pub probes: usize,
    pub geodesics: usize,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self {
            probes: 20,
            geodesics: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DensityParams {
    pub nx: usize,
    pub ny: usize,
    pub discs: usize,
    pub circles: usize,
}

impl Default for DensityParams {
    fn default() -> Self {
        Self {
            nx: 101,
            ny: 101,
            discs: 100,
            circles: 50,
        }
    }
}

/// The metric built from a [`MetricSpec`].
#[derive(Debug, Clone)]
pub struct BuiltMetric {
    pub kind: &'static str,
    pub metric: Metric,
    /// Radius of the circular geodesics, when the metric has them.
    pub radius: Option<f64>,
    pub admissibility: Option<AdmissibilityReport>,
}

impl BuiltMetric {
    pub fn circle(&self) -> Option<&CircleMetric> {
        match &self.metric {
            Metric::Circle(c) => Some(c),
            _ => None,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn positive(name: &str, v: f64) -> CliResult<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(usage(format!("{name} must be positive, got {v}")))
    }
}

impl MetricSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Euclidean {} => "euclidean",
            Self::MagneticConstant { .. } => "magnetic_constant",
            Self::MagneticForm { .. } => "magnetic_form",
            Self::ProjectiveHamel { .. } => "projective_hamel",
            Self::CircleLagrangian { .. } => "circle_lagrangian",
        }
    }

    pub fn build(&self, domain: &Domain, tol: Tolerances) -> CliResult<BuiltMetric> {
        let mut built = BuiltMetric {
            kind: self.kind(),
            metric: Metric::Euclidean,
            radius: None,
            admissibility: None,
        };
        match self {
            Self::Euclidean {} => {}
            Self::MagneticConstant { radius } => {
                positive("metric.R", *radius)?;
                built.metric = Metric::Magnetic(MagneticMetric::constant(*radius));
                built.radius = Some(*radius);
            }
            Self::MagneticForm { f1, f2 } => {
                built.metric = Metric::Magnetic(MagneticMetric::form(Arc::new(*f1), Arc::new(*f2)));
            }
            Self::ProjectiveHamel { terms } => {
                if terms.is_empty() {
                    return Err(usage("projective_hamel needs at least one term"));
                }
                let series = LineSeries { terms: terms.clone() };
                built.metric = Metric::Projective(ProjectiveMetric::new(Arc::new(series), tol));
            }
            Self::CircleLagrangian { radius, density, .. } => {
                positive("metric.R", *radius)?;
                let spec = match density {
                    DensitySpec::Constant(c) => {
                        positive("metric.density.constant", c.constant)?;
                        ExoticDensitySpec::constant(*radius, c.constant)
                    }
                    DensitySpec::Exotic(spec) => {
                        if (spec.radius - radius).abs() > 1e-12 * radius {
                            return Err(usage(format!(
                                "density R = {} differs from metric R = {radius}",
                                spec.radius
                            )));
                        }
                        spec.clone()
                    }
                };
                let v = make_circle_metric_with(&spec, &ProbeSpec::coarse(*domain, 9, 32), tol)
                    .map_err(|e| usage(e.to_string()))?;
                built.metric = Metric::Circle(v.metric);
                built.radius = Some(*radius);
                built.admissibility = Some(v.report);
            }
        }
        Ok(built)
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| usage(e.to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Everything that can be checked without running the experiment.
    pub fn validate(&self) -> CliResult<()> {
        self.tolerances.validate().map_err(|e| usage(e.to_string()))?;
        if !self.domain.is_valid() {
            return Err(usage("domain must have min < max in both coordinates"));
        }
        let needs_radius = |what: &str| match self.metric {
            MetricSpec::MagneticConstant { .. } => Ok(()),
            _ => Err(usage(format!("the {what} experiment needs a magnetic_constant metric"))),
        };
        match &self.experiment {
            ExperimentSpec::Geodesic(p) => {
                if p.starts == 0 {
                    return Err(usage("geodesic.starts must be at least 1"));
                }
                if let Some(s) = p.arclength {
                    positive("geodesic.arclength", s)?;
                }
                positive("geodesic.radius_tol", p.radius_tol)?;
                positive("geodesic.rms_tol", p.rms_tol)?;
            }
            ExperimentSpec::Reflect(p) => {
                if p.samples == 0 {
                    return Err(usage("reflect.samples must be at least 1"));
                }
                for &s in &p.scales {
                    positive("reflect.scales", s)?;
                }
            }
            ExperimentSpec::Billiard(p) => {
                if !(p.incidence > 0.0 && p.incidence < PI) {
                    return Err(usage("billiard.incidence must lie in (0, pi)"));
                }
                match &p.table {
                    TableSpec::Circle { radius, .. } => positive("table.radius", *radius)?,
                    TableSpec::Ellipse { a, b, .. } => {
                        positive("table.a", *a)?;
                        positive("table.b", *b)?;
                    }
                    TableSpec::Polygon { vertices } if vertices.len() < 3 => {
                        return Err(usage("table polygon needs at least three vertices"));
                    }
                    TableSpec::Polygon { .. } => {}
                }
            }
            ExperimentSpec::String(p) => {
                needs_radius("string")?;
                positive("string.obstacle_radius", p.obstacle_radius)?;
                positive("string.gap_tol", p.gap_tol)?;
                if p.level_distance <= p.obstacle_radius {
                    return Err(usage("string.level_distance must exceed the obstacle radius"));
                }
                if p.samples < 16 {
                    return Err(usage("string.samples must be at least 16"));
                }
            }
            ExperimentSpec::Ellipse(p) => {
                needs_radius("ellipse")?;
                positive("ellipse.excess", p.excess)?;
                positive("ellipse.miss_tol", p.miss_tol)?;
                if p.grid < 8 || p.probes == 0 {
                    return Err(usage("ellipse.grid must be at least 8 and probes at least 1"));
                }
            }
            ExperimentSpec::VerifyAll(p) => {
                if p.probes == 0 {
                    return Err(usage("verify-all.probes must be at least 1"));
                }
            }
            ExperimentSpec::Density(p) => {
                if !matches!(self.metric, MetricSpec::CircleLagrangian { .. }) {
                    return Err(usage("the density experiment needs a circle_lagrangian metric"));
                }
                if p.nx < 2 || p.ny < 2 || p.discs < 2 || p.circles < 2 {
                    return Err(usage("density grid and probe counts must be at least 2"));
                }
            }
        }
        Ok(())
    }
}

pub fn to_vec2(p: [f64; 2]) -> Vec2 {
    Vec2::new(p[0], p[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_metric_kind() {
        let metrics = [
            r#"{"kind": "euclidean"}"#,
            r#"{"kind": "magnetic_constant", "R": 1.5}"#,
            r#"{"kind": "magnetic_form", "f1": {"c2": 0.5}, "f2": {"c1": -0.5}}"#,
            r#"{"kind": "projective_hamel", "terms": [{"coef": 1.0}, {"coef": 0.3, "harmonic": 2}]}"#,
            r#"{"kind": "circle_lagrangian", "R": 1.0, "density": {"constant": 1.0}}"#,
            r#"{"kind": "circle_lagrangian", "R": 1.0, "gauge": "canonical", "density": {"R": 1.0, "offset": 1.0, "terms": [
                {"root_index": 1, "weight": 0.5, "phase": "cos", "measure": {"atoms": [{"angle": 0.0, "mass": 1.0}]}}]}}"#,
        ];
        for m in metrics {
            let text = format!(r#"{{"metric": {m}, "experiment": {{"kind": "reflect"}}, "seed": 3}}"#);
            let cfg = ExperimentConfig::from_json(&text).unwrap_or_else(|e| panic!("{m}: {e}"));
            cfg.validate().unwrap();
            cfg.metric.build(&cfg.domain, cfg.tolerances).unwrap();
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = [
            r#"{"metric": {"kind": "warp"}, "experiment": {"kind": "reflect"}}"#,
            r#"{"metric": {"kind": "euclidean"}, "experiment": {"kind": "reflect"}, "extra": 1}"#,
            r#"{"metric": {"kind": "euclidean", "R": 1}, "experiment": {"kind": "reflect"}}"#,
            r#"{"metric": {"kind": "euclidean"}, "experiment": {"kind": "reflect", "samples": -1}}"#,
        ];
        for b in bad {
            assert!(ExperimentConfig::from_json(b).is_err(), "{b}");
        }
        let negative = ExperimentConfig::from_json(
            r#"{"metric": {"kind": "euclidean"}, "tolerances": {"quad_rel": -1e-9}, "experiment": {"kind": "reflect"}}"#,
        )
        .unwrap();
        assert!(matches!(negative.validate(), Err(CliError::Usage(_))));
        let wrong_metric = ExperimentConfig::from_json(r#"{"metric": {"kind": "euclidean"}, "experiment": {"kind": "string"}}"#).unwrap();
        assert!(wrong_metric.validate().is_err());
    }

    #[test]
    fn mismatched_density_radius_is_rejected() {
        let spec = MetricSpec::CircleLagrangian {
            radius: 2.0,
            density: DensitySpec::Exotic(ExoticDensitySpec::single_wave(1.0, 0.5)),
            gauge: GaugeChoice::Canonical,
        };
        assert!(spec.build(&Domain::default(), Tolerances::default()).is_err());
    }
}
