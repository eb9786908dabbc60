//! Experiment drivers. Each one appends checks and in-memory files to a
//! [`Run`]; nothing touches the disk here.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use magbill::billiards::{
    finsler_reflect, iterate_billiard, momentum_reflect, projective_reflect, BilliardTable, CircleTable, LevelSetTable, PolygonTable,
    TableBoundary,
};
use magbill::circle_space::{
    circle_length_constancy, circle_orthogonality, disc_integral, length_area_check, LengthConstancyReport,
};
use magbill::curves::{lagrangian_length, ClosedCurve, Ellipse, OrientedCurve, SupportCurve};
use magbill::geodesics::{el_residual, fit_circle, integrate_finsler_geodesic};
use magbill::geom::{angle_diff, heading, Vec2};
use magbill::magnetic_geometry::{
    arc_distance, ellipse_focusing_miss, ellipse_potential, finsler_length_parametric, length_via_front_parametric,
    magnetic_ellipse_with, string_function, string_level_set, tangency_gap, tangent_launch, ArcSpec, EllipseOptions,
    Obstacle,
};
use magbill::metrics::{indicatrix_at, validate_circle_metric, MagneticMetric, Metric, ProbeSpec};
use magbill::numerics::quad_1d;
use magbill::pompeiu::write_density_grid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{
    to_vec2, BilliardParams, BuiltMetric, DensityParams, DensitySpec, EllipseParams, ExperimentConfig, ExperimentSpec,
    GeodesicParams, MetricSpec, ReflectParams, StringParams, TableSpec, VerifyParams,
};
use crate::report::{num, Check, Report, Table};
use crate::svg::{emit_svg, StyledCurve};
use crate::{CliError, CliResult};

/// The outcome of a run: the report and the files to write, by name.
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub report: Report,
    pub files: Vec<(String, Vec<u8>)>,
}

/// Validate the configuration, build the metric and execute the experiment.
pub fn run(cfg: &ExperimentConfig) -> CliResult<Artifacts> {
    cfg.validate()?;
    let metric = cfg.metric.build(&cfg.domain, cfg.tolerances)?;
    let mut r = Run {
        cfg,
        m: metric,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        checks: Vec::new(),
        files: Vec::new(),
    };
    match &cfg.experiment {
        ExperimentSpec::Geodesic(p) => r.geodesic(p),
        ExperimentSpec::Reflect(p) => r.reflect(p),
        ExperimentSpec::Billiard(p) => r.billiard(p)?,
        ExperimentSpec::String(p) => r.string(p),
        ExperimentSpec::Ellipse(p) => r.ellipse(p),
        ExperimentSpec::VerifyAll(p) => r.verify_all(p),
        ExperimentSpec::Density(p) => r.density(p),
    }
    let report = Report::new(cfg.experiment.kind().name(), r.m.kind, cfg.seed, r.checks);
    Ok(Artifacts { report, files: r.files })
}

struct Run<'a> {
    cfg: &'a ExperimentConfig,
    m: BuiltMetric,
    rng: ChaCha8Rng,
    checks: Vec<Check>,
    files: Vec<(String, Vec<u8>)>,
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable");
    out.push(b'\n');
    out
}

fn curve_csv(curve: &OrientedCurve) -> Vec<u8> {
    let mut t = Table::new(&["x1", "x2"]);
    for p in &curve.vertices {
        t.row(&[num(p.x), num(p.y)]);
    }
    t.into_bytes()
}

#[derive(Serialize)]
struct FitRecord {
    trajectory: usize,
    center: [f64; 2],
    radius: f64,
    rms_residual: f64,
    closing_gap: f64,
}

impl Run<'_> {
    fn point(&mut self) -> Vec2 {
        let (u, v) = (self.rng.random::<f64>(), self.rng.random::<f64>());
        self.cfg.domain.lerp(u, v)
    }

    /// Length scale of the metric: `R` where defined, else 1.
    fn scale(&self) -> f64 {
        self.m.radius.unwrap_or(1.0)
    }

    fn file(&mut self, name: &str, bytes: Vec<u8>) {
        self.files.push((name.into(), bytes));
    }

    fn svg(&mut self, name: &str, curves: &[StyledCurve]) {
        if !self.cfg.output.svg {
            return;
        }
        if let Ok(text) = emit_svg(curves) {
            self.file(name, text.into_bytes());
        }
    }

    fn geodesic(&mut self, p: &GeodesicParams) {
        const ANCHOR: &str = "geodesics are circles of radius R";
        let scale = self.scale();
        let s_max = p.arclength.unwrap_or(TAU * scale);
        let h = self.cfg.tolerances.ode_step * scale;
        let mut csv = Table::new(&["trajectory", "s", "x1", "x2", "alpha"]);
        let mut fits = Vec::new();
        let mut curves = Vec::new();
        let mut failure = None;
        for k in 0..p.starts {
            let x0 = self.point();
            let a0 = self.rng.random_range(0.0..TAU);
            let traj = match integrate_finsler_geodesic(&self.m.metric, x0, a0, s_max, h) {
                Ok(t) => t,
                Err(e) => {
                    failure.get_or_insert(format!("trajectory {k}: {e}"));
                    continue;
                }
            };
            for s in &traj.samples {
                csv.row(&[k.to_string(), num(s.s), num(s.x.x), num(s.x.y), num(s.alpha)]);
            }
            curves.push(StyledCurve::new(OrientedCurve::open(traj.points()), "#1f77b4", 1.0));
            if self.m.radius.is_some() {
                match fit_circle(&traj) {
                    Ok(f) => fits.push(FitRecord {
                        trajectory: k,
                        center: [f.center.x, f.center.y],
                        radius: f.radius,
                        rms_residual: f.rms_residual,
                        closing_gap: traj.closing_gap(),
                    }),
                    Err(e) => {
                        failure.get_or_insert(format!("trajectory {k}: {e}"));
                    }
                }
            }
        }
        match failure {
            Some(note) => self.checks.push(Check::failed("geodesic integration", ANCHOR, 0.0, note)),
            None => self
                .checks
                .push(Check::below("geodesic integration", "every trajectory integrates", 0.0, 1.0)),
        }
        if let Some(radius) = self.m.radius {
            let worst = |f: &dyn Fn(&FitRecord) -> f64| {
                if fits.is_empty() {
                    f64::NAN
                } else {
                    fits.iter().map(f).fold(0.0, f64::max)
                }
            };
            let dr = worst(&|f| (f.radius - radius).abs());
            self.checks.push(Check::below("geodesic radius", ANCHOR, dr, p.radius_tol * radius));
            self.checks
                .push(Check::below("geodesic circle fit", ANCHOR, worst(&|f| f.rms_residual), p.rms_tol * radius));
            if p.arclength.is_none() {
                self.checks.push(Check::below(
                    "geodesic closure",
                    "a full turn returns to the start",
                    worst(&|f| f.closing_gap),
                    p.radius_tol * radius,
                ));
            }
            self.file("geodesic_fits.json", json(&fits));
        }
        self.file("geodesic.csv", csv.into_bytes());
        self.svg("geodesic.svg", &curves);
    }

    fn reflect(&mut self, p: &ReflectParams) {
        let equal_angles = matches!(self.m.metric, Metric::Euclidean | Metric::Magnetic(_));
        let mut csv = Table::new(&["x1", "x2", "boundary", "incoming", "outgoing"]);
        let (mut inv, mut conf, mut agree, mut eq, mut proj) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
        let mut failure = None;
        let mut positive = 0;
        for _ in 0..p.samples {
            let x = self.point();
            let boundary = self.rng.random_range(0.0..TAU);
            let beta = boundary - self.rng.random_range(0.05..PI - 0.05);
            let metric = &self.m.metric;
            let mut sample = || -> magbill::Result<f64> {
                let gamma = momentum_reflect(metric, x, boundary, beta, 1e-14)?;
                let back = momentum_reflect(metric, x, boundary, gamma, 1e-14)?;
                inv = inv.max(angle_diff(back, beta).abs());
                eq = eq.max((angle_diff(boundary, beta) - angle_diff(gamma, boundary)).abs());
                // The tangent-line construction needs a positive Lagrangian,
                // which some gauges lose away from the origin.
                match indicatrix_at(metric, x) {
                    Ok(ind) => {
                        positive += 1;
                        let out = finsler_reflect(&ind, boundary, ind.point_at(beta)?, 1e-14)?;
                        agree = agree.max(angle_diff(out.heading(), gamma).abs());
                        for &s in &p.scales {
                            let scaled = ind.scaled(s);
                            let o = finsler_reflect(&scaled, boundary, scaled.point_at(beta)?, 1e-14)?;
                            conf = conf.max(angle_diff(o.heading(), out.heading()).abs());
                        }
                    }
                    Err(magbill::Error::DegenerateIndicatrix { .. }) => {}
                    Err(e) => return Err(e),
                }
                if let Metric::Projective(pm) = metric {
                    let g = projective_reflect(pm, x, boundary, beta, 1e-14)?;
                    proj = proj.max(angle_diff(g, gamma).abs());
                }
                Ok(gamma)
            };
            match sample() {
                Ok(gamma) => csv.row(&[num(x.x), num(x.y), num(boundary), num(beta), num(gamma)]),
                Err(e) => {
                    failure.get_or_insert(format!("at ({}, {}): {e}", x.x, x.y));
                }
            }
        }
        if let Some(note) = failure {
            self.checks
                .push(Check::failed("reflection", "the reflection law is defined", 0.0, note));
        }
        let involution = Check::below(
            "reflection involution",
            "reflecting the outgoing direction returns the incoming one",
            inv,
            1e-9,
        );
        self.checks.push(if positive < p.samples {
            involution.with_note(format!(
                "indicatrix checks used {positive} of {} probes; the Lagrangian is not positive at the rest",
                p.samples
            ))
        } else {
            involution
        });
        if positive > 0 {
            self.checks.push(Check::below(
                "indicatrix construction",
                "tangent lines on the indicatrix reproduce momentum matching",
                agree,
                1e-10,
            ));
            self.checks.push(Check::below(
                "conformal invariance",
                "scaling the indicatrix leaves reflections unchanged",
                conf,
                1e-10,
            ));
        }
        if equal_angles {
            self.checks.push(Check::below(
                "equal angles",
                "shifted-circle indicatrices reflect by equal angles",
                eq,
                1e-9,
            ));
        }
        if matches!(self.m.metric, Metric::Projective(_)) {
            self.checks.push(Check::below(
                "projective reflection",
                "the line-integral law matches the indicatrix construction",
                proj,
                1e-7,
            ));
        }
        self.file("reflect.csv", csv.into_bytes());
    }

    fn billiard(&mut self, p: &BilliardParams) -> CliResult<()> {
        let (boundary, outline, round): (Arc<dyn TableBoundary>, OrientedCurve, bool) = match &p.table {
            TableSpec::Circle { center, radius } => (
                Arc::new(CircleTable {
                    center: to_vec2(*center),
                    radius: *radius,
                }),
                Ellipse::circle(to_vec2(*center), *radius).sample(360),
                true,
            ),
            TableSpec::Ellipse { center, a, b, rotation } => {
                let e = Ellipse::new(to_vec2(*center), *a, *b, *rotation);
                let outline = e.sample(1440);
                let (a, b, c) = (*a, *b, e.center);
                let (s, co) = rotation.sin_cos();
                let level = move |x: Vec2| {
                    let d = x - c;
                    let (u, v) = (co * d.x + s * d.y, -s * d.x + co * d.y);
                    ((u / a).powi(2) + (v / b).powi(2)).sqrt() - 1.0
                };
                (Arc::new(LevelSetTable::new(level, outline.clone())), outline, false)
            }
            TableSpec::Polygon { vertices } => {
                let outline = OrientedCurve::closed(vertices.iter().map(|&v| to_vec2(v)).collect());
                let table = PolygonTable::new(outline.clone()).map_err(|e| CliError::Usage(e.to_string()))?;
                (Arc::new(table), outline, false)
            }
        };
        let mut table = BilliardTable::new(boundary.clone(), self.m.metric.clone());
        table.step = self.cfg.tolerances.ode_step * self.scale();
        let x0 = boundary.point_at(p.start);
        let direction = heading(boundary.tangent(x0)) + p.incidence;
        let start = table.state_at(p.start, direction);
        let mut curves = vec![StyledCurve::new(outline, "black", 1.5)];
        match iterate_billiard(&table, start, p.bounces) {
            Ok(orbit) => {
                let hit = orbit
                    .bounces
                    .iter()
                    .map(|b| boundary.level(b.state.position).abs())
                    .fold(0.0, f64::max);
                self.checks
                    .push(Check::below("boundary hits", "every chord ends on the table boundary", hit, 1e-9));
                if self.m.metric.reflects_by_equal_angles() {
                    let worst = orbit
                        .bounces
                        .iter()
                        .map(|b| (b.angle_in - b.angle_out).abs())
                        .fold(0.0, f64::max);
                    self.checks
                        .push(Check::below("equal reflection angles", "magnetic reflection is the mirror law", worst, 1e-9));
                }
                let simple_metric = matches!(
                    self.m.metric,
                    Metric::Euclidean | Metric::Magnetic(MagneticMetric::Constant { .. })
                );
                if round && simple_metric {
                    let angles: Vec<f64> = orbit.bounces.iter().map(|b| b.angle_out).collect();
                    let spread = angles.iter().cloned().fold(f64::MIN, f64::max) - angles.iter().cloned().fold(f64::MAX, f64::min);
                    self.checks.push(Check::below(
                        "incidence invariance",
                        "circular tables preserve the incidence angle",
                        spread,
                        1e-9,
                    ));
                }
                let mut buf = Vec::new();
                orbit.write_csv(&mut buf)?;
                self.file("billiard.csv", buf);
                curves.push(StyledCurve::new(OrientedCurve::open(orbit.path()), "#d62728", 1.0));
            }
            Err(e) => self
                .checks
                .push(Check::failed("billiard orbit", "every chord returns to the boundary", 0.0, e)),
        }
        self.svg("billiard.svg", &curves);
        Ok(())
    }

    fn string(&mut self, p: &StringParams) {
        const ANCHOR: &str = "orbits tangent to the obstacle stay tangent";
        let radius = self.scale();
        let obstacle = Obstacle {
            center: to_vec2(p.obstacle_center),
            radius: p.obstacle_radius,
        };
        let built = (|| -> magbill::Result<_> {
            let level = string_function(&obstacle, radius, obstacle.center + p.level_distance * Vec2::x())?.value;
            let outline = string_level_set(&obstacle, radius, level, p.samples)?;
            Ok((level, outline))
        })();
        let (level, outline) = match built {
            Ok(v) => v,
            Err(e) => {
                self.checks.push(Check::failed("string table", ANCHOR, p.gap_tol, e));
                return;
            }
        };
        self.file("string_table.csv", curve_csv(&outline));
        let boundary = Arc::new(LevelSetTable::new(
            move |x| string_function(&obstacle, radius, x).map_or(-1.0, |l| l.value - level),
            outline.clone(),
        ));
        let mut table = BilliardTable::new(boundary.clone(), self.m.metric.clone());
        table.step = self.cfg.tolerances.ode_step * radius;
        let x0 = boundary.point_at(0.0);
        let mut curves = vec![
            StyledCurve::new(Ellipse::circle(obstacle.center, obstacle.radius).sample(180), "#7f7f7f", 1.0),
            StyledCurve::new(outline, "black", 1.5),
        ];
        let result = tangent_launch(&obstacle, radius, x0, boundary.gradient(x0))
            .and_then(|launch| iterate_billiard(&table, table.state_at(0.0, launch), p.bounces));
        match result {
            Ok(orbit) => {
                let gap = std::iter::once(&orbit.start)
                    .chain(orbit.bounces.iter().map(|b| &b.state))
                    .map(|s| tangency_gap(&obstacle, radius, s.position, s.direction))
                    .fold(0.0, f64::max);
                self.checks.push(Check::below("caustic tangency", ANCHOR, gap, p.gap_tol));
                let mut buf = Vec::new();
                if orbit.write_csv(&mut buf).is_ok() {
                    self.file("string_orbit.csv", buf);
                }
                curves.push(StyledCurve::new(OrientedCurve::open(orbit.path()), "#d62728", 1.0));
            }
            Err(e) => self.checks.push(Check::failed("caustic tangency", ANCHOR, p.gap_tol, e)),
        }
        self.svg("string.svg", &curves);
    }

    fn ellipse(&mut self, p: &EllipseParams) {
        const ANCHOR: &str = "trajectories from one focus reflect through the other";
        let radius = self.scale();
        let (a, b) = (to_vec2(p.focus_a), to_vec2(p.focus_b));
        let opts = EllipseOptions {
            grid: p.grid,
            ..EllipseOptions::default()
        };
        let c = ellipse_potential(a, b, radius, a) + p.excess;
        match magnetic_ellipse_with(a, b, c, radius, &opts) {
            Ok(curve) if !curve.is_empty() => {
                let step = (curve.len() / p.probes).max(1);
                let miss = curve
                    .vertices
                    .iter()
                    .step_by(step)
                    .take(p.probes)
                    .map(|&x| ellipse_focusing_miss(a, b, radius, x).unwrap_or(f64::NAN))
                    .fold(0.0, |m: f64, v| if v.is_nan() { f64::NAN } else { m.max(v) });
                self.checks.push(Check::below("focusing miss", ANCHOR, miss, p.miss_tol));
                self.file("ellipse.csv", curve_csv(&curve));
                self.svg("ellipse.svg", &[StyledCurve::new(curve, "black", 1.5)]);
            }
            Ok(_) => self
                .checks
                .push(Check::failed("focusing miss", ANCHOR, p.miss_tol, format!("level {c} is empty"))),
            Err(e) => self.checks.push(Check::failed("focusing miss", ANCHOR, p.miss_tol, e)),
        }
        const ROUND: &str = "coincident foci give a Euclidean circle";
        match magnetic_ellipse_with(a, a, 2.0 * radius * p.excess, radius, &opts) {
            Ok(curve) if !curve.is_empty() => {
                let radii: Vec<f64> = curve.vertices.iter().map(|x| (x - a).norm()).collect();
                let spread =
                    radii.iter().cloned().fold(f64::MIN, f64::max) - radii.iter().cloned().fold(f64::MAX, f64::min);
                self.checks.push(Check::below("coincident foci", ROUND, spread, 1e-8));
            }
            Ok(_) => self.checks.push(Check::failed("coincident foci", ROUND, 1e-8, "empty level set")),
            Err(e) => self.checks.push(Check::failed("coincident foci", ROUND, 1e-8, e)),
        }
    }

    fn density(&mut self, p: &DensityParams) {
        let Some(c) = self.m.circle().cloned() else {
            return;
        };
        let report = validate_circle_metric(&c, &ProbeSpec::on(self.cfg.domain));
        self.checks.push(Check::below(
            "circle center of mass",
            "every R-circle has its center of mass at its center",
            report.center_of_mass,
            1e-8,
        ));
        self.checks
            .push(Check::above("density positive", "the density is positive on the domain", report.min_density, 0.0));
        self.checks.push(Check::below(
            "gauge compatibility",
            "the gauge form matches the density",
            report.gauge_compatibility,
            1e-8,
        ));
        self.file("admissibility.json", json(&report));
        self.disc_checks(&c, p.discs);
        self.length_constancy(&c, p.circles);
        let mut buf = Vec::new();
        match write_density_grid(c.g.as_ref(), &self.cfg.domain, p.nx, p.ny, &mut buf) {
            Ok(()) => self.file("density.csv", buf),
            Err(e) => self.checks.push(Check::failed("density grid", "density export", 0.0, e)),
        }
    }

    fn disc_checks(&mut self, c: &magbill::metrics::CircleMetric, n: usize) {
        let centers: Vec<Vec2> = (0..n).map(|_| self.point()).collect();
        let r = c.radius;
        let values: Vec<f64> = centers.iter().map(|&x| disc_integral(c.g.as_ref(), x, r)).collect();
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        let min = values.iter().cloned().fold(f64::MAX, f64::min);
        self.checks.push(Check::below(
            "disc integral spread",
            "integrals over all R-discs agree",
            (max - min) / max.abs(),
            1e-8,
        ));
        let orth = centers
            .iter()
            .map(|&x| {
                let (a, b) = circle_orthogonality(c.g.as_ref(), x, r);
                a.abs().max(b.abs())
            })
            .fold(0.0, f64::max);
        self.checks.push(Check::below(
            "circle orthogonality",
            "the density on each R-circle is orthogonal to cos and sin",
            orth,
            1e-9,
        ));
    }

    fn length_constancy(&mut self, c: &magbill::metrics::CircleMetric, n: usize) -> Option<LengthConstancyReport> {
        const ANCHOR: &str = "all counterclockwise R-circles have equal length";
        let centers: Vec<Vec2> = (0..n).map(|_| self.point()).collect();
        match circle_length_constancy(c, &centers) {
            Ok(rep) => {
                self.checks.push(Check::below("circle length constancy", ANCHOR, rep.spread(), 1e-8));
                self.file("circle_lengths.json", json(&rep));
                Some(rep)
            }
            Err(e) => {
                self.checks.push(Check::failed("circle length constancy", ANCHOR, 1e-8, e));
                None
            }
        }
    }

    fn random_convex(&mut self) -> SupportCurve {
        loop {
            let center = 0.25 * self.point();
            let base = self.rng.random_range(0.5..1.5);
            let harmonics = (2..6)
                .map(|n| (n, self.rng.random_range(-0.03..0.03), self.rng.random_range(-0.03..0.03)))
                .collect();
            let curve = SupportCurve { center, base, harmonics };
            if curve.min_curvature_radius() > 0.1 {
                return curve;
            }
        }
    }

    fn magnetic_lengths(&mut self, n: usize) {
        let radius = self.scale();
        let tol = self.cfg.tolerances;
        let metric = MagneticMetric::constant(radius);
        let mut worst = 0.0f64;
        for _ in 0..n.max(1) {
            let c = self.random_convex();
            let triple = (|| -> magbill::Result<f64> {
                let direct = lagrangian_length(&c, |x, v| Ok(metric.lagrangian(x, v)), &tol)?;
                let area = finsler_length_parametric(&c, radius, &tol)?;
                let front = length_via_front_parametric(&c, radius, &tol)?;
                Ok((direct - area).abs().max((direct - front).abs()))
            })();
            worst = worst.max(triple.unwrap_or(f64::NAN));
        }
        self.checks.push(Check::below(
            "length formulas",
            "Lagrangian, length-area and wave-front lengths agree",
            worst,
            1e-8,
        ));
        let mut arc_worst = 0.0f64;
        for _ in 0..n.max(1) {
            let arc = ArcSpec {
                center: self.point(),
                radius,
                start: self.rng.random_range(0.0..TAU),
                sweep: self.rng.random_range(0.05..TAU),
            };
            let quad = quad_1d(
                |u| {
                    let (x, v) = arc.at(u);
                    metric.lagrangian(x, v)
                },
                0.0,
                1.0,
                &tol,
            );
            arc_worst = arc_worst.max(quad.map_or(f64::NAN, |q| (q - arc_distance(radius, &arc)).abs()));
        }
        self.checks.push(Check::below(
            "arc distance",
            "closed-form length of R-arcs",
            arc_worst,
            1e-10,
        ));
    }

    fn circle_suite(&mut self, p: &VerifyParams) {
        let Some(c) = self.m.circle().cloned() else {
            return;
        };
        if let Some(rep) = &self.m.admissibility {
            self.checks.push(Check::below(
                "circle center of mass",
                "every R-circle has its center of mass at its center",
                rep.center_of_mass,
                1e-8,
            ));
        }
        let mut el = 0.0f64;
        for _ in 0..p.probes {
            let x = self.point();
            let a = self.rng.random_range(0.0..TAU);
            el = el.max(el_residual(&c, x, a).map_or(f64::NAN, |r| r.norm()));
        }
        self.checks.push(Check::below(
            "Euler-Lagrange residual",
            "R-circles satisfy the Euler-Lagrange equation",
            el,
            1e-7,
        ));
        let mid = self.cfg.domain.midpoint();
        let r = c.radius;
        let ellipse = Ellipse::new(mid, r, 0.5 * r, 0.3);
        let square = SupportCurve::rounded_square(mid, 0.8 * r);
        let curves: [(&str, &dyn ClosedCurve); 2] = [("ellipse", &ellipse), ("rounded square", &square)];
        for (name, curve) in curves {
            let check = format!("length-area identity ({name})");
            const ANCHOR: &str = "length equals omega-area of the front plus the circle length";
            match length_area_check(&c, curve, &self.cfg.domain) {
                Ok(v) => self.checks.push(Check::below(&check, ANCHOR, v.defect(), 1e-6)),
                Err(e) => self.checks.push(Check::failed(&check, ANCHOR, 1e-6, e)),
            }
        }
        let rep = self.length_constancy(&c, p.probes);
        let constant = matches!(
            &self.cfg.metric,
            MetricSpec::CircleLagrangian {
                density: DensitySpec::Constant(_),
                ..
            }
        );
        if let (true, Some(rep), MetricSpec::CircleLagrangian { density: DensitySpec::Constant(d), .. }) =
            (constant, rep, &self.cfg.metric)
        {
            let expected = PI * r * d.constant;
            let err = (rep.max - expected).abs().max((rep.min - expected).abs());
            self.checks
                .push(Check::below("constant density circle length", "R-circles have length piR", err, 1e-10));
        }
        self.disc_checks(&c, p.probes);
    }

    fn verify_all(&mut self, p: &VerifyParams) {
        self.reflect(&ReflectParams {
            samples: p.probes,
            ..ReflectParams::default()
        });
        if p.geodesics > 0 {
            self.geodesic(&GeodesicParams {
                starts: p.geodesics,
                ..GeodesicParams::default()
            });
        }
        match self.m.metric {
            Metric::Magnetic(MagneticMetric::Constant { .. }) => {
                self.magnetic_lengths(p.probes.div_ceil(2));
                let _ = self.billiard(&BilliardParams::default());
            }
            Metric::Euclidean => {
                let _ = self.billiard(&BilliardParams::default());
            }
            Metric::Circle(_) => self.circle_suite(p),
            _ => {}
        }
    }
}
