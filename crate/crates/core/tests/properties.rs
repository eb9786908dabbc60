use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use magbill::billiards::{equal_angle_reflect, finsler_reflect};
use magbill::circle_space::{omega_area, CircleSpaceForm};
use magbill::curves::{ClosedCurve, Ellipse, OrientedCurve};
use magbill::geom::{angle_diff, reduce_angle, unit, Vec2};
use magbill::magnetic_geometry::{arc_distance, point_distance, point_distance_detail, ArcSpec};
use magbill::metrics::{indicatrix_at, Constant, MagneticMetric, Metric};
use magbill::pompeiu::{exotic_density, ExoticDensitySpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_angle_lands_in_window(theta in -50.0f64..50.0, lo in -4.0f64..4.0) {
        let r = reduce_angle(theta, lo);
        prop_assert!(r >= lo && r < lo + TAU);
        prop_assert!(angle_diff(r, theta).abs() < 1e-12);
    }

    #[test]
    fn mirror_reflection_is_an_involution(boundary in 0.0f64..TAU, beta in 0.0f64..TAU) {
        let twice = equal_angle_reflect(boundary, equal_angle_reflect(boundary, beta));
        prop_assert!(angle_diff(twice, beta).abs() < 1e-12);
    }

    #[test]
    fn magnetic_reflection_is_an_involution(
        t in 0.0f64..0.9,
        theta0 in 0.0f64..TAU,
        boundary in 0.0f64..TAU,
        incidence in 0.1f64..(PI - 0.1),
    ) {
        let ind = indicatrix_at(&Metric::Magnetic(MagneticMetric::uniform(t, theta0)), Vec2::zeros()).unwrap();
        let beta = boundary - incidence;
        let out = finsler_reflect(&ind, boundary, ind.point_at(beta).unwrap(), 1e-14).unwrap();
        let back = finsler_reflect(&ind, boundary, out.velocity, 1e-14).unwrap();
        prop_assert!(angle_diff(back.heading(), beta).abs() < 1e-10);
    }

    #[test]
    fn arc_distance_is_additive(
        cx in -2.0f64..2.0,
        cy in -2.0f64..2.0,
        radius in 0.3f64..2.0,
        start in 0.0f64..TAU,
        first in 0.0f64..3.0,
        second in 0.0f64..3.0,
    ) {
        let center = Vec2::new(cx, cy);
        let whole = ArcSpec { center, radius, start, sweep: first + second };
        let a = ArcSpec { sweep: first, ..whole };
        let b = ArcSpec { start: start + first, sweep: second, ..whole };
        let sum = arc_distance(radius, &a) + arc_distance(radius, &b);
        prop_assert!((arc_distance(radius, &whole) - sum).abs() < 1e-12);
    }

    #[test]
    fn point_distance_is_realised_by_its_arc(
        ax in -1.0f64..1.0,
        ay in -1.0f64..1.0,
        angle in 0.0f64..TAU,
        dist in 0.05f64..1.9,
    ) {
        let a = Vec2::new(ax, ay);
        let b = a + dist * unit(angle);
        let detail = point_distance_detail(1.0, a, b).unwrap().unwrap();
        let arc = detail.minimizing_arc();
        prop_assert!((arc.start_point() - a).norm() < 1e-12);
        prop_assert!((arc.end_point() - b).norm() < 1e-12);
        prop_assert!((arc_distance(1.0, arc) - point_distance(1.0, a, b).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn omega_area_is_antisymmetric_and_additive(
        cx in -1.0f64..1.0,
        cy in -1.0f64..1.0,
        w in 0.2f64..1.0,
        h in 0.2f64..1.0,
    ) {
        let g = Arc::new(exotic_density(&ExoticDensitySpec::single_wave(1.0, 0.5)).unwrap());
        let form = CircleSpaceForm::new(1.0, g).unwrap();
        let corner = Vec2::new(cx, cy);
        let rect = |x0: f64, x1: f64| OrientedCurve::closed(vec![
            corner + Vec2::new(x0, 0.0),
            corner + Vec2::new(x1, 0.0),
            corner + Vec2::new(x1, h),
            corner + Vec2::new(x0, h),
        ]);
        let whole = omega_area(&form, &rect(0.0, w)).unwrap();
        let left = omega_area(&form, &rect(0.0, 0.5 * w)).unwrap();
        let right = omega_area(&form, &rect(0.5 * w, w)).unwrap();
        prop_assert!((whole - left - right).abs() < 1e-12);
        prop_assert!((omega_area(&form, &rect(0.0, w).reversed()).unwrap() + whole).abs() < 1e-13);
    }
}

#[test]
fn omega_area_counts_winding() {
    let form = CircleSpaceForm::new(1.0, Arc::new(Constant(1.0))).unwrap();
    let once = Ellipse::circle(Vec2::zeros(), 0.5).sample(400);
    let mut twice = once.vertices.clone();
    twice.extend(once.vertices.iter().copied());
    let a1 = omega_area(&form, &once).unwrap();
    let a2 = omega_area(&form, &OrientedCurve::closed(twice)).unwrap();
    assert!((a2 - 2.0 * a1).abs() < 1e-12);
}
