use std::cmp::Ordering;
use std::collections::BinaryHeap;

use gauss_quad::GaussLegendre;

use super::Tolerances;
use crate::error::{Error, Result};

/// Subdivision budget of the adaptive integrator.
pub const MAX_SUBDIVISIONS: usize = 4000;

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    abs: [f64; N],
    err: f64,
}

impl<const N: usize> PartialEq for Panel<N> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<const N: usize> Eq for Panel<N> {}
impl<const N: usize> PartialOrd for Panel<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Panel<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn kronrod<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Panel<N>
where
    F: FnMut(f64) -> [f64; N],
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = [0.0; N];
    let mut g = [0.0; N];
    let mut abs = [0.0; N];

    let fc = f(c);
    for i in 0..N {
        k[i] = WGK[7] * fc[i];
        g[i] = WG[3] * fc[i];
        abs[i] = WGK[7] * fc[i].abs();
    }
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        for i in 0..N {
            let s = f1[i] + f2[i];
            k[i] += WGK[j] * s;
            abs[i] += WGK[j] * (f1[i].abs() + f2[i].abs());
            if j % 2 == 1 {
                g[i] += WG[j / 2] * s;
            }
        }
    }
    let mut err = 0.0_f64;
    for i in 0..N {
        k[i] *= h;
        abs[i] *= h.abs();
        err = err.max((k[i] - g[i] * h).abs());
    }
    Panel {
        a,
        b,
        value: k,
        abs,
        err,
    }
}

/// Adaptive Gauss–Kronrod (7/15) integration of a vector-valued integrand.
///
/// Panels are bisected in order of decreasing error estimate until the summed
/// estimate drops below `quad_rel * max(|I|, ∫|f|)` over the components, or
/// below `quad_abs`.
pub fn quad_vec<const N: usize, F>(mut f: F, a: f64, b: f64, tol: &Tolerances) -> Result<[f64; N]>
where
    F: FnMut(f64) -> [f64; N],
{
    if a == b {
        return Ok([0.0; N]);
    }
    if b < a {
        let mut v = quad_vec(f, b, a, tol)?;
        v.iter_mut().for_each(|x| *x = -*x);
        return Ok(v);
    }

    let first = kronrod(&mut f, a, b);
    let mut total = first.value;
    let mut total_abs = first.abs;
    let mut total_err = first.err;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    let target = |total: &[f64; N], total_abs: &[f64; N]| {
        let scale = total
            .iter()
            .zip(total_abs)
            .fold(0.0_f64, |m, (v, s)| m.max(v.abs()).max(*s));
        (tol.quad_rel * scale).max(tol.quad_abs)
    };

    let mut subdivisions = 0;
    loop {
        if !(total_err.is_finite() && total.iter().all(|v| v.is_finite())) {
            return Err(Error::QuadratureDiverged {
                a,
                b,
                subdivisions,
                estimate: total_err,
            });
        }
        if total_err <= target(&total, &total_abs) {
            break;
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if subdivisions >= MAX_SUBDIVISIONS || mid <= worst.a || mid >= worst.b {
            return Err(Error::QuadratureDiverged {
                a,
                b,
                subdivisions,
                estimate: total_err,
            });
        }
        let left = kronrod(&mut f, worst.a, mid);
        let right = kronrod(&mut f, mid, worst.b);
        for i in 0..N {
            total[i] += left.value[i] + right.value[i] - worst.value[i];
            total_abs[i] += left.abs[i] + right.abs[i] - worst.abs[i];
        }
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;

        // the running sums drift; resum once the loop is about to exit
        if total_err <= target(&total, &total_abs) {
            total = [0.0; N];
            total_abs = [0.0; N];
            total_err = 0.0;
            for p in heap.iter() {
                for i in 0..N {
                    total[i] += p.value[i];
                    total_abs[i] += p.abs[i];
                }
                total_err += p.err;
            }
        }
    }
    Ok(total)
}

/// [`quad_vec`] for an integrand that can fail; the first failure is returned.
pub fn quad_try<const N: usize, F>(mut f: F, a: f64, b: f64, tol: &Tolerances) -> Result<[f64; N]>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let mut failure = None;
    let out = quad_vec(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                [f64::NAN; N]
            }
        },
        a,
        b,
        tol,
    );
    match failure {
        Some(e) => Err(e),
        None => out,
    }
}

/// Adaptive integral of a scalar function over `[a, b]`.
pub fn quad_1d<F>(mut f: F, a: f64, b: f64, tol: &Tolerances) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    quad_vec(|x| [f(x)], a, b, tol).map(|v| v[0])
}

/// A fixed Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pairs: Vec<(f64, f64)>,
}

impl GaussRule {
    pub fn new(degree: usize) -> Self {
        let rule = GaussLegendre::new(degree.max(2)).expect("degree >= 2");
        Self {
            pairs: rule.as_node_weight_pairs().to_vec(),
        }
    }

    pub fn degree(&self) -> usize {
        self.pairs.len()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.pairs.iter().map(move |&(x, w)| (c + h * x, h * w))
    }

    /// Composite rule: `panels` equal panels of this rule over `[a, b]`.
    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64, panels: usize) -> f64
    where
        F: FnMut(f64) -> f64,
    {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let lo = a + k as f64 * width;
                self.mapped(lo, lo + width).map(|(x, w)| w * f(x)).sum::<f64>()
            })
            .sum()
    }
}

/// Composite Gauss–Legendre quadrature with `panels` panels of `degree` nodes.
pub fn gauss_legendre<F>(f: F, a: f64, b: f64, degree: usize, panels: usize) -> f64
where
    F: FnMut(f64) -> f64,
{
    GaussRule::new(degree).integrate(f, a, b, panels)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{PI, TAU};

    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn sine_over_half_period() {
        let v = quad_1d(f64::sin, 0.0, PI, &tol()).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn cosine_over_full_period_vanishes() {
        let v = quad_1d(f64::cos, 0.0, TAU, &tol()).unwrap();
        assert!(v.abs() < 1e-12, "{v}");
    }

    #[test]
    fn absolute_cosine_over_full_period() {
        // kinks at pi/2 and 3pi/2 force real subdivision work
        let v = quad_1d(|x: f64| x.cos().abs(), 0.0, TAU, &tol()).unwrap();
        assert!((v - 4.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn reversed_and_empty_intervals() {
        let fwd = quad_1d(f64::exp, 0.0, 1.0, &tol()).unwrap();
        let back = quad_1d(f64::exp, 1.0, 0.0, &tol()).unwrap();
        assert_eq!(fwd, -back);
        assert_eq!(quad_1d(f64::exp, 0.3, 0.3, &tol()).unwrap(), 0.0);
    }

    #[test]
    fn pathological_integrand_reports_divergence() {
        let err = quad_1d(|x: f64| 1.0 / x, -1.0, 1.0, &tol()).unwrap_err();
        assert!(matches!(err, Error::QuadratureDiverged { .. }));
        let err = quad_1d(|x: f64| 1.0 / (x - 0.1).abs().sqrt(), -1.0, 1.3, &tol()).unwrap_err();
        assert!(matches!(err, Error::QuadratureDiverged { .. }));
    }

    #[test]
    fn vector_components_are_independent() {
        let v = quad_vec(|x: f64| [x, x * x, x.sin()], 0.0, 1.0, &tol()).unwrap();
        assert!((v[0] - 0.5).abs() < 1e-14);
        assert!((v[1] - 1.0 / 3.0).abs() < 1e-14);
        assert!((v[2] - (1.0 - 1.0_f64.cos())).abs() < 1e-14);
    }

    #[test]
    fn gauss_rule_is_exact_for_polynomials() {
        let v = gauss_legendre(|x| x.powi(9) + 3.0 * x * x, -1.0, 2.0, 5, 1);
        let exact = (2f64.powi(10) - 1.0) / 10.0 + (8.0 + 1.0);
        assert!((v - exact).abs() < 1e-12);
    }

    mod props {
        use proptest::prelude::*;

        use super::*;

        proptest! {
            #[test]
            fn additive_over_adjacent_intervals(a in -3.0f64..0.0, b in 0.0f64..2.0, c in 2.0f64..5.0, k in 0.5f64..4.0) {
                let f = |x: f64| (k * x).sin() * (-0.1 * x * x).exp() + 1.0 / (1.0 + x * x);
                let ab = quad_1d(f, a, b, &tol()).unwrap();
                let bc = quad_1d(f, b, c, &tol()).unwrap();
                let ac = quad_1d(f, a, c, &tol()).unwrap();
                prop_assert!((ab + bc - ac).abs() < 1e-10);
            }
        }
    }
}
