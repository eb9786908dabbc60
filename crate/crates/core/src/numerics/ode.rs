use crate::error::Result;

/// Samples of a fixed-step integration; `states[i]` is the state at `s[i]`.
#[derive(Debug, Clone)]
pub struct OdeSolution<const N: usize> {
    pub s: Vec<f64>,
    pub states: Vec<[f64; N]>,
    pub step: f64,
}

impl<const N: usize> OdeSolution<N> {
    pub fn last(&self) -> (f64, [f64; N]) {
        let i = self.s.len() - 1;
        (self.s[i], self.states[i])
    }
}

#[inline]
fn axpy<const N: usize>(y: &[f64; N], h: f64, k: &[f64; N]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += h * k[i];
    }
    out
}

/// One classical Runge–Kutta step of size `h` from `(s, y)`.
pub fn rk4_step<const N: usize, F>(f: &mut F, s: f64, y: &[f64; N], h: f64) -> Result<[f64; N]>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let k1 = f(s, y)?;
    let k2 = f(s + 0.5 * h, &axpy(y, 0.5 * h, &k1))?;
    let k3 = f(s + 0.5 * h, &axpy(y, 0.5 * h, &k2))?;
    let k4 = f(s + h, &axpy(y, h, &k3))?;
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(out)
}

/// Fixed-step RK4 from `s = 0` to `s_max`, sampled after every step.
///
/// The step count is `ceil(s_max / h)`; the last step is shortened so that the
/// final sample lands exactly on `s_max`.
pub fn ode_rk4<const N: usize, F>(mut f: F, y0: [f64; N], s_max: f64, h: f64) -> Result<OdeSolution<N>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    assert!(h > 0.0, "step must be positive");
    let steps = ((s_max / h) - 1e-9).ceil().max(0.0) as usize;
    let mut s_vals = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    s_vals.push(0.0);
    states.push(y0);
    let mut y = y0;
    for i in 0..steps {
        let s = i as f64 * h;
        let dh = if i + 1 == steps { s_max - s } else { h };
        y = rk4_step(&mut f, s, &y, dh)?;
        s_vals.push(if i + 1 == steps { s_max } else { (i + 1) as f64 * h });
        states.push(y);
    }
    Ok(OdeSolution {
        s: s_vals,
        states,
        step: h,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::TAU;

    use super::*;
    use crate::error::Error;

    #[test]
    fn constant_derivative_is_exact() {
        let sol = ode_rk4(|_, _: &[f64; 1]| Ok([1.0]), [0.0], 1.0, 0.125).unwrap();
        assert_eq!(sol.last().1[0], 1.0);
        assert_eq!(sol.s.len(), 9);
    }

    fn rotation(_: f64, y: &[f64; 2]) -> Result<[f64; 2]> {
        Ok([-y[1], y[0]])
    }

    fn rotation_error(h: f64) -> f64 {
        let sol = ode_rk4(rotation, [1.0, 0.0], TAU, h).unwrap();
        let (_, y) = sol.last();
        ((y[0] - 1.0).powi(2) + y[1].powi(2)).sqrt()
    }

    #[test]
    fn rotation_returns_to_start() {
        let h = TAU / 200.0;
        assert!(rotation_error(h) < 10.0 * h.powi(4));
    }

    #[test]
    fn halving_the_step_gains_at_least_order_three() {
        let e1 = rotation_error(TAU / 100.0);
        let e2 = rotation_error(TAU / 200.0);
        assert!(e1 / e2 >= 8.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn oscillator_energy_drift() {
        let sol = ode_rk4(|_, y: &[f64; 2]| Ok([y[1], -y[0]]), [1.0, 0.0], 10.0, 1e-3).unwrap();
        let worst = sol
            .states
            .iter()
            .map(|y| (0.5 * (y[0] * y[0] + y[1] * y[1]) - 0.5).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-8, "{worst}");
    }

    #[test]
    fn derivative_failure_propagates() {
        let res = ode_rk4(
            |s, _: &[f64; 1]| if s > 0.5 { Err(Error::Invalid("boom".into())) } else { Ok([1.0]) },
            [0.0],
            1.0,
            0.1,
        );
        assert!(res.is_err());
    }
}
