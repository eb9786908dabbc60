use std::f64::consts::PI;

use super::bisect;

// Beyond this the alternating series loses more than ~4 digits to cancellation.
const SERIES_LIMIT: f64 = 12.0;

/// Bessel function of the first kind `J_n(w)` for integer order `n >= 0`.
///
/// Small arguments use the power series
/// `J_n(w) = Σ_j (-1)^j (w/2)^(n+2j) / ((n+j)! j!)`, truncated once a term drops
/// below `1e-16 (1 + |partial sum|)`. Arguments with `|w| > 12` switch to the
/// trapezoidal rule on Bessel's integral, which converges geometrically for a
/// periodic integrand and does not suffer the series cancellation.
pub fn bessel_j(n: u32, w: f64) -> f64 {
    if w.abs() <= SERIES_LIMIT {
        bessel_j_series(n, w)
    } else {
        bessel_j_integral(n, w)
    }
}

fn bessel_j_series(n: u32, w: f64) -> f64 {
    let half = 0.5 * w;
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let q = -half * half;
    let mut sum = term;
    let mut j = 0u32;
    loop {
        j += 1;
        term *= q / (j as f64 * (n + j) as f64);
        sum += term;
        if term.abs() < 1e-16 * (1.0 + sum.abs()) {
            break;
        }
    }
    sum
}

/// `J_n(w) = (1/2π) ∫_0^{2π} cos(nτ - w sin τ) dτ`, by the periodic trapezoidal rule.
pub fn bessel_j_integral(n: u32, w: f64) -> f64 {
    let m = 2 * ((w.abs() as usize) + n as usize) + 64;
    let step = 2.0 * PI / m as f64;
    let nf = n as f64;
    let sum: f64 = (0..m)
        .map(|k| {
            let tau = k as f64 * step;
            (nf * tau - w * tau.sin()).cos()
        })
        .sum();
    sum / m as f64
}

/// First `k` positive zeros of `J_1`, in increasing order.
///
/// Zeros are isolated by a sign scan with step 0.5 and polished by bisection.
pub fn bessel_j1_roots(k: usize) -> Vec<f64> {
    let j1 = |w: f64| bessel_j(1, w);
    let mut roots = Vec::with_capacity(k);
    let mut lo = 0.5;
    let mut f_lo = j1(lo);
    while roots.len() < k {
        let hi = lo + 0.5;
        let f_hi = j1(hi);
        if f_lo == 0.0 {
            roots.push(lo);
        } else if f_lo.signum() != f_hi.signum() {
            let r = bisect(j1, lo, hi, 4.0 * f64::EPSILON * hi).expect("bracket has a sign change");
            roots.push(r);
        }
        lo = hi;
        f_lo = f_hi;
    }
    roots
}
