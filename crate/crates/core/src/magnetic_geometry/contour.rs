//! Marching squares with bisection refinement along grid edges.

use std::collections::HashMap;

use crate::curves::OrientedCurve;
use crate::geom::Vec2;
use crate::numerics::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeKey {
    /// `(i, j)`–`(i + 1, j)`.
    H(usize, usize),
    /// `(i, j)`–`(i, j + 1)`.
    V(usize, usize),
}

/// Closed components of `{f = 0}` inside `[lo, hi]`, counterclockwise
/// (the region `f < 0` on the left), longest first. Non-finite values of `f`
/// count as outside.
pub fn extract_level_sets<F>(f: F, lo: Vec2, hi: Vec2, nx: usize, ny: usize, tol: f64) -> Vec<OrientedCurve>
where
    F: Fn(Vec2) -> f64,
{
    let eval = |p: Vec2| {
        let v = f(p);
        if v.is_finite() {
            v
        } else {
            f64::MAX
        }
    };
    let node = |i: usize, j: usize| {
        Vec2::new(
            lo.x + (hi.x - lo.x) * i as f64 / nx as f64,
            lo.y + (hi.y - lo.y) * j as f64 / ny as f64,
        )
    };
    let values: Vec<f64> = (0..=ny).flat_map(|j| (0..=nx).map(move |i| (i, j))).map(|(i, j)| eval(node(i, j))).collect();
    let val = |i: usize, j: usize| values[j * (nx + 1) + i];
    let inside = |i: usize, j: usize| val(i, j) < 0.0;

    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let case = (inside(i, j) as u8)
                | (inside(i + 1, j) as u8) << 1
                | (inside(i + 1, j + 1) as u8) << 2
                | (inside(i, j + 1) as u8) << 3;
            let (bottom, right, top, left) = (EdgeKey::H(i, j), EdgeKey::V(i + 1, j), EdgeKey::H(i, j + 1), EdgeKey::V(i, j));
            let center_inside = || eval(0.5 * (node(i, j) + node(i + 1, j + 1))) < 0.0;
            // Listed with the inside on the right; stored reversed.
            let cell: &[(EdgeKey, EdgeKey)] = match case {
                0 | 15 => &[],
                1 => &[(left, bottom)],
                2 => &[(bottom, right)],
                3 => &[(left, right)],
                4 => &[(right, top)],
                5 => {
                    if center_inside() {
                        &[(left, top), (right, bottom)]
                    } else {
                        &[(left, bottom), (right, top)]
                    }
                }
                6 => &[(bottom, top)],
                7 => &[(left, top)],
                8 => &[(top, left)],
                9 => &[(top, bottom)],
                10 => {
                    if center_inside() {
                        &[(bottom, left), (top, right)]
                    } else {
                        &[(bottom, right), (top, left)]
                    }
                }
                11 => &[(top, right)],
                12 => &[(right, left)],
                13 => &[(right, bottom)],
                14 => &[(bottom, left)],
                _ => unreachable!(),
            };
            segments.extend(cell.iter().map(|&(a, b)| (b, a)));
        }
    }

    let mut crossings: HashMap<EdgeKey, Vec2> = HashMap::new();
    let mut crossing = |key: EdgeKey| {
        *crossings.entry(key).or_insert_with(|| {
            let (a, b) = match key {
                EdgeKey::H(i, j) => (node(i, j), node(i + 1, j)),
                EdgeKey::V(i, j) => (node(i, j), node(i, j + 1)),
            };
            let g = |u: f64| eval(a + u * (b - a));
            let u = bisect(g, 0.0, 1.0, tol / (b - a).norm()).unwrap_or(0.5);
            a + u * (b - a)
        })
    };

    let mut next: HashMap<EdgeKey, EdgeKey> = segments.iter().copied().collect();
    let mut loops = Vec::new();
    while let Some((&start, _)) = next.iter().next() {
        let mut keys = vec![start];
        let mut cur = start;
        let mut closed = false;
        while let Some(n) = next.remove(&cur) {
            if n == start {
                closed = true;
                break;
            }
            keys.push(n);
            cur = n;
        }
        if closed && keys.len() >= 3 {
            let curve = OrientedCurve::closed(keys.into_iter().map(&mut crossing).collect());
            loops.push(curve);
        }
    }
    loops.sort_by(|a, b| b.length().total_cmp(&a.length()));
    loops
}
