//! Composite Simpson quadrature of Fourier coefficients.

use std::f64::consts::PI;

use crate::error::{FsmError, Result};

pub const SIMPSON_PANELS_PER_MODE: usize = 16;
pub const MAX_DOUBLINGS: usize = 6;
pub const REL_TOL: f64 = 1e-10;

/// Nodes and weights of composite Simpson with `panels` panels (two
/// sub-intervals each) on `[-a, a]`.
pub fn simpson_rule(a: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let n = 2 * panels.max(1);
    let h = 2.0 * a / n as f64;
    let xs: Vec<f64> = (0..=n).map(|i| -a + i as f64 * h).collect();
    let ws: Vec<f64> = (0..=n)
        .map(|i| {
            let c = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0
        })
        .collect();
    (xs, ws)
}

/// Unweighted Fourier coefficients `(V1_0..=V1_M, V2_1..=V2_M)` of the sampled
/// values `vals` on the rule `(xs, ws)`.
pub fn coeffs_from_samples(a: f64, m: usize, xs: &[f64], ws: &[f64], vals: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut cos = vec![0.0; m + 1];
    let mut sin = vec![0.0; m];
    for ((&x, &w), &v) in xs.iter().zip(ws).zip(vals) {
        let wv = w * v / a;
        if wv == 0.0 {
            continue;
        }
        cos[0] += wv;
        for k in 1..=m {
            let (s, c) = (k as f64 * PI * x / a).sin_cos();
            cos[k] += wv * c;
            sin[k - 1] += wv * s;
        }
    }
    (cos, sin)
}

/// Fixed-panel Simpson coefficients of `f`.
pub fn simpson_coeffs(f: &dyn Fn(f64) -> f64, a: f64, m: usize, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = simpson_rule(a, panels);
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    coeffs_from_samples(a, m, &xs, &ws, &vals)
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

pub(crate) fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Adaptive Simpson coefficients: start from `16·(M+1)` panels and double
/// until two successive estimates differ by less than `1e-10` relative to
/// the largest coefficient, up to six doublings.
pub fn adaptive_coeffs(f: &dyn Fn(f64) -> f64, a: f64, m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut panels = SIMPSON_PANELS_PER_MODE * (m + 1);
    let mut prev = simpson_coeffs(f, a, m, panels);
    let mut estimate = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        panels *= 2;
        let next = simpson_coeffs(f, a, m, panels);
        let diff = max_abs_diff(&prev.0, &next.0).max(max_abs_diff(&prev.1, &next.1));
        let scale = max_abs(&next.0).max(max_abs(&next.1));
        estimate = diff;
        if diff <= REL_TOL * scale || diff == 0.0 {
            return Ok(next);
        }
        prev = next;
    }
    Err(FsmError::QuadratureNonConvergence { estimate })
}
