use serde::{Deserialize, Serialize};

use crate::error::{FsmError, Result};

/// Weight applied to mode `m` at evaluation time: 1/2 for the mean mode, 1 otherwise.
#[inline]
pub fn mu(m: usize) -> f64 {
    if m == 0 {
        0.5
    } else {
        1.0
    }
}

/// `d^k/dx^k cos(w x)` and `d^k/dx^k sin(w x)` for `k <= 2`.
#[inline]
pub(crate) fn trig_derivs(w: f64, x: f64, k: usize) -> (f64, f64) {
    let (s, c) = (w * x).sin_cos();
    match k {
        0 => (c, s),
        1 => (-w * s, w * c),
        _ => (-w * w * c, -w * w * s),
    }
}

pub(crate) fn check_in_interval(x: f64, a: f64) -> Result<()> {
    let tol = 1e-12 * a;
    if x.is_nan() || x < -a - tol || x > a + tol {
        return Err(FsmError::Domain { x, lo: -a, hi: a });
    }
    Ok(())
}

/// Truncated full-range Fourier series on `[-a, a]`:
///
/// `f(x) = Σ_{m=0}^{M} μ_m [V1_m cos(α_m x) + V2_m sin(α_m x)]`, with `α_m = mπ/a`.
///
/// Coefficients are stored unweighted; `μ_m` is applied only in [`TrigSeries1D::eval`].
/// `sin` holds `V2_1 ..= V2_M` (there is no sine mean mode).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Repr1D")]
pub struct TrigSeries1D {
    a: f64,
    #[serde(rename = "M")]
    m: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

#[derive(Deserialize)]
struct Repr1D {
    a: f64,
    #[serde(rename = "M")]
    m: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TryFrom<Repr1D> for TrigSeries1D {
    type Error = FsmError;

    fn try_from(r: Repr1D) -> Result<Self> {
        let s = TrigSeries1D::from_parts(r.a, r.cos, r.sin)?;
        if s.m != r.m {
            return Err(FsmError::config(format!("declared M = {} but {} cosine terms given", r.m, s.m + 1)));
        }
        Ok(s)
    }
}

impl TrigSeries1D {
    pub fn zeros(a: f64, m: usize) -> Self {
        assert!(a > 0.0, "half-length must be positive");
        TrigSeries1D { a, m, cos: vec![0.0; m + 1], sin: vec![0.0; m] }
    }

    /// Build from coefficient vectors: `cos` has length `M+1`, `sin` has length `M`.
    pub fn from_parts(a: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(FsmError::config(format!("half-length must be positive, got {a}")));
        }
        if cos.is_empty() || sin.len() + 1 != cos.len() {
            return Err(FsmError::config(format!(
                "coefficient lengths mismatch: {} cosine and {} sine terms",
                cos.len(),
                sin.len()
            )));
        }
        if cos.iter().chain(sin.iter()).any(|v| !v.is_finite()) {
            return Err(FsmError::config("non-finite Fourier coefficient"));
        }
        Ok(TrigSeries1D { a, m: cos.len() - 1, cos, sin })
    }

    pub fn half_length(&self) -> f64 {
        self.a
    }

    pub fn modes(&self) -> usize {
        self.m
    }

    pub fn wavenumber(&self, m: usize) -> f64 {
        m as f64 * std::f64::consts::PI / self.a
    }

    /// `V1_m`.
    pub fn cos_coeff(&self, m: usize) -> f64 {
        self.cos[m]
    }

    /// `V2_m`; zero for `m = 0`.
    pub fn sin_coeff(&self, m: usize) -> f64 {
        if m == 0 {
            0.0
        } else {
            self.sin[m - 1]
        }
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    pub fn set_cos(&mut self, m: usize, v: f64) {
        self.cos[m] = v;
    }

    pub fn set_sin(&mut self, m: usize, v: f64) {
        assert!(m >= 1, "there is no sine mean mode");
        self.sin[m - 1] = v;
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.cos.iter().chain(self.sin.iter()).fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs_coeff() == 0.0
    }

    /// Value of the `k`-th derivative at `x ∈ [-a, a]`, `k ≤ 2`.
    pub fn eval(&self, x: f64, k: usize) -> Result<f64> {
        if k > 2 {
            return Err(FsmError::DerivativeOrder(k));
        }
        check_in_interval(x, self.a)?;
        Ok(self.eval_unchecked(x, k))
    }

    pub(crate) fn eval_unchecked(&self, x: f64, k: usize) -> f64 {
        let mut sum = if k == 0 { 0.5 * self.cos[0] } else { 0.0 };
        for m in 1..=self.m {
            let (dc, ds) = trig_derivs(self.wavenumber(m), x, k);
            sum += self.cos[m] * dc + self.sin[m - 1] * ds;
        }
        sum
    }

    /// Returns the series `self + scale * other` (same interval and truncation).
    pub fn add_scaled(&self, other: &TrigSeries1D, scale: f64) -> TrigSeries1D {
        assert_eq!(self.m, other.m);
        assert!((self.a - other.a).abs() <= 1e-15 * self.a);
        TrigSeries1D {
            a: self.a,
            m: self.m,
            cos: self.cos.iter().zip(&other.cos).map(|(x, y)| x + scale * y).collect(),
            sin: self.sin.iter().zip(&other.sin).map(|(x, y)| x + scale * y).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn single(a: f64, m: usize, cos: Option<usize>, sin: Option<usize>) -> TrigSeries1D {
        let mut s = TrigSeries1D::zeros(a, m);
        if let Some(i) = cos {
            s.set_cos(i, if i == 0 { 2.0 } else { 1.0 });
        }
        if let Some(i) = sin {
            s.set_sin(i, 1.0);
        }
        s
    }

    #[test]
    fn mean_mode_is_halved() {
        let s = single(1.0, 3, Some(0), None);
        assert_eq!(s.eval(0.3, 0).unwrap(), 1.0);
    }

    #[test]
    fn cosine_derivative_vanishes_at_origin() {
        let s = single(PI, 2, Some(1), None);
        assert_eq!(s.eval(0.0, 1).unwrap(), 0.0);
    }

    #[test]
    fn sine_derivatives_at_origin() {
        let s = single(PI, 2, None, Some(1));
        assert!(s.eval(0.0, 2).unwrap().abs() < 1e-15);
        assert!((s.eval(0.0, 1).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn domain_and_order_errors() {
        let s = TrigSeries1D::zeros(1.0, 2);
        assert!(matches!(s.eval(1.5, 0), Err(FsmError::Domain { .. })));
        assert!(matches!(s.eval(0.0, 3), Err(FsmError::DerivativeOrder(3))));
        // tolerance band of 1e-12·a at the endpoints
        assert!(s.eval(1.0 + 1e-13, 0).is_ok());
    }

    #[test]
    fn from_parts_validates_lengths() {
        assert!(TrigSeries1D::from_parts(1.0, vec![1.0, 2.0], vec![]).is_err());
        assert!(TrigSeries1D::from_parts(-1.0, vec![1.0], vec![]).is_err());
        assert!(TrigSeries1D::from_parts(1.0, vec![f64::NAN], vec![]).is_err());
        assert!(TrigSeries1D::from_parts(1.0, vec![1.0, 2.0], vec![3.0]).is_ok());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let s = TrigSeries1D::from_parts(0.7, vec![0.1, 1.0 / 3.0, -2e-300], vec![PI, 1e17 + 1.0]).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        assert!(js.contains("\"M\":2"));
        let back: TrigSeries1D = serde_json::from_str(&js).unwrap();
        assert_eq!(s, back);
    }
}
