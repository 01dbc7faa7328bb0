use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::quadrature::{self, max_abs, max_abs_diff, simpson_rule};
use super::source::{fourier_coeffs, SourceModel};
use super::trig1d::{check_in_interval, mu, trig_derivs};
use crate::error::{FsmError, Result};

/// Parity pair of a tensor mode: `cs` is `cos(α_m x1)·sin(β_n x2)` and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    CC = 0,
    CS = 1,
    SC = 2,
    SS = 3,
}

impl Parity {
    pub const ALL: [Parity; 4] = [Parity::CC, Parity::CS, Parity::SC, Parity::SS];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Whether this parity exists for mode indices `(m, n)`.
    pub fn active(self, m: usize, n: usize) -> bool {
        let sin1 = matches!(self, Parity::SC | Parity::SS);
        let sin2 = matches!(self, Parity::CS | Parity::SS);
        !(sin1 && m == 0) && !(sin2 && n == 0)
    }
}

/// Truncated double full-range Fourier series on `[-a, a] × [-b, b]`.
///
/// Stored flat in `(m, then n, then parity cc, cs, sc, ss)` order; the
/// weights `μ_m μ_n` are applied at evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Repr2D")]
pub struct TrigSeries2D {
    a: f64,
    b: f64,
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    coeffs: Vec<f64>,
}

#[derive(Deserialize)]
struct Repr2D {
    a: f64,
    b: f64,
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    coeffs: Vec<f64>,
}

impl TryFrom<Repr2D> for TrigSeries2D {
    type Error = FsmError;

    fn try_from(r: Repr2D) -> Result<Self> {
        TrigSeries2D::from_flat(r.a, r.b, r.m, r.n, r.coeffs)
    }
}

impl TrigSeries2D {
    pub fn zeros(a: f64, b: f64, m: usize, n: usize) -> Self {
        assert!(a > 0.0 && b > 0.0, "half-lengths must be positive");
        TrigSeries2D { a, b, m, n, coeffs: vec![0.0; (m + 1) * (n + 1) * 4] }
    }

    pub fn from_flat(a: f64, b: f64, m: usize, n: usize, coeffs: Vec<f64>) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(FsmError::config("half-lengths must be positive"));
        }
        if coeffs.len() != (m + 1) * (n + 1) * 4 {
            return Err(FsmError::config(format!(
                "expected {} coefficients for M = {m}, N = {n}, got {}",
                (m + 1) * (n + 1) * 4,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|v| !v.is_finite()) {
            return Err(FsmError::config("non-finite Fourier coefficient"));
        }
        let s = TrigSeries2D { a, b, m, n, coeffs };
        for i in 0..=m {
            for j in 0..=n {
                for p in Parity::ALL {
                    if !p.active(i, j) && s.get(i, j, p) != 0.0 {
                        return Err(FsmError::config(format!("inactive parity {p:?} set at mode ({i}, {j})")));
                    }
                }
            }
        }
        Ok(s)
    }

    #[inline]
    fn idx(&self, m: usize, n: usize, p: Parity) -> usize {
        (m * (self.n + 1) + n) * 4 + p.index()
    }

    pub fn half_lengths(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn modes(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn get(&self, m: usize, n: usize, p: Parity) -> f64 {
        self.coeffs[self.idx(m, n, p)]
    }

    /// Set a coefficient. Writes to parities that do not exist for `(m, n)` are ignored.
    pub fn set(&mut self, m: usize, n: usize, p: Parity, v: f64) {
        if p.active(m, n) {
            let i = self.idx(m, n, p);
            self.coeffs[i] = v;
        }
    }

    pub fn flat(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn max_abs_coeff(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|v| *v == 0.0)
    }

    /// Partial derivative `∂^{k1+k2} / ∂x1^{k1} ∂x2^{k2}` at `(x1, x2)`, `k1 + k2 ≤ 2`.
    pub fn eval(&self, x1: f64, x2: f64, k1: usize, k2: usize) -> Result<f64> {
        if k1 + k2 > 2 {
            return Err(FsmError::DerivativeOrder(k1 + k2));
        }
        check_in_interval(x1, self.a)?;
        check_in_interval(x2, self.b)?;
        Ok(self.eval_unchecked(x1, x2, k1, k2))
    }

    pub(crate) fn eval_unchecked(&self, x1: f64, x2: f64, k1: usize, k2: usize) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let t1: Vec<(f64, f64)> = (0..=self.m).map(|i| trig_derivs(i as f64 * PI / self.a, x1, k1)).collect();
        let t2: Vec<(f64, f64)> = (0..=self.n).map(|j| trig_derivs(j as f64 * PI / self.b, x2, k2)).collect();
        let mut sum = 0.0;
        for (i, &(c1, s1)) in t1.iter().enumerate() {
            let row = &self.coeffs[i * (self.n + 1) * 4..(i + 1) * (self.n + 1) * 4];
            let mut acc = 0.0;
            for (j, &(c2, s2)) in t2.iter().enumerate() {
                let q = &row[j * 4..j * 4 + 4];
                acc += mu(j) * (q[0] * c1 * c2 + q[1] * c1 * s2 + q[2] * s1 * c2 + q[3] * s1 * s2);
            }
            sum += mu(i) * acc;
        }
        sum
    }
}

/// Pointwise callback for [`SourceModel2D::Sampled`].
#[derive(Clone)]
pub struct SampledFn2D(pub Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>);

impl fmt::Debug for SampledFn2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SampledFn2D(..)")
    }
}

/// Source term of the 2D problem on `[-a, a] × [-b, b]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SourceModel2D {
    Zero,
    Constant { value: f64 },
    /// `g(x1)·h(x2)`; polynomial factors are written in `x1/a` and `x2/b`.
    Separable { x1: SourceModel, x2: SourceModel },
    #[serde(skip)]
    Sampled(SampledFn2D),
}

impl SourceModel2D {
    pub fn sampled(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        SourceModel2D::Sampled(SampledFn2D(Arc::new(f)))
    }

    pub fn value(&self, x1: f64, x2: f64, a: f64, b: f64) -> Result<f64> {
        Ok(match self {
            SourceModel2D::Zero => 0.0,
            SourceModel2D::Constant { value } => *value,
            SourceModel2D::Separable { x1: g, x2: h } => g.value(x1, a)? * h.value(x2, b)?,
            SourceModel2D::Sampled(f) => (f.0)(x1, x2),
        })
    }
}

fn sampled_coeffs_2d(f: &SampledFn2D, a: f64, b: f64, m: usize, n: usize, panels1: usize, panels2: usize) -> Vec<f64> {
    let (xs1, ws1) = simpson_rule(a, panels1);
    let (xs2, ws2) = simpson_rule(b, panels2);
    // inner integrals over x2 for every x1 node: (cos_n, sin_n) per node
    let mut out = vec![0.0; (m + 1) * (n + 1) * 4];
    for (&x1, &w1) in xs1.iter().zip(&ws1) {
        let vals: Vec<f64> = xs2.iter().map(|&x2| (f.0)(x1, x2)).collect();
        let (c2, s2) = quadrature::coeffs_from_samples(b, n, &xs2, &ws2, &vals);
        for i in 0..=m {
            let (s1, c1) = (i as f64 * PI * x1 / a).sin_cos();
            let wc = w1 * c1 / a;
            let ws = w1 * s1 / a;
            for j in 0..=n {
                let base = (i * (n + 1) + j) * 4;
                let cj = c2[j];
                let sj = if j == 0 { 0.0 } else { s2[j - 1] };
                out[base] += wc * cj;
                out[base + 1] += wc * sj;
                if i > 0 {
                    out[base + 2] += ws * cj;
                    out[base + 3] += ws * sj;
                }
            }
        }
    }
    out
}

/// Fourier coefficients of a 2D source, tensor analogue of [`fourier_coeffs`].
pub fn fourier_coeffs_2d(f: &SourceModel2D, a: f64, b: f64, m: usize, n: usize) -> Result<TrigSeries2D> {
    let mut s = TrigSeries2D::zeros(a, b, m, n);
    match f {
        SourceModel2D::Zero => {}
        SourceModel2D::Constant { value } => s.set(0, 0, Parity::CC, 4.0 * value),
        SourceModel2D::Separable { x1, x2 } => {
            let g = fourier_coeffs(x1, a, m)?;
            let h = fourier_coeffs(x2, b, n)?;
            for i in 0..=m {
                for j in 0..=n {
                    s.set(i, j, Parity::CC, g.cos_coeff(i) * h.cos_coeff(j));
                    s.set(i, j, Parity::CS, g.cos_coeff(i) * h.sin_coeff(j));
                    s.set(i, j, Parity::SC, g.sin_coeff(i) * h.cos_coeff(j));
                    s.set(i, j, Parity::SS, g.sin_coeff(i) * h.sin_coeff(j));
                }
            }
        }
        SourceModel2D::Sampled(fun) => {
            let mut p1 = quadrature::SIMPSON_PANELS_PER_MODE * (m + 1);
            let mut p2 = quadrature::SIMPSON_PANELS_PER_MODE * (n + 1);
            let mut prev = sampled_coeffs_2d(fun, a, b, m, n, p1, p2);
            let mut estimate = f64::INFINITY;
            let mut done = false;
            for _ in 0..quadrature::MAX_DOUBLINGS {
                p1 *= 2;
                p2 *= 2;
                let next = sampled_coeffs_2d(fun, a, b, m, n, p1, p2);
                estimate = max_abs_diff(&prev, &next);
                let scale = max_abs(&next);
                prev = next;
                if estimate <= quadrature::REL_TOL * scale || estimate == 0.0 {
                    done = true;
                    break;
                }
            }
            if !done {
                return Err(FsmError::QuadratureNonConvergence { estimate });
            }
            s.coeffs = prev;
        }
    }
    Ok(s)
}
