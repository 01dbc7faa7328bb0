use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quadrature;
use super::trig1d::TrigSeries1D;
use crate::error::{FsmError, Result};

pub const MAX_POLY_DEGREE: usize = 64;

/// Pointwise callback used by [`SourceModel::Sampled`].
#[derive(Clone)]
pub struct SampledFn(pub Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl SampledFn {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        SampledFn(Arc::new(f))
    }
}

impl fmt::Debug for SampledFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SampledFn(..)")
    }
}

/// Source term `f(x)` of the 1D problem, expressed in a centred frame `[-a, a]`.
///
/// Polynomial coefficients multiply `(x/a)^j`, so they are only meaningful
/// together with the half-length of the frame they were written for.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SourceModel {
    Polynomial { coeffs: Vec<f64> },
    DiracDelta { position: f64, strength: f64 },
    /// Rectangular pulse of height `area / (2 half_width)`.
    RectPulse { center: f64, half_width: f64, area: f64 },
    #[serde(skip)]
    Sampled(SampledFn),
}

impl SourceModel {
    pub fn constant(c: f64) -> Self {
        SourceModel::Polynomial { coeffs: vec![c] }
    }

    pub fn zero() -> Self {
        SourceModel::Polynomial { coeffs: vec![] }
    }

    pub fn sampled(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        SourceModel::Sampled(SampledFn::new(f))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            SourceModel::Polynomial { coeffs } => coeffs.iter().all(|c| *c == 0.0),
            SourceModel::DiracDelta { strength, .. } => *strength == 0.0,
            SourceModel::RectPulse { area, .. } => *area == 0.0,
            SourceModel::Sampled(_) => false,
        }
    }

    pub fn is_pointwise(&self) -> bool {
        !matches!(self, SourceModel::DiracDelta { .. })
    }

    /// Check the admissibility invariants on the frame `[-a, a]`.
    pub fn validate(&self, a: f64) -> Result<()> {
        match self {
            SourceModel::Polynomial { coeffs } => {
                if coeffs.len() > MAX_POLY_DEGREE + 1 {
                    return Err(FsmError::InvalidSource(format!(
                        "polynomial degree {} exceeds {MAX_POLY_DEGREE}",
                        coeffs.len() - 1
                    )));
                }
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(FsmError::InvalidSource("non-finite polynomial coefficient".into()));
                }
            }
            SourceModel::DiracDelta { position, strength } => {
                if !(position.abs() < a) || !strength.is_finite() {
                    return Err(FsmError::InvalidSource(format!(
                        "delta position {position} must lie strictly inside (-{a}, {a})"
                    )));
                }
            }
            SourceModel::RectPulse { center, half_width, area } => {
                let tol = 1e-12 * a;
                if !(*half_width > 0.0) || !area.is_finite() {
                    return Err(FsmError::InvalidSource("pulse needs a positive half-width and finite area".into()));
                }
                if center - half_width < -a - tol || center + half_width > a + tol {
                    return Err(FsmError::InvalidSource(format!(
                        "pulse support [{}, {}] leaves [-{a}, {a}]",
                        center - half_width,
                        center + half_width
                    )));
                }
            }
            SourceModel::Sampled(_) => {}
        }
        Ok(())
    }

    /// Pointwise value at `x` in the frame of half-length `a`.
    pub fn value(&self, x: f64, a: f64) -> Result<f64> {
        Ok(match self {
            SourceModel::Polynomial { coeffs } => horner(coeffs, x / a),
            SourceModel::DiracDelta { .. } => {
                return Err(FsmError::UnsupportedInterpolation("a Dirac delta has no pointwise values"))
            }
            SourceModel::RectPulse { center, half_width, area } => {
                if (x - center).abs() <= *half_width {
                    area / (2.0 * half_width)
                } else {
                    0.0
                }
            }
            SourceModel::Sampled(f) => (f.0)(x),
        })
    }

    /// Re-express the source in the local frame of the subinterval
    /// `[center - half, center + half]` (coordinates of the original frame of
    /// half-length `frame_a`). The result is centred on the subinterval.
    pub fn restrict(&self, frame_a: f64, center: f64, half: f64) -> Result<SourceModel> {
        let lo = center - half;
        let hi = center + half;
        let tol = 1e-12 * frame_a.max(half);
        Ok(match self {
            SourceModel::Polynomial { coeffs } => {
                // (x/A)^j with x = c + ξ  →  Σ_k C(j,k) (c/A)^{j-k} (ℓ/A)^k (ξ/ℓ)^k
                let shift = center / frame_a;
                let scale = half / frame_a;
                let mut out = vec![0.0; coeffs.len()];
                for (j, &cj) in coeffs.iter().enumerate() {
                    if cj == 0.0 {
                        continue;
                    }
                    let mut binom = 1.0;
                    for k in 0..=j {
                        out[k] += cj * binom * shift.powi((j - k) as i32) * scale.powi(k as i32);
                        binom = binom * (j - k) as f64 / (k + 1) as f64;
                    }
                }
                SourceModel::Polynomial { coeffs: out }
            }
            SourceModel::DiracDelta { position, strength } => {
                if (position - lo).abs() <= tol || (position - hi).abs() <= tol {
                    return Err(FsmError::InvalidSource("delta sits on a subinterval endpoint".into()));
                }
                if *position > lo && *position < hi {
                    SourceModel::DiracDelta { position: position - center, strength: *strength }
                } else {
                    SourceModel::zero()
                }
            }
            SourceModel::RectPulse { center: pc, half_width, area } => {
                let height = area / (2.0 * half_width);
                let s_lo = (pc - half_width).max(lo);
                let s_hi = (pc + half_width).min(hi);
                if s_hi - s_lo <= tol {
                    SourceModel::zero()
                } else if s_lo <= lo + tol && s_hi >= hi - tol {
                    SourceModel::constant(height)
                } else {
                    SourceModel::RectPulse {
                        center: 0.5 * (s_lo + s_hi) - center,
                        half_width: 0.5 * (s_hi - s_lo),
                        area: height * (s_hi - s_lo),
                    }
                }
            }
            SourceModel::Sampled(f) => {
                let g = f.0.clone();
                SourceModel::sampled(move |xi| g(xi + center))
            }
        })
    }
}

pub(crate) fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// `I_j = ∫_{-1}^{1} t^j e^{ikt} dt` for `j = 0..=jmax`.
///
/// Integration by parts gives `I_j = B_j − (j/(ik)) I_{j−1}` with boundary
/// term `B_j = (e^{ik} − (−1)^j e^{−ik})/(ik)`. The upward recurrence is run
/// while `j ≤ k`; above that it amplifies rounding, so the remaining
/// moments come from the downward form `I_{j−1} = (ik/j)(B_j − I_j)`,
/// started well above `jmax` from the endpoint asymptotics.
pub fn monomial_moments(k: f64, jmax: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); jmax + 1];
    if k == 0.0 {
        for (j, v) in out.iter_mut().enumerate() {
            if j % 2 == 0 {
                *v = Complex64::new(2.0 / (j + 1) as f64, 0.0);
            }
        }
        return out;
    }
    let ik = Complex64::new(0.0, k);
    let e_plus = Complex64::new(k.cos(), k.sin());
    let e_minus = e_plus.conj();
    let boundary = |j: usize| {
        let sgn = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
        (e_plus - sgn * e_minus) / ik
    };
    let k_abs = k.abs();
    let up_to = (k_abs.floor() as usize).min(jmax);
    out[0] = Complex64::new(2.0 * k.sin() / k, 0.0);
    for j in 1..=up_to {
        out[j] = boundary(j) - (j as f64 / ik) * out[j - 1];
    }
    if up_to < jmax {
        let start = jmax + 40 + 2 * (k_abs.ceil() as usize);
        let sgn = if start.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut cur = (e_plus + sgn * e_minus) / (start as f64 + 1.0);
        for j in (up_to + 1..=start).rev() {
            let prev = (ik / j as f64) * (boundary(j) - cur);
            if j <= jmax {
                out[j] = cur;
            }
            cur = prev;
        }
    }
    out
}

/// Analytic Fourier coefficients of `Σ c_j (x/a)^j` on `[-a, a]`.
pub(crate) fn polynomial_coeffs(coeffs: &[f64], m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut cos = vec![0.0; m + 1];
    let mut sin = vec![0.0; m];
    if coeffs.is_empty() {
        return (cos, sin);
    }
    let jmax = coeffs.len() - 1;
    for k in 0..=m {
        let mom = monomial_moments(k as f64 * PI, jmax);
        let v: Complex64 = coeffs.iter().zip(&mom).map(|(c, i)| *c * i).sum();
        cos[k] = v.re;
        if k > 0 {
            sin[k - 1] = v.im;
        }
    }
    (cos, sin)
}

/// Fourier coefficients of the source on `[-a, a]` truncated at `M` modes.
///
/// Polynomials, deltas and pulses are integrated analytically; sampled
/// sources go through adaptive composite Simpson.
pub fn fourier_coeffs(f: &SourceModel, a: f64, m: usize) -> Result<TrigSeries1D> {
    f.validate(a)?;
    let (cos, sin) = match f {
        SourceModel::Polynomial { coeffs } => polynomial_coeffs(coeffs, m),
        SourceModel::DiracDelta { position, strength } => {
            let mut cos = vec![0.0; m + 1];
            let mut sin = vec![0.0; m];
            for k in 0..=m {
                let (s, c) = (k as f64 * PI * position / a).sin_cos();
                cos[k] = strength / a * c;
                if k > 0 {
                    sin[k - 1] = strength / a * s;
                }
            }
            (cos, sin)
        }
        SourceModel::RectPulse { center, half_width, area } => {
            let h = area / (2.0 * half_width);
            let (lo, hi) = (center - half_width, center + half_width);
            let mut cos = vec![0.0; m + 1];
            let mut sin = vec![0.0; m];
            cos[0] = h * (hi - lo) / a;
            for k in 1..=m {
                let w = k as f64 * PI / a;
                cos[k] = h / a * ((w * hi).sin() - (w * lo).sin()) / w;
                sin[k - 1] = h / a * ((w * lo).cos() - (w * hi).cos()) / w;
            }
            (cos, sin)
        }
        SourceModel::Sampled(g) => {
            let g = g.0.clone();
            quadrature::adaptive_coeffs(&move |x| g(x), a, m)?
        }
    };
    TrigSeries1D::from_parts(a, cos, sin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_coefficients_follow_sifting() {
        let s = fourier_coeffs(&SourceModel::DiracDelta { position: 0.0, strength: 1000.0 }, 0.5, 3).unwrap();
        for m in 0..=3 {
            assert!((s.cos_coeff(m) - 2000.0).abs() < 1e-12);
            assert_eq!(s.sin_coeff(m), 0.0);
        }
    }

    #[test]
    fn constant_has_only_mean() {
        let s = fourier_coeffs(&SourceModel::constant(5.0), 2.0, 2).unwrap();
        assert!((s.cos_coeff(0) - 10.0).abs() < 1e-14);
        for m in 1..=2 {
            assert!(s.cos_coeff(m).abs() < 1e-14 && s.sin_coeff(m).abs() < 1e-14);
        }
        assert!((s.eval(0.3, 0).unwrap() - 5.0).abs() < 1e-14);
    }

    #[test]
    fn linear_sine_coefficient() {
        let s = fourier_coeffs(&SourceModel::Polynomial { coeffs: vec![0.0, 1.0] }, 1.0, 1).unwrap();
        assert!((s.sin_coeff(1) - 2.0 / PI).abs() < 1e-14);
        assert!(s.cos_coeff(0).abs() < 1e-15 && s.cos_coeff(1).abs() < 1e-15);
        // independent check: 10^5-panel trapezoid
        let n = 100_000;
        let h = 2.0 / n as f64;
        let trap: f64 = (0..=n)
            .map(|i| {
                let x = -1.0 + i as f64 * h;
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                w * h * x * (PI * x).sin()
            })
            .sum();
        assert!((trap - 2.0 / PI).abs() < 1e-8);
    }

    #[test]
    fn moments_match_quadrature_for_high_degree() {
        for &k in &[0.0, PI, 3.0 * PI, 20.0 * PI, 0.37] {
            let mom = monomial_moments(k, 40);
            for j in [0usize, 1, 5, 12, 25, 40] {
                let n = 20_000;
                let h = 2.0 / n as f64;
                let (mut re, mut im) = (0.0, 0.0);
                for i in 0..=n {
                    let t = -1.0 + i as f64 * h;
                    let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 } * h / 3.0;
                    re += w * t.powi(j as i32) * (k * t).cos();
                    im += w * t.powi(j as i32) * (k * t).sin();
                }
                assert!((mom[j].re - re).abs() < 1e-11, "k={k} j={j}: {} vs {re}", mom[j].re);
                assert!((mom[j].im - im).abs() < 1e-11, "k={k} j={j}: {} vs {im}", mom[j].im);
            }
        }
    }

    #[test]
    fn pulse_coefficients_match_quadrature() {
        let p = SourceModel::RectPulse { center: 0.1, half_width: 0.2, area: 3.0 };
        let s = fourier_coeffs(&p, 1.0, 6).unwrap();
        // fine midpoint sums on the support only
        let n = 200_000;
        let h = 0.4 / n as f64;
        for m in 0..=6 {
            let w = m as f64 * PI;
            let (mut c, mut sn) = (0.0, 0.0);
            for i in 0..n {
                let x = -0.1 + (i as f64 + 0.5) * h;
                c += h * 7.5 * (w * x).cos();
                sn += h * 7.5 * (w * x).sin();
            }
            assert!((s.cos_coeff(m) - c).abs() < 1e-8);
            assert!((s.sin_coeff(m) - sn).abs() < 1e-8);
        }
    }

    #[test]
    fn pulse_converges_to_delta() {
        let d = fourier_coeffs(&SourceModel::DiracDelta { position: 0.05, strength: 10.0 }, 0.5, 8).unwrap();
        let p = fourier_coeffs(&SourceModel::RectPulse { center: 0.05, half_width: 1e-6, area: 10.0 }, 0.5, 8).unwrap();
        for m in 0..=8 {
            assert!((d.cos_coeff(m) - p.cos_coeff(m)).abs() < 1e-6);
            assert!((d.sin_coeff(m) - p.sin_coeff(m)).abs() < 1e-6);
        }
    }

    #[test]
    fn validation_rejects_bad_sources() {
        assert!(SourceModel::DiracDelta { position: 0.5, strength: 1.0 }.validate(0.5).is_err());
        assert!(SourceModel::RectPulse { center: 0.45, half_width: 0.1, area: 1.0 }.validate(0.5).is_err());
        assert!(SourceModel::Polynomial { coeffs: vec![1.0; 66] }.validate(1.0).is_err());
        assert!(matches!(
            SourceModel::DiracDelta { position: 0.0, strength: 1.0 }.value(0.0, 1.0),
            Err(FsmError::UnsupportedInterpolation(_))
        ));
    }

    #[test]
    fn restriction_of_polynomial_preserves_values() {
        let f = SourceModel::Polynomial { coeffs: vec![1.0, -2.0, 0.5, 3.0] };
        let g = f.restrict(2.0, 0.7, 0.4).unwrap();
        for &xi in &[-0.4, -0.1, 0.0, 0.25, 0.4] {
            let v1 = f.value(0.7 + xi, 2.0).unwrap();
            let v2 = g.value(xi, 0.4).unwrap();
            assert!((v1 - v2).abs() < 1e-13);
        }
    }

    #[test]
    fn restriction_of_pulse() {
        let p = SourceModel::RectPulse { center: 0.0, half_width: 0.1, area: 1.0 };
        match p.restrict(0.5, 0.0, 0.1).unwrap() {
            SourceModel::Polynomial { coeffs } => assert!((coeffs[0] - 5.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert!(p.restrict(0.5, 0.3, 0.1).unwrap().is_zero());
    }

    #[test]
    fn json_tagged_variants() {
        let js = r#"{"type":"rect_pulse","center":0.0,"half_width":0.01,"area":1000.0}"#;
        let s: SourceModel = serde_json::from_str(js).unwrap();
        assert!(matches!(s, SourceModel::RectPulse { .. }));
        let js = r#"{"type":"polynomial","coeffs":[1000.0]}"#;
        let s: SourceModel = serde_json::from_str(js).unwrap();
        assert!(matches!(s, SourceModel::Polynomial { .. }));
    }
}
