use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::roots::{classify_regime, CdrParams1D};
use crate::error::{FsmError, Result};
use crate::series::SourceModel;

/// Polynomial `Σ_k c_k (x/a)^k` on `[-a, a]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaledPoly {
    pub a: f64,
    pub coeffs: Vec<f64>,
}

impl ScaledPoly {
    pub fn zero(a: f64) -> Self {
        ScaledPoly { a, coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0.0)
    }

    /// `k`-th derivative at `x`, any `k`.
    pub fn eval(&self, x: f64, k: usize) -> f64 {
        let t = x / self.a;
        let mut acc = 0.0;
        for (p, &c) in self.coeffs.iter().enumerate().skip(k).rev() {
            let fall: f64 = (0..k).map(|i| (p - i) as f64).product();
            acc = acc * t + c * fall;
        }
        acc / self.a.powi(k as i32)
    }

    /// Coefficients of `L[self]` in the same scaled monomial basis.
    pub fn apply_operator(&self, p: &CdrParams1D) -> ScaledPoly {
        let a = self.a;
        let mut out = vec![0.0; self.coeffs.len()];
        for (j, &c) in self.coeffs.iter().enumerate() {
            let jf = j as f64;
            out[j] -= p.pe_da() * c;
            if j >= 1 {
                out[j - 1] += p.pe * jf / a * c;
            }
            if j >= 2 {
                out[j - 2] -= jf * (jf - 1.0) / (a * a) * c;
            }
        }
        ScaledPoly { a, coeffs: out }
    }
}

/// Degree of the interpolating polynomial of the source; zero disables the
/// supplementary term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupplementarySpec {
    #[serde(rename = "N1s")]
    pub n1s: usize,
}

impl SupplementarySpec {
    /// `N1s + 1` uniform nodes including both endpoints.
    pub fn nodes(&self, a: f64) -> Vec<f64> {
        if self.n1s == 0 {
            return vec![];
        }
        (0..=self.n1s).map(|j| -a + 2.0 * a * j as f64 / self.n1s as f64).collect()
    }
}

/// Scaled roots `ηa` up to this modulus are slow: the polynomial particular
/// solution would carry powers of `1/(ηa)` that the boundary fit must cancel.
pub const SLOW_ROOT: f64 = 1.0;

/// Scaled characteristic roots `ηa`, slow ones first.
fn scaled_roots(p: &CdrParams1D) -> (Vec<Complex64>, Vec<Complex64>) {
    let r = classify_regime(p);
    [r.eta1, r.eta2].into_iter().map(|e| e * p.a).partition(|m| m.norm() <= SLOW_ROOT)
}

/// Whether the operator has a slow root (always so when `Pe·Da = 0`).
pub fn has_slow_root(p: &CdrParams1D) -> bool {
    !scaled_roots(p).0.is_empty()
}

/// Interpolating polynomial of `f` on the uniform nodes of `spec`.
pub fn build_interpolant(f: &SourceModel, spec: SupplementarySpec, a: f64) -> Result<ScaledPoly> {
    if spec.n1s == 0 {
        return Ok(ScaledPoly::zero(a));
    }
    if !f.is_pointwise() {
        return Err(FsmError::UnsupportedInterpolation("a Dirac delta has no pointwise values"));
    }
    let nodes = spec.nodes(a);
    let n = nodes.len();
    let vand = DMatrix::from_fn(n, n, |i, j| (nodes[i] / a).powi(j as i32));
    let rhs = DVector::from_iterator(n, nodes.iter().map(|&x| f.value(x, a)).collect::<Result<Vec<_>>>()?);
    let sol = vand
        .lu()
        .solve(&rhs)
        .ok_or(FsmError::IllConditioned { what: "interpolation matrix", cond: f64::INFINITY })?;
    Ok(ScaledPoly { a, coeffs: sol.iter().copied().collect() })
}

/// Polynomial `φs` with `L[φs] = fs`.
///
/// Without slow roots this is the unique polynomial of the same degree. With
/// slow roots it is the Taylor series of the particular solution vanishing at
/// the centre, truncated once its terms drop below roundoff.
pub fn build_supplementary(p: &CdrParams1D, fs: &ScaledPoly) -> ScaledPoly {
    let a = fs.a;
    if fs.coeffs.is_empty() || fs.is_zero() {
        return ScaledPoly::zero(a);
    }
    let (slow, fast) = scaled_roots(p);
    let coeffs = match (slow.len(), fast.first()) {
        (0, _) => same_degree(p, &fs.coeffs, a),
        (1, Some(mf)) => one_slow_root(slow[0].re, mf.re, &fs.coeffs, a),
        _ => all_slow_roots(p, &fs.coeffs, a),
    };
    ScaledPoly { a, coeffs }
}

/// Back substitution of the upper-triangular system in `(x/a)^j`.
fn same_degree(p: &CdrParams1D, f: &[f64], a: f64) -> Vec<f64> {
    let n = f.len();
    let mut g = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = f[i];
        if i + 1 < n {
            s -= p.pe * (i + 1) as f64 / a * g[i + 1];
        }
        if i + 2 < n {
            s += ((i + 2) * (i + 1)) as f64 / (a * a) * g[i + 2];
        }
        g[i] = s / -p.pe_da();
    }
    g
}

/// Terms this far below the largest coefficient end a Taylor series.
const SERIES_TOL: f64 = 1e-18;
const MAX_SERIES_TERMS: usize = 400;

fn series_done(c: &[f64], min_len: usize) -> bool {
    let big = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    c.len() >= min_len && c[c.len() - 2..].iter().all(|v| v.abs() <= SERIES_TOL * big)
}

/// `u'' = a·Pe u' − a²·Pe·Da u − a² f` in `t = x/a`, with `u(0) = u'(0) = 0`.
fn all_slow_roots(p: &CdrParams1D, f: &[f64], a: f64) -> Vec<f64> {
    let (b1, b0) = (a * p.pe, a * a * p.pe_da());
    let mut c = vec![0.0, 0.0];
    while !series_done(&c, f.len() + 4) && c.len() < MAX_SERIES_TERMS {
        let k = c.len() - 2;
        let fk = f.get(k).copied().unwrap_or(0.0);
        let next = (b1 * (k + 1) as f64 * c[k + 1] - b0 * c[k] - a * a * fk) / ((k + 2) * (k + 1)) as f64;
        c.push(next);
    }
    c
}

/// `(D − μf)(D − μs) u = −a² f` in `t = x/a`: the fast factor is inverted on
/// polynomials, the slow one by the series with `u(0) = 0`.
fn one_slow_root(ms: f64, mf: f64, f: &[f64], a: f64) -> Vec<f64> {
    let mut w = vec![0.0; f.len()];
    let mut term: Vec<f64> = f.iter().map(|v| a * a * v).collect();
    let mut scale = 1.0 / mf;
    while !term.is_empty() {
        w.iter_mut().zip(&term).for_each(|(wi, t)| *wi += scale * t);
        term = term.iter().enumerate().skip(1).map(|(k, t)| k as f64 * t).collect();
        scale /= mf;
    }
    let mut c = vec![0.0];
    while !series_done(&c, f.len() + 3) && c.len() < MAX_SERIES_TERMS {
        let k = c.len() - 1;
        let wk = w.get(k).copied().unwrap_or(0.0);
        c.push((ms * c[k] + wk) / (k + 1) as f64);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cubic() -> SourceModel {
        SourceModel::Polynomial { coeffs: vec![1e3, 2e3, 5e3, 1e4] }
    }

    #[test]
    fn poly_derivatives() {
        let q = ScaledPoly { a: 2.0, coeffs: vec![1.0, 2.0, 3.0] };
        // 1 + x + 0.75 x²
        assert!((q.eval(1.0, 0) - 2.75).abs() < 1e-15);
        assert!((q.eval(1.0, 1) - 2.5).abs() < 1e-15);
        assert!((q.eval(1.0, 2) - 1.5).abs() < 1e-15);
        assert_eq!(q.eval(1.0, 3), 0.0);
    }

    #[test]
    fn cubic_interpolant_is_exact() {
        let fs = build_interpolant(&cubic(), SupplementarySpec { n1s: 3 }, 0.5).unwrap();
        for (c, e) in fs.coeffs.iter().zip([1e3, 2e3, 5e3, 1e4]) {
            assert!((c - e).abs() < 1e-9 * e);
        }
    }

    #[test]
    fn constant_and_secant() {
        let fs = build_interpolant(&SourceModel::constant(1e3), SupplementarySpec { n1s: 1 }, 1.0).unwrap();
        assert!((fs.eval(0.2, 0) - 1e3).abs() < 1e-12);
        let sq = SourceModel::Polynomial { coeffs: vec![0.0, 0.0, 1.0] };
        let fs = build_interpolant(&sq, SupplementarySpec { n1s: 1 }, 1.0).unwrap();
        assert!((fs.eval(0.0, 0) - 1.0).abs() < 1e-15);
        assert!(fs.eval(0.0, 1).abs() < 1e-15);
    }

    #[test]
    fn delta_cannot_be_interpolated() {
        let d = SourceModel::DiracDelta { position: 0.0, strength: 1.0 };
        assert!(matches!(
            build_interpolant(&d, SupplementarySpec { n1s: 2 }, 1.0),
            Err(FsmError::UnsupportedInterpolation(_))
        ));
    }

    #[test]
    fn supplementary_examples() {
        let fs = ScaledPoly { a: 0.5, coeffs: vec![1000.0] };
        let p = CdrParams1D::new(3.0, 90.0, 0.5).unwrap();
        let s = build_supplementary(&p, &fs);
        assert!((s.eval(0.1, 0) + 1000.0 / 270.0).abs() < 1e-12);

        let p = CdrParams1D::new(2.0, 0.0, 0.5).unwrap();
        let s = build_supplementary(&p, &ScaledPoly { a: 0.5, coeffs: vec![7.0] });
        assert!((2.0 * s.eval(0.3, 1) - s.eval(0.3, 2) - 7.0).abs() < 1e-12);
        assert_eq!(s.eval(0.0, 0), 0.0);

        let p = CdrParams1D::new(0.0, 0.0, 1.0).unwrap();
        let s = build_supplementary(&p, &ScaledPoly { a: 1.0, coeffs: vec![2.0] });
        assert!((s.eval(0.7, 0) + 0.49).abs() < 1e-14);
    }

    #[test]
    fn slow_root_keeps_coefficients_bounded() {
        for (pe, da) in [(57.0, -1e-6 / 57.0), (57.17, -0.00476), (2.0, 0.3), (0.5, -80.0)] {
            let p = CdrParams1D::new(pe, da, 0.5).unwrap();
            let fs = ScaledPoly { a: 0.5, coeffs: vec![1.0, 2.0, -3.0, 4.0] };
            let s = build_supplementary(&p, &fs);
            for x in [-0.5, -0.1, 0.3, 0.5] {
                let r = pe * s.eval(x, 1) - s.eval(x, 2) - pe * da * s.eval(x, 0) - fs.eval(x, 0);
                assert!(r.abs() < 1e-9, "Pe {pe} Da {da} x {x}: residual {r}");
            }
        }
    }

    proptest! {
        #[test]
        fn supplementary_is_exact(
            pe in prop_oneof![Just(0.0), -50.0f64..50.0],
            da in prop_oneof![Just(0.0), -50.0f64..50.0],
            a in 0.1f64..2.0,
            coeffs in proptest::collection::vec(-1e3f64..1e3, 1..6),
        ) {
            let p = CdrParams1D::new(pe, da, a).unwrap();
            let fs = ScaledPoly { a, coeffs: coeffs.clone() };
            let s = build_supplementary(&p, &fs);
            let back = s.apply_operator(&p);
            let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs())).max(1e-300);
            for i in 0..back.coeffs.len().max(coeffs.len()) {
                let want = coeffs.get(i).copied().unwrap_or(0.0);
                let got = back.coeffs.get(i).copied().unwrap_or(0.0);
                prop_assert!((want - got).abs() <= 1e-9 * scale, "coeff {}: {} vs {}", i, got, want);
            }
        }

        #[test]
        fn interpolation_hits_nodes(
            n1s in 1usize..6,
            a in 0.1f64..2.0,
            coeffs in proptest::collection::vec(-10.0f64..10.0, 1..9),
        ) {
            let f = SourceModel::Polynomial { coeffs };
            let spec = SupplementarySpec { n1s };
            let fs = build_interpolant(&f, spec, a).unwrap();
            let scale = spec.nodes(a).iter().map(|&x| f.value(x, a).unwrap().abs()).fold(1e-300, f64::max);
            for x in spec.nodes(a) {
                prop_assert!((fs.eval(x, 0) - f.value(x, a).unwrap()).abs() <= 1e-12 * scale.max(1.0));
            }
        }
    }
}
