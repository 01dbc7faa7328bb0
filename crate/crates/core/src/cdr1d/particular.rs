use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::roots::CdrParams1D;
use crate::error::{FsmError, Result};
use crate::linalg::solve_square;
use crate::series::{mu, TrigSeries1D};

pub const MAX_COND: f64 = 1e12;

/// How the particular-solution coefficients are determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Fourier coefficient comparison.
    #[default]
    Fccm,
    /// Collocation at shifted-uniform points.
    Cm,
}

/// Outcome of a particular solve with the worst mode/collocation condition number.
#[derive(Debug, Clone)]
pub struct Particular {
    pub q0: TrigSeries1D,
    pub cond: f64,
}

fn mean_is_negligible(fp: &TrigSeries1D) -> bool {
    fp.cos_coeff(0).abs() <= 1e-10 * fp.max_abs_coeff().max(f64::MIN_POSITIVE) || fp.cos_coeff(0) == 0.0
}

/// Mode-by-mode solution of `L[φ0] = fp` in the truncated Fourier space.
pub fn particular_fccm(p: &CdrParams1D, fp: &TrigSeries1D) -> Result<Particular> {
    let a = fp.half_length();
    let mm = fp.modes();
    let pd = p.pe_da();
    let mut q0 = TrigSeries1D::zeros(a, mm);
    if pd == 0.0 {
        if !mean_is_negligible(fp) {
            return Err(FsmError::SingularMeanMode { mean: 0.5 * fp.cos_coeff(0) });
        }
    } else {
        q0.set_cos(0, -fp.cos_coeff(0) / pd);
    }
    for m in 1..=mm {
        let al = m as f64 * PI / a;
        let d = al * al - pd;
        let c = p.pe * al;
        let det = d * d + c * c;
        if det == 0.0 || !det.is_finite() {
            return Err(FsmError::ResonantMode { m, n: 0 });
        }
        let (f1, f2) = (fp.cos_coeff(m), fp.sin_coeff(m));
        q0.set_cos(m, (d * f1 - c * f2) / det);
        q0.set_sin(m, (c * f1 + d * f2) / det);
    }
    // every 2×2 block [[d, c], [−c, d]] is a scaled rotation
    Ok(Particular { q0, cond: 1.0 })
}

/// Shifted-uniform collocation points `−a + 2a(j − 1/2)/(2M+1)`, `j = 1..=2M+1`.
pub fn collocation_points(a: f64, m: usize) -> Vec<f64> {
    let n = 2 * m + 1;
    (1..=n).map(|j| -a + 2.0 * a * (j as f64 - 0.5) / n as f64).collect()
}

/// Value and derivatives of the `col`-th weighted trigonometric basis function
/// (ordering `1/2, cos α1 x, sin α1 x, …`).
fn basis_col(a: f64, col: usize, x: f64) -> [f64; 3] {
    if col == 0 {
        return [mu(0), 0.0, 0.0];
    }
    let m = col.div_ceil(2);
    let w = m as f64 * PI / a;
    let (s, c) = (w * x).sin_cos();
    if col % 2 == 1 {
        [c, -w * s, -w * w * c]
    } else {
        [s, w * c, -w * w * s]
    }
}

/// Collocation solution: enforce `L[φ0] = fp` at `2M+1` points.
///
/// When `Pe·Da = 0` the constant mode lies in the kernel of `L`, so its
/// column is replaced by the constant itself acting as a slack, and the mean
/// coefficient is set to zero.
pub fn particular_cm(p: &CdrParams1D, fp: &TrigSeries1D) -> Result<Particular> {
    let a = fp.half_length();
    let mm = fp.modes();
    if mm == 0 {
        return particular_fccm(p, fp);
    }
    let pd = p.pe_da();
    if pd == 0.0 && !mean_is_negligible(fp) {
        return Err(FsmError::SingularMeanMode { mean: 0.5 * fp.cos_coeff(0) });
    }
    let xs = collocation_points(a, mm);
    let n = xs.len();
    let mut rp1 = DMatrix::zeros(n, n);
    let mut rp2 = DMatrix::zeros(n, n);
    for (i, &x) in xs.iter().enumerate() {
        for col in 0..n {
            let [v, d1, d2] = basis_col(a, col, x);
            rp1[(i, col)] = if col == 0 && pd == 0.0 { v } else { p.apply(v, d1, d2) };
            rp2[(i, col)] = v;
        }
    }
    let mut qfp = DVector::zeros(n);
    qfp[0] = fp.cos_coeff(0);
    for m in 1..=mm {
        qfp[2 * m - 1] = fp.cos_coeff(m);
        qfp[2 * m] = fp.sin_coeff(m);
    }
    let rhs = &rp2 * qfp;
    let sol = solve_square(&rp1, &rhs, "collocation matrix", MAX_COND)?;
    let mut q0 = TrigSeries1D::zeros(a, mm);
    q0.set_cos(0, if pd == 0.0 { 0.0 } else { sol.x[0] });
    for m in 1..=mm {
        q0.set_cos(m, sol.x[2 * m - 1]);
        q0.set_sin(m, sol.x[2 * m]);
    }
    Ok(Particular { q0, cond: sol.cond })
}

pub fn particular(p: &CdrParams1D, fp: &TrigSeries1D, method: Method) -> Result<Particular> {
    match method {
        Method::Fccm => particular_fccm(p, fp),
        Method::Cm => particular_cm(p, fp),
    }
}
