use serde::Serialize;

use crate::cdr1d::solve::to_local;
use crate::cdr1d::{BcKind, Bcs1D, CdrParams1D};
use crate::error::{FsmError, Result};
use crate::series::SourceModel;

pub const DEFAULT_NODES_1D: usize = 20001;

/// Uniform-grid nodal solution.
#[derive(Debug, Clone, Serialize)]
pub struct FdGrid1D {
    pub xs: Vec<f64>,
    pub h: f64,
    pub values: Vec<f64>,
}

impl FdGrid1D {
    /// Piecewise-linear interpolation of the nodal values.
    pub fn interpolate(&self, x: f64) -> f64 {
        let x0 = self.xs[0];
        let n = self.xs.len();
        let t = ((x - x0) / self.h).clamp(0.0, (n - 1) as f64);
        let i = (t.floor() as usize).min(n - 2);
        let w = t - i as f64;
        self.values[i] * (1.0 - w) + self.values[i + 1] * w
    }
}

/// Smallest node count keeping the cell Peclet number `|Pe|·h/2` below one.
pub fn required_nodes(pe: f64, length: f64) -> usize {
    (0.5 * pe.abs() * length).floor() as usize + 2
}

/// Thomas algorithm for `lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]`.
pub(crate) fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let den = diag[i] - lower[i] * c[i - 1];
        c[i] = if i + 1 < n { upper[i] / den } else { 0.0 };
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / den;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Nodal source values; a delta is lumped onto its nearest node.
fn nodal_source(f: &SourceModel, xs: &[f64], a: f64, h: f64) -> Result<Vec<f64>> {
    match f {
        SourceModel::DiracDelta { position, strength } => {
            let mut v = vec![0.0; xs.len()];
            let i = ((position - xs[0]) / h).round() as usize;
            v[i.min(xs.len() - 1)] = strength / h;
            Ok(v)
        }
        _ => xs.iter().map(|&x| f.value(x, a)).collect(),
    }
}

/// Central-difference solution of the 1D problem on `[center − a, center + a]`.
///
/// Neumann rows use the one-sided second-order stencil, folded into the
/// neighbouring interior row to keep the system tridiagonal.
pub fn fd_solve_1d(p: &CdrParams1D, center: f64, f: &SourceModel, bcs: Bcs1D, nodes: usize) -> Result<FdGrid1D> {
    p.validate()?;
    let a = p.a;
    let need = required_nodes(p.pe, 2.0 * a).max(3);
    if nodes < need {
        return Err(FsmError::FdStability { required: need, have: nodes });
    }
    let n = nodes;
    let h = 2.0 * a / (n - 1) as f64;
    let local: Vec<f64> = (0..n).map(|i| -a + i as f64 * h).collect();
    let src = nodal_source(&to_local(f, center), &local, a, h)?;

    let lo = -1.0 / (h * h) - p.pe / (2.0 * h);
    let di = 2.0 / (h * h) - p.pe_da();
    let up = -1.0 / (h * h) + p.pe / (2.0 * h);
    let mut lower = vec![lo; n];
    let mut diag = vec![di; n];
    let mut upper = vec![up; n];
    let mut rhs = src;

    match bcs.left.kind {
        BcKind::Dirichlet => {
            lower[0] = 0.0;
            diag[0] = 1.0;
            upper[0] = 0.0;
            rhs[0] = bcs.left.value;
        }
        BcKind::Neumann => {
            // (−3φ0 + 4φ1 − φ2)/(2h) = g, with φ2 eliminated through row 1
            let (l1, d1, u1, r1) = (lower[1], diag[1], upper[1], rhs[1]);
            lower[0] = 0.0;
            diag[0] = -3.0 + l1 / u1;
            upper[0] = 4.0 + d1 / u1;
            rhs[0] = 2.0 * h * bcs.left.value + r1 / u1;
        }
    }
    match bcs.right.kind {
        BcKind::Dirichlet => {
            lower[n - 1] = 0.0;
            diag[n - 1] = 1.0;
            upper[n - 1] = 0.0;
            rhs[n - 1] = bcs.right.value;
        }
        BcKind::Neumann => {
            // (3φn − 4φn−1 + φn−2)/(2h) = g, with φn−2 eliminated through row n−1
            let (l, d, u, r) = (lower[n - 2], diag[n - 2], upper[n - 2], rhs[n - 2]);
            lower[n - 1] = -4.0 - d / l;
            diag[n - 1] = 3.0 - u / l;
            upper[n - 1] = 0.0;
            rhs[n - 1] = 2.0 * h * bcs.right.value - r / l;
        }
    }
    let values = thomas(&lower, &diag, &upper, &rhs);
    Ok(FdGrid1D { xs: local.iter().map(|x| x + center).collect(), h, values })
}

/// Richardson extrapolation `(4·fine − coarse)/3` on the coarse nodes;
/// `fine` must use `2·(n−1)+1` nodes where `coarse` uses `n`.
pub fn richardson(coarse: &FdGrid1D, fine: &FdGrid1D) -> FdGrid1D {
    assert_eq!(2 * (coarse.xs.len() - 1) + 1, fine.xs.len());
    let values = coarse.values.iter().enumerate().map(|(i, c)| (4.0 * fine.values[2 * i] - c) / 3.0).collect();
    FdGrid1D { xs: coarse.xs.clone(), h: coarse.h, values }
}
