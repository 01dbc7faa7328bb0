//! Dense linear algebra helpers shared by the solvers.
//!
//! Square systems go through partial-pivoted LU with a 1-norm condition
//! estimate; the rectangular 2D boundary system goes through a Householder
//! QR with column-norm pivoting so that a numerical rank can be reported.

use nalgebra::{DMatrix, DVector};

use crate::error::{FsmError, Result};

/// Result of a square solve together with its condition estimate.
#[derive(Debug, Clone)]
pub struct Solved {
    pub x: DVector<f64>,
    pub cond: f64,
}

pub fn norm1(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solve `a x = b` by partial-pivoted LU. Fails with `IllConditioned` when the
/// matrix is singular or its estimated 1-norm condition number exceeds `max_cond`.
pub fn solve_square(a: &DMatrix<f64>, b: &DVector<f64>, what: &'static str, max_cond: f64) -> Result<Solved> {
    let cond = cond1_estimate(a);
    if !cond.is_finite() || cond > max_cond {
        return Err(FsmError::IllConditioned { what, cond });
    }
    let x = a
        .clone()
        .lu()
        .solve(b)
        .ok_or(FsmError::IllConditioned { what, cond: f64::INFINITY })?;
    Ok(Solved { x, cond })
}

/// Estimate of the 1-norm condition number `‖A‖₁·‖A⁻¹‖₁` using Hager's power
/// heuristic (as refined by Higham). Returns infinity for singular matrices.
pub fn cond1_estimate(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "condition estimate needs a square matrix");
    if n == 0 {
        return 0.0;
    }
    let lu = a.clone().lu();
    if !lu.is_invertible() {
        return f64::INFINITY;
    }
    let lu_t = a.transpose().lu();
    let solve = |rhs: &DVector<f64>| lu.solve(rhs);
    let solve_t = |rhs: &DVector<f64>| lu_t.solve(rhs);

    let mut x = DVector::from_element(n, 1.0 / n as f64);
    let mut est = 0.0;
    for _ in 0..5 {
        let Some(y) = solve(&x) else { return f64::INFINITY };
        let y_norm: f64 = y.iter().map(|v| v.abs()).sum();
        if !y_norm.is_finite() {
            return f64::INFINITY;
        }
        let xi = y.map(|v| if v >= 0.0 { 1.0 } else { -1.0 });
        let Some(z) = solve_t(&xi) else { return f64::INFINITY };
        let (jmax, zmax) = z
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v.abs() > acc.1 { (i, v.abs()) } else { acc });
        let ztx = z.dot(&x);
        if y_norm <= est || zmax <= ztx {
            est = est.max(y_norm);
            break;
        }
        est = y_norm;
        x = DVector::zeros(n);
        x[jmax] = 1.0;
    }
    // Higham's alternating-sign safeguard vector.
    let alt = DVector::from_fn(n, |i, _| {
        let s = if i % 2 == 0 { 1.0 } else { -1.0 };
        s * (1.0 + i as f64 / (n.max(2) - 1) as f64)
    });
    if let Some(y) = solve(&alt) {
        let alt_est = 2.0 * y.iter().map(|v| v.abs()).sum::<f64>() / (3.0 * n as f64);
        est = est.max(alt_est);
    }
    norm1(a) * est
}

/// Outcome of a column-pivoted least-squares solve.
#[derive(Debug, Clone)]
pub struct LeastSquares {
    pub x: DVector<f64>,
    pub rank: usize,
    pub residual_norm: f64,
    /// `|r_00| / |r_kk|` over the retained diagonal of R.
    pub cond: f64,
}

/// Minimise `‖a x − b‖₂` with Householder QR and Businger–Golub column pivoting.
///
/// Columns whose pivot falls below `rank_tol · |r_00|` are treated as
/// numerically dependent; the solve is then reported as rank deficient.
pub fn lstsq_col_piv(a: &DMatrix<f64>, b: &DVector<f64>, rank_tol: f64) -> Result<LeastSquares> {
    let (m, n) = a.shape();
    assert_eq!(m, b.len());
    assert!(m >= n, "least squares expects at least as many rows as columns");
    let mut r = a.clone();
    let mut qtb = b.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut col_norms: Vec<f64> = (0..n).map(|j| r.column(j).norm_squared()).collect();
    let mut diag = vec![0.0; n];

    for k in 0..n {
        // recompute the trailing norms exactly; n is a few hundred at most
        for j in k..n {
            col_norms[j] = r.view((k, j), (m - k, 1)).norm_squared();
        }
        let (p, _) = (k..n).fold((k, -1.0), |acc, j| if col_norms[j] > acc.1 { (j, col_norms[j]) } else { acc });
        if p != k {
            r.swap_columns(k, p);
            perm.swap(k, p);
            col_norms.swap(k, p);
        }
        let mut v = DVector::from_fn(m - k, |i, _| r[(k + i, k)]);
        let alpha = v.norm();
        if alpha == 0.0 {
            diag[k] = 0.0;
            continue;
        }
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let vnorm2 = v.norm_squared();
        for j in k..n {
            let s = 2.0 * (0..m - k).map(|i| v[i] * r[(k + i, j)]).sum::<f64>() / vnorm2;
            for i in 0..m - k {
                r[(k + i, j)] -= s * v[i];
            }
        }
        {
            let mut seg = qtb.rows_mut(k, m - k);
            let s = 2.0 * v.dot(&seg) / vnorm2;
            seg.axpy(-s, &v, 1.0);
        }
        diag[k] = r[(k, k)];
    }

    let r00 = diag.first().map(|d| d.abs()).unwrap_or(0.0);
    let rank = diag.iter().take_while(|d| d.abs() > rank_tol * r00).count();
    if rank < n {
        return Err(FsmError::RankDeficient { rank, cols: n });
    }
    let mut y = DVector::zeros(n);
    for i in (0..n).rev() {
        let mut s = qtb[i];
        for j in i + 1..n {
            s -= r[(i, j)] * y[j];
        }
        y[i] = s / r[(i, i)];
    }
    let mut x = DVector::zeros(n);
    for (i, &p) in perm.iter().enumerate() {
        x[p] = y[i];
    }
    let residual_norm = (a * &x - b).norm();
    let rmin = diag.iter().map(|d| d.abs()).fold(f64::INFINITY, f64::min);
    Ok(LeastSquares { x, rank, residual_norm, cond: r00 / rmin })
}
