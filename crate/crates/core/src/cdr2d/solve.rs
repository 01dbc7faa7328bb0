use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::edges::{
    data_edge_coeffs, data_edge_value, series_edge_coeffs, term_edge_coeffs, term_edge_value, Edge, EdgeBcSpec,
};
use super::family::{homogeneous_family, ExpTerm, HomogeneousFamily};
use super::particular::particular_2d_fccm;
use super::params::{CdrParams2D, Direction};
use crate::cdr1d::BcKind;
use crate::error::{FsmError, Result};
use crate::linalg::lstsq_col_piv;
use crate::series::source::SourceModel;
use crate::series::trig1d::check_in_interval;
use crate::series::{fourier_coeffs_2d, SourceModel2D, TrigSeries2D};

/// Columns whose pivot drops below this fraction of the largest are rank deficient.
pub const RANK_TOL: f64 = 1e-13;

/// A rectangle problem: source, edge conditions and truncation `(M, N)`.
#[derive(Debug, Clone)]
pub struct Problem2D {
    pub params: CdrParams2D,
    pub source: SourceModel2D,
    pub bc: EdgeBcSpec,
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics2D {
    pub residual_norm: f64,
    pub data_norm: f64,
    pub cond: f64,
    pub rows: usize,
    pub cols: usize,
    /// Residual exceeds `1e-6` of the data norm.
    pub poorly_resolved: bool,
}

/// Assembled solution: particular series, two homogeneous families and the corner term.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FsmSolution2D {
    pub params: CdrParams2D,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub particular: TrigSeries2D,
    /// Series whose image matches that of the corner function in the truncated space.
    pub corner_particular: TrigSeries2D,
    pub x1_family: HomogeneousFamily,
    pub x2_family: HomogeneousFamily,
    /// Coefficients of the x1 family (`2 + 4N`).
    pub q1: Vec<f64>,
    /// Coefficients of the x2 family (`2 + 4M`).
    pub q2: Vec<f64>,
    pub q3: f64,
    pub diagnostics: Diagnostics2D,
}

/// `x1 x2 / (4ab)`.
pub fn corner_term(p: &CdrParams2D) -> ExpTerm {
    let zero = Complex64::new(0.0, 0.0);
    ExpTerm { c: Complex64::new(1.0 / (4.0 * p.a * p.b), 0.0), p1: 1, p2: 1, z1: zero, z2: zero, shift: 0.0 }
}

/// Fourier coefficients of `L[x1 x2 / (4ab)] = (Pe1 x2 + Pe2 x1 − Pe·Da x1 x2) / (4ab)`.
fn corner_image(p: &CdrParams2D, m: usize, n: usize) -> Result<TrigSeries2D> {
    let poly = |c: Vec<f64>| SourceModel::Polynomial { coeffs: c };
    let parts = [
        SourceModel2D::Separable { x1: poly(vec![p.pe1() / (4.0 * p.a)]), x2: poly(vec![0.0, 1.0]) },
        SourceModel2D::Separable { x1: poly(vec![0.0, p.pe2() / (4.0 * p.b)]), x2: poly(vec![1.0]) },
        SourceModel2D::Separable { x1: poly(vec![0.0, -p.pe_da() / 4.0]), x2: poly(vec![0.0, 1.0]) },
    ];
    let mut flat = vec![0.0; (m + 1) * (n + 1) * 4];
    for part in &parts {
        let s = fourier_coeffs_2d(part, p.a, p.b, m, n)?;
        flat.iter_mut().zip(s.flat()).for_each(|(x, y)| *x += y);
    }
    TrigSeries2D::from_flat(p.a, p.b, m, n, flat)
}

fn is_constant(t: &ExpTerm) -> bool {
    t.p1 == 0 && t.p2 == 0 && t.z1.norm() == 0.0 && t.z2.norm() == 0.0
}

/// One unknown: a weighted sum of exponential terms minus an optional series.
struct Column<'a> {
    terms: Vec<ExpTerm>,
    series: Option<&'a TrigSeries2D>,
}

/// Corner points with the edge whose condition is imposed there.
fn corner_rows(bc: &EdgeBcSpec, p: &CdrParams2D) -> [(Edge, f64); 4] {
    let pick = |e1: Edge, e2: Edge, t1: f64, t2: f64| {
        if bc.edge(e1).kind == BcKind::Dirichlet {
            (e1, t1)
        } else if bc.edge(e2).kind == BcKind::Dirichlet {
            (e2, t2)
        } else {
            (e1, t1)
        }
    };
    [
        pick(Edge::Left, Edge::Bottom, -p.b, -p.a),
        pick(Edge::Right, Edge::Bottom, -p.b, p.a),
        pick(Edge::Right, Edge::Top, p.b, p.a),
        pick(Edge::Left, Edge::Top, p.b, -p.a),
    ]
}

fn edge_modes(e: Edge, m: usize, n: usize) -> usize {
    if e.is_x1_edge() {
        n
    } else {
        m
    }
}

/// Rows contributed by a column: edge Fourier coefficients, then corner values.
fn column_entries(col: &Column, bc: &EdgeBcSpec, p: &CdrParams2D, m: usize, n: usize) -> Vec<f64> {
    let mut out = Vec::new();
    for e in Edge::ALL {
        let kind = bc.edge(e).kind;
        let modes = edge_modes(e, m, n);
        let mut cos = vec![0.0; modes + 1];
        let mut sin = vec![0.0; modes];
        for t in &col.terms {
            let (c, s) = term_edge_coeffs(t, e, kind, p, modes);
            cos.iter_mut().zip(c).for_each(|(x, y)| *x += y);
            sin.iter_mut().zip(s).for_each(|(x, y)| *x += y);
        }
        if let Some(s) = col.series {
            let (c, sn) = series_edge_coeffs(s, e, kind, p);
            cos.iter_mut().zip(c).for_each(|(x, y)| *x -= y);
            sin.iter_mut().zip(sn).for_each(|(x, y)| *x -= y);
        }
        out.extend(cos);
        out.extend(sin);
    }
    for (e, t) in corner_rows(bc, p) {
        let kind = bc.edge(e).kind;
        let mut v: f64 = col.terms.iter().map(|term| term_edge_value(term, e, kind, p, t)).sum();
        if let Some(s) = col.series {
            v -= series_point(s, e, kind, p, t);
        }
        out.push(v);
    }
    out
}

fn series_point(s: &TrigSeries2D, e: Edge, kind: BcKind, p: &CdrParams2D, t: f64) -> f64 {
    let (x1, x2) = e.point(p, t);
    match kind {
        BcKind::Dirichlet => s.eval_unchecked(x1, x2, 0, 0),
        BcKind::Neumann if e.is_x1_edge() => e.outward() * s.eval_unchecked(x1, x2, 1, 0),
        BcKind::Neumann => e.outward() * s.eval_unchecked(x1, x2, 0, 1),
    }
}

/// Assembles the edge equations and solves them in the least-squares sense.
pub fn solve_2d(prob: &Problem2D) -> Result<FsmSolution2D> {
    let p = prob.params;
    p.validate()?;
    let (m, n) = (prob.m, prob.n);
    if m == 0 || n == 0 {
        return Err(FsmError::config("2D truncation requires M, N >= 1"));
    }
    let fcoeffs = fourier_coeffs_2d(&prob.source, p.a, p.b, m, n)?;
    let particular = particular_2d_fccm(&p, &fcoeffs)?;
    let corner_particular = particular_2d_fccm(&p, &corner_image(&p, m, n)?)?;
    let x1_family = homogeneous_family(&p, n, Direction::X1);
    let x2_family = homogeneous_family(&p, m, Direction::X2);

    // without reaction both families contain the constant; keep it only once
    let x1_has_const = x1_family.members.iter().any(is_constant);
    let keep2: Vec<bool> = x2_family.members.iter().map(|t| !(x1_has_const && is_constant(t))).collect();

    let bc = &prob.bc;
    let mut columns: Vec<Column> = x1_family.members.iter().map(|t| Column { terms: vec![*t], series: None }).collect();
    columns.extend(
        x2_family.members.iter().zip(&keep2).filter(|(_, k)| **k).map(|(t, _)| Column { terms: vec![*t], series: None }),
    );
    columns.push(Column { terms: vec![corner_term(&p)], series: Some(&corner_particular) });

    let entries: Vec<Vec<f64>> = columns.iter().map(|c| column_entries(c, bc, &p, m, n)).collect();
    let rows = entries[0].len();
    let a = DMatrix::from_fn(rows, columns.len(), |i, j| entries[j][i]);

    let mut rhs = Vec::with_capacity(rows);
    for e in Edge::ALL {
        let modes = edge_modes(e, m, n);
        let (dc, ds) = data_edge_coeffs(bc.edge(e), e, &p, modes)?;
        let (pc, ps) = series_edge_coeffs(&particular, e, bc.edge(e).kind, &p);
        rhs.extend(dc.iter().zip(&pc).map(|(d, q)| d - q));
        rhs.extend(ds.iter().zip(&ps).map(|(d, q)| d - q));
    }
    for (e, t) in corner_rows(bc, &p) {
        let kind = bc.edge(e).kind;
        rhs.push(data_edge_value(bc.edge(e), e, &p, t)? - series_point(&particular, e, kind, &p, t));
    }
    let b = DVector::from_vec(rhs);
    let data_norm = b.norm();
    let ls = lstsq_col_piv(&a, &b, RANK_TOL)?;

    let n1 = x1_family.len();
    let q1 = ls.x.as_slice()[..n1].to_vec();
    let mut it = ls.x.as_slice()[n1..].iter();
    let q2: Vec<f64> = keep2.iter().map(|&k| if k { *it.next().unwrap() } else { 0.0 }).collect();
    let q3 = *it.next().unwrap();
    let diagnostics = Diagnostics2D {
        residual_norm: ls.residual_norm,
        data_norm,
        cond: ls.cond,
        rows,
        cols: columns.len(),
        poorly_resolved: ls.residual_norm > 1e-6 * data_norm,
    };
    Ok(FsmSolution2D { params: p, m, n, particular, corner_particular, x1_family, x2_family, q1, q2, q3, diagnostics })
}

impl FsmSolution2D {
    /// `∂^{k1+k2}φ / ∂x1^{k1} ∂x2^{k2}` at `(x1, x2)`, `k1 + k2 ≤ 2`.
    pub fn eval(&self, x1: f64, x2: f64, k1: usize, k2: usize) -> Result<f64> {
        if k1 + k2 > 2 {
            return Err(FsmError::DerivativeOrder(k1 + k2));
        }
        check_in_interval(x1, self.params.a)?;
        check_in_interval(x2, self.params.b)?;
        Ok(self.eval_unchecked(x1, x2, k1, k2))
    }

    pub(crate) fn eval_unchecked(&self, x1: f64, x2: f64, k1: usize, k2: usize) -> f64 {
        let fam = |f: &HomogeneousFamily, q: &[f64]| -> f64 {
            f.members.iter().zip(q).filter(|(_, c)| **c != 0.0).map(|(t, c)| c * t.eval(x1, x2, k1, k2)).sum()
        };
        let corner = corner_term(&self.params).eval(x1, x2, k1, k2) - self.corner_particular.eval_unchecked(x1, x2, k1, k2);
        self.particular.eval_unchecked(x1, x2, k1, k2)
            + fam(&self.x1_family, &self.q1)
            + fam(&self.x2_family, &self.q2)
            + self.q3 * corner
    }

    /// `(x1, x2, φ, ∂φ/∂x1, ∂φ/∂x2)` on a uniform `grid × grid` lattice.
    pub fn field(&self, grid: usize) -> Vec<[f64; 5]> {
        let g = grid.max(2);
        let (a, b) = (self.params.a, self.params.b);
        let coord = |i: usize, h: f64| if i == g - 1 { h } else { -h + 2.0 * h * i as f64 / (g - 1) as f64 };
        let mut out = Vec::with_capacity(g * g);
        for i in 0..g {
            for j in 0..g {
                let (x1, x2) = (coord(i, a), coord(j, b));
                out.push([
                    x1,
                    x2,
                    self.eval_unchecked(x1, x2, 0, 0),
                    self.eval_unchecked(x1, x2, 1, 0),
                    self.eval_unchecked(x1, x2, 0, 1),
                ]);
            }
        }
        out
    }
}
