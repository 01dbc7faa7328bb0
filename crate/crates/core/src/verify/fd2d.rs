use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::fd1d::required_nodes;
use crate::cdr1d::BcKind;
use crate::cdr2d::edges::{data_edge_value, Edge};
use crate::cdr2d::{CdrParams2D, EdgeBcSpec};
use crate::error::{FsmError, Result};
use crate::output::write_csv;
use crate::series::SourceModel2D;

pub const DEFAULT_NODES_2D: usize = 401;

/// Nodal solution on a uniform `n1 × n2` grid; `values[i * n2 + j]` sits at `(x1s[i], x2s[j])`.
#[derive(Debug, Clone, Serialize)]
pub struct FdGrid2D {
    pub x1s: Vec<f64>,
    pub x2s: Vec<f64>,
    pub h1: f64,
    pub h2: f64,
    pub values: Vec<f64>,
}

impl FdGrid2D {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.x2s.len() + j]
    }

    /// Bilinear interpolation of the nodal values.
    pub fn interpolate(&self, x1: f64, x2: f64) -> f64 {
        let locate = |xs: &[f64], h: f64, x: f64| {
            let t = ((x - xs[0]) / h).clamp(0.0, (xs.len() - 1) as f64);
            let i = (t.floor() as usize).min(xs.len() - 2);
            (i, t - i as f64)
        };
        let (i, u) = locate(&self.x1s, self.h1, x1);
        let (j, v) = locate(&self.x2s, self.h2, x2);
        (1.0 - u) * ((1.0 - v) * self.at(i, j) + v * self.at(i, j + 1))
            + u * ((1.0 - v) * self.at(i + 1, j) + v * self.at(i + 1, j + 1))
    }

    pub fn write_csv(&self, path: &std::path::Path) -> Result<()> {
        let rows = self.x1s.iter().enumerate().flat_map(|(i, &x1)| {
            self.x2s.iter().enumerate().map(move |(j, &x2)| vec![x1, x2, self.at(i, j)])
        });
        write_csv(path, &["x1", "x2", "phi"], rows)
    }
}

/// Richardson extrapolation `(4·fine − coarse)/3` on the coarse nodes;
/// `fine` must use `2·(n−1)+1` nodes per axis where `coarse` uses `n`.
pub fn richardson_2d(coarse: &FdGrid2D, fine: &FdGrid2D) -> FdGrid2D {
    assert_eq!(2 * (coarse.x1s.len() - 1) + 1, fine.x1s.len());
    assert_eq!(2 * (coarse.x2s.len() - 1) + 1, fine.x2s.len());
    let n2 = coarse.x2s.len();
    let values = coarse
        .values
        .iter()
        .enumerate()
        .map(|(k, c)| (4.0 * fine.at(2 * (k / n2), 2 * (k % n2)) - c) / 3.0)
        .collect();
    FdGrid2D { values, ..coarse.clone() }
}

/// Three-point stencil of `Pe d/dx − d²/dx²`: coefficients of the left, centre and right node.
fn stencil(pe: f64, h: f64) -> (f64, f64, f64) {
    (-1.0 / (h * h) - pe / (2.0 * h), 2.0 / (h * h), -1.0 / (h * h) + pe / (2.0 * h))
}

/// One axis of the grid: which nodes are unknown and the operator restricted to them.
struct Axis {
    xs: Vec<f64>,
    h: f64,
    unknown: Vec<usize>,
    op: DMatrix<f64>,
    lo: BcKind,
    hi: BcKind,
    st: (f64, f64, f64),
}

fn axis(pe: f64, half: f64, nodes: usize, lo: BcKind, hi: BcKind) -> Axis {
    let h = 2.0 * half / (nodes - 1) as f64;
    let xs: Vec<f64> = (0..nodes).map(|i| if i == nodes - 1 { half } else { -half + h * i as f64 }).collect();
    let first = if lo == BcKind::Neumann { 0 } else { 1 };
    let last = if hi == BcKind::Neumann { nodes - 1 } else { nodes - 2 };
    let unknown: Vec<usize> = (first..=last).collect();
    let st = stencil(pe, h);
    let n = unknown.len();
    let mut op = DMatrix::zeros(n, n);
    for (r, &i) in unknown.iter().enumerate() {
        op[(r, r)] = st.1;
        // ghost node folded onto the mirror neighbour at Neumann ends
        if i == 0 {
            op[(r, r + 1)] += st.0 + st.2;
        } else if i == nodes - 1 {
            op[(r, r - 1)] += st.0 + st.2;
        } else {
            if r > 0 {
                op[(r, r - 1)] = st.0;
            }
            if r + 1 < n {
                op[(r, r + 1)] = st.2;
            }
        }
    }
    Axis { xs, h, unknown, op, lo, hi, st }
}

/// Solves `A Y + Y B = C` for upper-triangular `A` (m×m) and `B` (n×n).
fn triangular_sylvester(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, c: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (m, n) = c.shape();
    let mut y = DMatrix::<Complex64>::zeros(m, n);
    for k in 0..n {
        let mut rhs: Vec<Complex64> = (0..m).map(|i| c[(i, k)]).collect();
        for l in 0..k {
            let s = b[(l, k)];
            if s != Complex64::new(0.0, 0.0) {
                for i in 0..m {
                    rhs[i] -= y[(i, l)] * s;
                }
            }
        }
        let shift = b[(k, k)];
        for i in (0..m).rev() {
            let mut v = rhs[i];
            for j in i + 1..m {
                v -= a[(i, j)] * y[(j, k)];
            }
            y[(i, k)] = v / (a[(i, i)] + shift);
        }
    }
    y
}

/// Central-difference solution of the rectangle problem on a `nodes × nodes` grid.
///
/// The unknowns form a matrix `U` with `(A1 − Pe·Da) U + U A2ᵀ = F`, solved
/// by Bartels–Stewart on complex Schur forms.
pub fn fd_solve_2d(p: &CdrParams2D, f: &SourceModel2D, bc: &EdgeBcSpec, nodes: usize) -> Result<FdGrid2D> {
    p.validate()?;
    let need = required_nodes(p.pe1(), 2.0 * p.a).max(required_nodes(p.pe2(), 2.0 * p.b)).max(3);
    if nodes < need {
        return Err(FsmError::FdStability { required: need, have: nodes });
    }
    let ax1 = axis(p.pe1(), p.a, nodes, bc.left.kind, bc.right.kind);
    let ax2 = axis(p.pe2(), p.b, nodes, bc.bottom.kind, bc.top.kind);
    let n1 = nodes;
    let n2 = nodes;

    // boundary values: Dirichlet edges give φ, Neumann edges the outward derivative
    let edge_val = |e: Edge, t: f64| data_edge_value(bc.edge(e), e, p, t);
    let mut full = vec![0.0; n1 * n2];
    for j in 0..n2 {
        if bc.left.kind == BcKind::Dirichlet {
            full[j] = edge_val(Edge::Left, ax2.xs[j])?;
        }
        if bc.right.kind == BcKind::Dirichlet {
            full[(n1 - 1) * n2 + j] = edge_val(Edge::Right, ax2.xs[j])?;
        }
    }
    for i in 0..n1 {
        if bc.bottom.kind == BcKind::Dirichlet {
            full[i * n2] = edge_val(Edge::Bottom, ax1.xs[i])?;
        }
        if bc.top.kind == BcKind::Dirichlet {
            full[i * n2 + n2 - 1] = edge_val(Edge::Top, ax1.xs[i])?;
        }
    }

    let (m, n) = (ax1.unknown.len(), ax2.unknown.len());
    let mut rhs = DMatrix::<f64>::zeros(m, n);
    for (r, &i) in ax1.unknown.iter().enumerate() {
        for (c, &j) in ax2.unknown.iter().enumerate() {
            let (x1, x2) = (ax1.xs[i], ax2.xs[j]);
            let mut v = f.value(x1, x2, p.a, p.b)?;
            // x1 neighbours
            if i == 0 {
                v -= ax1.st.0 * (-2.0 * ax1.h) * -edge_val(Edge::Left, x2)?;
            } else if i == n1 - 1 {
                v -= ax1.st.2 * 2.0 * ax1.h * edge_val(Edge::Right, x2)?;
            } else {
                if i == 1 && ax1.lo == BcKind::Dirichlet {
                    v -= ax1.st.0 * full[j];
                }
                if i == n1 - 2 && ax1.hi == BcKind::Dirichlet {
                    v -= ax1.st.2 * full[(n1 - 1) * n2 + j];
                }
            }
            // x2 neighbours
            if j == 0 {
                v -= ax2.st.0 * (-2.0 * ax2.h) * -edge_val(Edge::Bottom, x1)?;
            } else if j == n2 - 1 {
                v -= ax2.st.2 * 2.0 * ax2.h * edge_val(Edge::Top, x1)?;
            } else {
                if j == 1 && ax2.lo == BcKind::Dirichlet {
                    v -= ax2.st.0 * full[i * n2];
                }
                if j == n2 - 2 && ax2.hi == BcKind::Dirichlet {
                    v -= ax2.st.2 * full[i * n2 + n2 - 1];
                }
            }
            rhs[(r, c)] = v;
        }
    }

    let shifted = &ax1.op - DMatrix::identity(m, m) * p.pe_da();
    let (q1, t1) = shifted.map(Complex64::from).schur().unpack();
    let (q2, t2) = ax2.op.transpose().map(Complex64::from).schur().unpack();
    let c = q1.adjoint() * rhs.map(Complex64::from) * &q2;
    let y = triangular_sylvester(&t1, &t2, &c);
    let u = q1 * y * q2.adjoint();

    for (r, &i) in ax1.unknown.iter().enumerate() {
        for (c, &j) in ax2.unknown.iter().enumerate() {
            full[i * n2 + j] = u[(r, c)].re;
        }
    }
    Ok(FdGrid2D { x1s: ax1.xs, x2s: ax2.xs, h1: ax1.h, h2: ax2.h, values: full })
}
