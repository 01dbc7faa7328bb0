use serde::Serialize;

use super::conv1d::{cubic_source, exact_polynomial_solution, Experiment1D};
use super::conv2d::Experiment2D;
use super::metrics::{max_relative_error, GRID_2D, SAMPLES_1D};
use crate::cdr1d::assemble_and_solve;
use crate::cdr2d::Problem2D;
use crate::error::{FsmError, Result};
use crate::verify::{fd_solve_1d, fd_solve_2d, richardson_2d, FdGrid2D, DEFAULT_NODES_1D, DEFAULT_NODES_2D};

pub const ORACLE_TOL_1D: f64 = 1e-3;
pub const ORACLE_TOL_2D: f64 = 5e-3;

/// Interior disagreement between the series solution, the FD oracle and the exact field.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub id: String,
    pub dim: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub nodes: usize,
    pub fsm_vs_fd: f64,
    pub fd_vs_exact: f64,
    pub fsm_vs_exact: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// 1D check at truncation `m` over the strictly interior samples.
pub fn oracle_check_1d(exp: &Experiment1D, m: usize, nodes: usize) -> Result<OracleReport> {
    let p = exp.params();
    let sol = assemble_and_solve(&exp.problem(cubic_source(), m))?;
    let exact = exact_polynomial_solution(p, &[1e3, 2e3, 5e3, 1e4], exp.bcs)?;
    let (lo, hi) = sol.interval();
    let grid = fd_solve_1d(&p, 0.5 * (lo + hi), &cubic_source(), exp.bcs, nodes)?;
    let xs: Vec<f64> = (1..SAMPLES_1D - 1).map(|i| lo + (hi - lo) * i as f64 / (SAMPLES_1D - 1) as f64).collect();
    let fsm: Vec<f64> = xs.iter().map(|&x| sol.eval(x, 0)).collect::<Result<_>>()?;
    let ex: Vec<f64> = xs.iter().map(|&x| exact.eval(x, 0)).collect::<Result<_>>()?;
    let fd: Vec<f64> = xs.iter().map(|&x| grid.interpolate(x)).collect();
    let fsm_vs_fd = max_relative_error(&fsm, &fd);
    Ok(OracleReport {
        id: exp.id.clone(),
        dim: 1,
        m,
        nodes,
        fsm_vs_fd,
        fd_vs_exact: max_relative_error(&fd, &ex),
        fsm_vs_exact: max_relative_error(&fsm, &ex),
        tolerance: ORACLE_TOL_1D,
        pass: fsm_vs_fd <= ORACLE_TOL_1D,
    })
}

/// FD field on the lattice, Richardson-extrapolated from half the resolution
/// when that coarser grid is still stable.
fn fd_reference_2d(prob: &Problem2D, nodes: usize) -> Result<FdGrid2D> {
    let fine = fd_solve_2d(&prob.params, &prob.source, &prob.bc, nodes)?;
    if !(nodes - 1).is_multiple_of(2) || !((nodes - 1) / 2).is_multiple_of(GRID_2D - 1) {
        return Ok(fine);
    }
    match fd_solve_2d(&prob.params, &prob.source, &prob.bc, (nodes - 1) / 2 + 1) {
        Ok(coarse) => Ok(richardson_2d(&coarse, &fine)),
        Err(FsmError::FdStability { .. }) => Ok(fine),
        Err(e) => Err(e),
    }
}

/// 2D check at `M = N = m` on the internal points of the 101 × 101 lattice.
///
/// `nodes − 1` must be a multiple of 100 so the lattice falls on grid nodes.
pub fn oracle_check_2d(exp: &Experiment2D, m: usize, nodes: usize) -> Result<OracleReport> {
    let (prob, r) = exp.problem(m, m);
    let sol = crate::cdr2d::solve_2d(&prob)?;
    let grid = fd_reference_2d(&prob, nodes)?;
    let n = grid.x1s.len();
    let stride = (n - 1) / (GRID_2D - 1);
    let (a, b) = (prob.params.a, prob.params.b);
    let (mut fsm, mut fd, mut ex) = (Vec::new(), Vec::new(), Vec::new());
    for i in (stride..n - 1).step_by(stride) {
        for j in (stride..n - 1).step_by(stride) {
            let (x1, x2) = (grid.x1s[i], grid.x2s[j]);
            if x1.abs() > 0.99 * a || x2.abs() > 0.99 * b {
                continue;
            }
            fsm.push(sol.eval(x1, x2, 0, 0)?);
            fd.push(grid.at(i, j));
            ex.push(r.eval(x1, x2, 0, 0));
        }
    }
    let fsm_vs_fd = max_relative_error(&fsm, &fd);
    Ok(OracleReport {
        id: exp.id.clone(),
        dim: 2,
        m,
        nodes,
        fsm_vs_fd,
        fd_vs_exact: max_relative_error(&fd, &ex),
        fsm_vs_exact: max_relative_error(&fsm, &ex),
        tolerance: ORACLE_TOL_2D,
        pass: fsm_vs_fd <= ORACLE_TOL_2D,
    })
}

pub fn default_oracle_1d(exp: &Experiment1D) -> Result<OracleReport> {
    oracle_check_1d(exp, 40, DEFAULT_NODES_1D)
}

pub fn default_oracle_2d(exp: &Experiment2D) -> Result<OracleReport> {
    oracle_check_2d(exp, 40, DEFAULT_NODES_2D)
}
