use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::particular::{Method, MAX_COND};
use super::roots::CdrParams1D;
use super::solve::{assemble_and_solve, to_local, BcKind, Bcs1D, FsmSolution1D, Problem1D};
use super::supplementary::SupplementarySpec;
use crate::error::{FsmError, Result};
use crate::linalg::solve_square;
use crate::series::SourceModel;

/// Scheme used on one subinterval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubdomainScheme {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N1s")]
    pub n1s: usize,
    pub method: Method,
}

/// Partition of `[breakpoints[0], breakpoints[K]]` into `K` subintervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiDomainSpec {
    #[serde(rename = "Pe")]
    pub pe: f64,
    #[serde(rename = "Da")]
    pub da: f64,
    pub breakpoints: Vec<f64>,
    pub schemes: Vec<SubdomainScheme>,
}

impl MultiDomainSpec {
    pub fn uniform_scheme(pe: f64, da: f64, breakpoints: Vec<f64>, scheme: SubdomainScheme) -> Self {
        let k = breakpoints.len().saturating_sub(1);
        MultiDomainSpec { pe, da, breakpoints, schemes: vec![scheme; k] }
    }

    fn validate(&self) -> Result<()> {
        let k = self.breakpoints.len();
        if k < 3 {
            return Err(FsmError::config("multi-domain solve needs at least two subintervals"));
        }
        if self.schemes.len() != k - 1 {
            return Err(FsmError::config("one scheme per subinterval is required"));
        }
        if self.breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(FsmError::config("breakpoints must be strictly increasing"));
        }
        Ok(())
    }
}

/// Piecewise solution with the interface values it was patched from.
#[derive(Debug, Clone, Serialize)]
pub struct PiecewiseSolution1D {
    pub pieces: Vec<FsmSolution1D>,
    pub breakpoints: Vec<f64>,
    /// Solution values at all breakpoints, outer ends included.
    pub node_values: Vec<f64>,
    pub interface_cond: f64,
    /// Largest `|φ⁻ − φ⁺|` and `|φ'⁻ − φ'⁺|` over internal breakpoints.
    pub continuity_residuals: [f64; 2],
}

impl PiecewiseSolution1D {
    fn piece_index(&self, x: f64) -> Result<usize> {
        let lo = self.breakpoints[0];
        let hi = *self.breakpoints.last().unwrap();
        let tol = 1e-12 * (hi - lo);
        if x.is_nan() || x < lo - tol || x > hi + tol {
            return Err(FsmError::Domain { x, lo, hi });
        }
        let k = self.pieces.len();
        Ok(self.breakpoints[1..k].iter().take_while(|&&b| x > b).count())
    }

    /// `k`-th derivative at `x`; breakpoints are evaluated on their left piece.
    pub fn eval(&self, x: f64, k: usize) -> Result<f64> {
        let i = self.piece_index(x)?;
        let (lo, hi) = self.pieces[i].interval();
        self.pieces[i].eval(x.clamp(lo, hi), k)
    }

    /// One-sided value at a breakpoint: `side = 0` left piece, `1` right piece.
    pub fn eval_at_breakpoint(&self, j: usize, k: usize, side: usize) -> Result<f64> {
        let piece = if side == 0 { j - 1 } else { j };
        self.pieces[piece].eval(self.breakpoints[j], k)
    }
}

/// Patch subinterval solutions through value and flux continuity at the
/// internal breakpoints.
///
/// Source positions are physical; polynomial sources are written in powers of
/// `(x − c)/A` with `c, A` the centre and half-length of the whole interval.
pub fn solve_multidomain(md: &MultiDomainSpec, f: &SourceModel, bcs: Bcs1D) -> Result<PiecewiseSolution1D> {
    md.validate()?;
    let bp = &md.breakpoints;
    let k = bp.len() - 1;
    let lo = bp[0];
    let hi = bp[k];
    let big_c = 0.5 * (lo + hi);
    let big_a = 0.5 * (hi - lo);
    let global = to_local(f, big_c);
    global.validate(big_a)?;

    // forced solutions with homogeneous Dirichlet data on every piece
    let mut forced = Vec::with_capacity(k);
    for (i, scheme) in md.schemes.iter().enumerate() {
        let c = 0.5 * (bp[i] + bp[i + 1]);
        let h = 0.5 * (bp[i + 1] - bp[i]);
        let local = global.restrict(big_a, c - big_c, h)?;
        let prob = Problem1D {
            params: CdrParams1D::new(md.pe, md.da, h)?,
            center: 0.0,
            source: local,
            bcs: Bcs1D::dirichlet(0.0, 0.0),
            m: scheme.m,
            supplementary: SupplementarySpec { n1s: scheme.n1s },
            method: scheme.method,
        };
        let mut s = assemble_and_solve(&prob)?;
        s.center = c;
        forced.push(s);
    }

    // unknowns: node values φ_0..φ_K
    let n = k + 1;
    let mut mat = DMatrix::zeros(n, n);
    let mut rhs = DVector::zeros(n);
    let outer = [(0usize, bcs.left, lo, 0usize), (k, bcs.right, hi, k - 1)];
    for &(row, bc, x, piece) in &outer {
        match bc.kind {
            BcKind::Dirichlet => {
                mat[(row, row)] = 1.0;
                rhs[row] = bc.value;
            }
            BcKind::Neumann => {
                let g = forced[piece].boundary_gain(x, 1);
                mat[(row, piece)] += g[0];
                mat[(row, piece + 1)] += g[1];
                rhs[row] = bc.value - forced[piece].eval_forced_part(x, 1);
            }
        }
    }
    for j in 1..k {
        let x = bp[j];
        let (l, r) = (&forced[j - 1], &forced[j]);
        let gl = l.boundary_gain(x, 1);
        let gr = r.boundary_gain(x, 1);
        mat[(j, j - 1)] += gl[0];
        mat[(j, j)] += gl[1] - gr[0];
        mat[(j, j + 1)] -= gr[1];
        rhs[j] = r.eval_forced_part(x, 1) - l.eval_forced_part(x, 1);
    }
    let sol = solve_square(&mat, &rhs, "interface system", MAX_COND)?;
    let values: Vec<f64> = sol.x.iter().copied().collect();

    let pieces: Vec<FsmSolution1D> = forced
        .iter()
        .enumerate()
        .map(|(i, s)| s.with_boundary_values(values[i], values[i + 1]))
        .collect();
    let mut res = [0.0f64; 2];
    for j in 1..k {
        for (kk, r) in res.iter_mut().enumerate() {
            let a = pieces[j - 1].eval(bp[j], kk)?;
            let b = pieces[j].eval(bp[j], kk)?;
            *r = r.max((a - b).abs() / a.abs().max(b.abs()).max(1.0));
        }
    }
    Ok(PiecewiseSolution1D {
        pieces,
        breakpoints: bp.clone(),
        node_values: values,
        interface_cond: sol.cond,
        continuity_residuals: res,
    })
}

/// Breakpoints of `[lo, hi]` isolating a pulse of half-width `a2` centred at `x0`.
pub fn pulse_partition(lo: f64, hi: f64, x0: f64, a2: f64) -> Vec<f64> {
    vec![lo, x0 - a2, x0 + a2, hi]
}
