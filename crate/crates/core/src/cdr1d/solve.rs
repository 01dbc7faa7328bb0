use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use super::basis::{homogeneous_basis, HomogeneousBasis1D};
use super::particular::{particular, Method, MAX_COND};
use super::roots::CdrParams1D;
use super::supplementary::{build_interpolant, build_supplementary, has_slow_root, ScaledPoly, SupplementarySpec};
use crate::error::{FsmError, Result};
use crate::linalg::cond1_estimate;
use crate::series::{fourier_coeffs, SourceModel, TrigSeries1D};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BcKind {
    Dirichlet,
    Neumann,
}

impl BcKind {
    fn order(self) -> usize {
        match self {
            BcKind::Dirichlet => 0,
            BcKind::Neumann => 1,
        }
    }
}

/// Prescribed value (Dirichlet) or slope `dφ/dx` (Neumann) at one end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCondition1D {
    pub kind: BcKind,
    pub value: f64,
}

impl BoundaryCondition1D {
    pub fn dirichlet(value: f64) -> Self {
        BoundaryCondition1D { kind: BcKind::Dirichlet, value }
    }

    pub fn neumann(value: f64) -> Self {
        BoundaryCondition1D { kind: BcKind::Neumann, value }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bcs1D {
    pub left: BoundaryCondition1D,
    pub right: BoundaryCondition1D,
}

impl Bcs1D {
    pub fn dirichlet(left: f64, right: f64) -> Self {
        Bcs1D { left: BoundaryCondition1D::dirichlet(left), right: BoundaryCondition1D::dirichlet(right) }
    }

    fn sides(&self) -> [BoundaryCondition1D; 2] {
        [self.left, self.right]
    }
}

/// A fully specified 1D solve on `[center − a, center + a]`.
///
/// Delta and pulse positions are physical coordinates; polynomial sources are
/// written in powers of `(x − center)/a`.
#[derive(Debug, Clone)]
pub struct Problem1D {
    pub params: CdrParams1D,
    pub center: f64,
    pub source: SourceModel,
    pub bcs: Bcs1D,
    pub m: usize,
    pub supplementary: SupplementarySpec,
    pub method: Method,
}

impl Problem1D {
    /// Problem centred at the origin.
    pub fn centered(
        params: CdrParams1D,
        source: SourceModel,
        bcs: Bcs1D,
        m: usize,
        n1s: usize,
        method: Method,
    ) -> Self {
        Problem1D { params, center: 0.0, source, bcs, m, supplementary: SupplementarySpec { n1s }, method }
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.center - self.params.a, self.center + self.params.a)
    }
}

/// Move positions of a physically placed source into the frame centred at `center`.
pub(crate) fn to_local(f: &SourceModel, center: f64) -> SourceModel {
    if center == 0.0 {
        return f.clone();
    }
    match f {
        SourceModel::Polynomial { .. } => f.clone(),
        SourceModel::DiracDelta { position, strength } => {
            SourceModel::DiracDelta { position: position - center, strength: *strength }
        }
        SourceModel::RectPulse { center: c, half_width, area } => {
            SourceModel::RectPulse { center: c - center, half_width: *half_width, area: *area }
        }
        SourceModel::Sampled(g) => {
            let g = g.0.clone();
            SourceModel::sampled(move |x| g(x + center))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics1D {
    /// 1-norm condition estimate of the row-equilibrated boundary matrix.
    pub rf_cond: f64,
    /// Worst condition estimate of the particular-solution systems.
    pub particular_cond: f64,
    /// Absolute boundary-condition residuals, left then right.
    pub bc_residuals: [f64; 2],
}

/// Composite solution `φ0 + Φ1·q1 + φs` on a centred frame.
#[derive(Debug, Clone, Serialize)]
pub struct FsmSolution1D {
    pub params: CdrParams1D,
    pub center: f64,
    pub q0: TrigSeries1D,
    pub q1: [f64; 2],
    pub supplementary: ScaledPoly,
    #[serde(skip)]
    pub basis: HomogeneousBasis1D,
    /// Boundary matrix: one row per side, the basis trace matching its condition.
    pub rf: [[f64; 2]; 2],
    pub bc_kinds: [BcKind; 2],
    pub diagnostics: Diagnostics1D,
}

impl FsmSolution1D {
    pub fn interval(&self) -> (f64, f64) {
        (self.center - self.params.a, self.center + self.params.a)
    }

    /// `k`-th derivative at the physical point `x`, `k ≤ 2`.
    pub fn eval(&self, x: f64, k: usize) -> Result<f64> {
        if k > 2 {
            return Err(FsmError::DerivativeOrder(k));
        }
        let (lo, hi) = self.interval();
        let tol = 1e-12 * self.params.a;
        if x.is_nan() || x < lo - tol || x > hi + tol {
            return Err(FsmError::Domain { x, lo, hi });
        }
        Ok(self.eval_local((x - self.center).clamp(-self.params.a, self.params.a), k))
    }

    pub(crate) fn eval_local(&self, x: f64, k: usize) -> f64 {
        self.q0.eval_unchecked(x, k) + self.eval_general(x, k) + self.supplementary.eval(x, k)
    }

    fn eval_general(&self, x: f64, k: usize) -> f64 {
        self.q1[0] * self.basis.eval(0, x, k) + self.q1[1] * self.basis.eval(1, x, k)
    }

    fn rf_inverse(&self) -> Matrix2<f64> {
        let m = Matrix2::new(self.rf[0][0], self.rf[0][1], self.rf[1][0], self.rf[1][1]);
        m.try_inverse().unwrap_or_else(Matrix2::zeros)
    }

    fn boundary_data(&self) -> Vector2<f64> {
        let a = self.params.a;
        let k = self.bc_kinds.map(BcKind::order);
        Vector2::new(self.eval_local(-a, k[0]), self.eval_local(a, k[1]))
    }

    /// Sensitivity of `φ^{(k)}(x)` to the boundary data `(q_b,left, q_b,right)`.
    pub fn boundary_gain(&self, x: f64, k: usize) -> [f64; 2] {
        let xl = x - self.center;
        let row = nalgebra::RowVector2::new(self.basis.eval(0, xl, k), self.basis.eval(1, xl, k));
        let g = row * self.rf_inverse();
        [g[0], g[1]]
    }

    /// Boundary-driven part `φb = Φ1·Rf⁻¹·q_b`.
    pub fn eval_boundary_part(&self, x: f64, k: usize) -> f64 {
        let g = self.boundary_gain(x, k);
        let qb = self.boundary_data();
        g[0] * qb[0] + g[1] * qb[1]
    }

    /// Forced part `φf = φ − φb`, the solution for homogeneous boundary data.
    pub fn eval_forced_part(&self, x: f64, k: usize) -> f64 {
        self.eval_local(x - self.center, k) - self.eval_boundary_part(x, k)
    }

    /// Same source and operator with new boundary data.
    pub fn with_boundary_values(&self, left: f64, right: f64) -> FsmSolution1D {
        let delta = Vector2::new(left, right) - self.boundary_data();
        let dq = self.rf_inverse() * delta;
        let mut out = self.clone();
        out.q1 = [self.q1[0] + dq[0], self.q1[1] + dq[1]];
        out.diagnostics.bc_residuals = out.bc_residual_values([left, right]);
        out
    }

    fn bc_residual_values(&self, target: [f64; 2]) -> [f64; 2] {
        let d = self.boundary_data();
        [(d[0] - target[0]).abs(), (d[1] - target[1]).abs()]
    }

    /// Samples `(x, φ, φ', φ'')` at `n` uniform points.
    pub fn profile(&self, n: usize) -> Vec<[f64; 4]> {
        let (lo, hi) = self.interval();
        (0..n)
            .map(|i| {
                let x = if n == 1 { lo } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
                let xl = (x - self.center).clamp(-self.params.a, self.params.a);
                [x, self.eval_local(xl, 0), self.eval_local(xl, 1), self.eval_local(xl, 2)]
            })
            .collect()
    }
}

/// Full pipeline: interpolate, supplementary, particular, boundary assembly.
pub fn assemble_and_solve(prob: &Problem1D) -> Result<FsmSolution1D> {
    let p = prob.params;
    p.validate()?;
    let a = p.a;
    if prob.m == 0 {
        return Err(FsmError::config("M must be at least 1"));
    }
    let f = to_local(&prob.source, prob.center);
    f.validate(a)?;
    if !f.is_pointwise() && prob.supplementary.n1s > 0 {
        return Err(FsmError::UnsupportedInterpolation(
            "a Dirac delta source requires N1s = 0 (no interpolating polynomial)",
        ));
    }

    let mut fs = build_interpolant(&f, prob.supplementary, a)?;
    let mut fp = fourier_coeffs(&f, a, prob.m)?;
    if !fs.is_zero() {
        let fs_coeffs = fourier_coeffs(&SourceModel::Polynomial { coeffs: fs.coeffs.clone() }, a, prob.m)?;
        fp = fp.add_scaled(&fs_coeffs, -1.0);
    }
    if has_slow_root(&p) {
        // the constant mode is (nearly) in the kernel of L; hand it to the polynomial solve
        let mean = 0.5 * fp.cos_coeff(0);
        if mean != 0.0 {
            if fs.coeffs.is_empty() {
                fs.coeffs.push(0.0);
            }
            fs.coeffs[0] += mean;
        }
        fp.set_cos(0, 0.0);
    }
    let phi_s = build_supplementary(&p, &fs);
    let part = particular(&p, &fp, prob.method)?;
    let basis = homogeneous_basis(&p);

    let kinds = [prob.bcs.left.kind, prob.bcs.right.kind];
    let ends = [-a, a];
    let mut rf = DMatrix::zeros(2, 2);
    let mut rhs = DVector::zeros(2);
    for (i, bc) in prob.bcs.sides().iter().enumerate() {
        let k = bc.kind.order();
        let x = ends[i];
        rf[(i, 0)] = basis.eval(0, x, k);
        rf[(i, 1)] = basis.eval(1, x, k);
        rhs[i] = bc.value - part.q0.eval_unchecked(x, k) - phi_s.eval(x, k);
    }
    // each row is one boundary equation; a layer may leave a whole row tiny
    let mut scaled = rf.clone();
    let mut scaled_rhs = rhs.clone();
    for i in 0..2 {
        let s = scaled.row(i).amax();
        if s > 0.0 {
            scaled.row_mut(i).unscale_mut(s);
            scaled_rhs[i] /= s;
        }
    }
    let rf_cond = cond1_estimate(&scaled);
    if !rf_cond.is_finite() || rf_cond > MAX_COND {
        return Err(FsmError::IllConditioned { what: "boundary matrix", cond: rf_cond });
    }
    let q1 = scaled.lu().solve(&scaled_rhs).ok_or(FsmError::IllConditioned { what: "boundary matrix", cond: rf_cond })?;

    let mut sol = FsmSolution1D {
        params: p,
        center: prob.center,
        q0: part.q0,
        q1: [q1[0], q1[1]],
        supplementary: phi_s,
        basis,
        rf: [[rf[(0, 0)], rf[(0, 1)]], [rf[(1, 0)], rf[(1, 1)]]],
        bc_kinds: kinds,
        diagnostics: Diagnostics1D { rf_cond, particular_cond: part.cond, bc_residuals: [0.0; 2] },
    };
    sol.diagnostics.bc_residuals = sol.bc_residual_values([prob.bcs.left.value, prob.bcs.right.value]);
    Ok(sol)
}
