use std::f64::consts::PI;

use serde::Serialize;

use super::conv1d::{ConvergenceCurve, CurvePoint, M_SEQUENCE, PARAM_SETS};
use super::metrics::{measure_errors_2d, ErrorReport, GRID_2D};
use crate::cdr2d::{reference_solution, solve_2d, BcPattern, CdrParams2D, EdgeBcSpec, FsmSolution2D, Problem2D, ReferenceField};
use crate::error::{FsmError, Result};
use crate::series::SourceModel2D;

pub const EXPERIMENTS_2D: [&str; 16] =
    ["1a", "1b", "1c", "1d", "2a", "2b", "2c", "2d", "3a", "3b", "3c", "3d", "3e", "4a", "4b", "4c"];

const ANGLES: [f64; 4] = [PI / 3.0, PI / 4.0, PI / 6.0, 0.0];
const RATIOS: [f64; 5] = [1.0, 0.67, 0.5, 1.25, 2.0];
const PATTERNS: [BcPattern; 3] = [BcPattern::Dddd, BcPattern::Ddnd, BcPattern::Dnnd];

/// One row of the 2D comparative convergence study; `b = 1`, `a = ratio`.
#[derive(Debug, Clone, Serialize)]
pub struct Experiment2D {
    pub id: String,
    #[serde(rename = "Pe")]
    pub pe: f64,
    #[serde(rename = "Da")]
    pub da: f64,
    pub theta: f64,
    pub ratio: f64,
    pub pattern: BcPattern,
}

impl Experiment2D {
    /// Reference scheme: DDDD, `(3, 90)`, `θ = π/3`, square.
    pub fn reference(id: &str) -> Self {
        Experiment2D { id: id.to_string(), pe: 3.0, da: 90.0, theta: PI / 3.0, ratio: 1.0, pattern: BcPattern::Dddd }
    }

    pub fn by_id(id: &str) -> Result<Self> {
        let mut e = Self::reference(id);
        let bytes = id.as_bytes();
        let bad = || FsmError::config(format!("unknown 2D experiment '{id}'"));
        if bytes.len() != 2 || !bytes[1].is_ascii_lowercase() {
            return Err(bad());
        }
        let i = (bytes[1] - b'a') as usize;
        match bytes[0] {
            b'1' if i < 4 => (e.pe, e.da) = PARAM_SETS[i],
            b'2' if i < 4 => e.theta = ANGLES[i],
            b'3' if i < 5 => e.ratio = RATIOS[i],
            b'4' if i < 3 => e.pattern = PATTERNS[i],
            _ => return Err(bad()),
        }
        Ok(e)
    }

    pub fn params(&self) -> CdrParams2D {
        CdrParams2D { pe: self.pe, da: self.da, theta: self.theta, a: self.ratio, b: 1.0 }
    }

    /// Inverse-validation problem: the reference field's traces imposed with this layout.
    pub fn problem(&self, m: usize, n: usize) -> (Problem2D, ReferenceField) {
        let p = self.params();
        let r = reference_solution(&p);
        let prob =
            Problem2D { params: p, source: SourceModel2D::Zero, bc: EdgeBcSpec::from_reference(self.pattern, &r), m, n };
        (prob, r)
    }

    pub fn solve(&self, m: usize, n: usize) -> Result<(FsmSolution2D, ReferenceField)> {
        let (prob, r) = self.problem(m, n);
        Ok((solve_2d(&prob)?, r))
    }
}

/// Errors of `sol` against the closed-form field on the standard 101 × 101 lattice.
pub fn compare_2d(sol: &FsmSolution2D, reference: &ReferenceField) -> ErrorReport {
    let s = |x1: f64, x2: f64, k1: usize, k2: usize| sol.eval(x1, x2, k1, k2).unwrap_or(f64::NAN);
    let r = |x1: f64, x2: f64, k1: usize, k2: usize| reference.eval(x1, x2, k1, k2);
    measure_errors_2d(&s, &r, sol.params.a, sol.params.b, GRID_2D)
}

/// Convergence curve over the given `(M, N)` truncations.
pub fn run_convergence_2d(exp: &Experiment2D, truncations: &[(usize, usize)]) -> Result<ConvergenceCurve> {
    let mut points = Vec::with_capacity(truncations.len());
    for &(m, n) in truncations {
        let (sol, r) = exp.solve(m, n)?;
        points.push(CurvePoint { m, n: Some(n), report: compare_2d(&sol, &r) });
    }
    Ok(ConvergenceCurve { id: exp.id.clone(), points })
}

/// The standard truncation sequence with `N = M`.
pub fn square_truncations() -> Vec<(usize, usize)> {
    M_SEQUENCE.iter().map(|&m| (m, m)).collect()
}

/// `(x1, x2, φ, ∂φ/∂x1, ∂φ/∂x2)` of the reference field on a `grid × grid` lattice.
pub fn reference_field_rows(r: &ReferenceField, grid: usize) -> Vec<[f64; 5]> {
    let g = grid.max(2);
    let (a, b) = (r.params.a, r.params.b);
    let coord = |i: usize, h: f64| if i == g - 1 { h } else { -h + 2.0 * h * i as f64 / (g - 1) as f64 };
    let mut out = Vec::with_capacity(g * g);
    for i in 0..g {
        for j in 0..g {
            let (x1, x2) = (coord(i, a), coord(j, b));
            out.push([x1, x2, r.eval(x1, x2, 0, 0), r.eval(x1, x2, 1, 0), r.eval(x1, x2, 0, 1)]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_experiment_is_defined() {
        for id in EXPERIMENTS_2D {
            assert_eq!(Experiment2D::by_id(id).unwrap().id, id);
        }
        assert_eq!(Experiment2D::by_id("3c").unwrap().ratio, 0.5);
        assert_eq!(Experiment2D::by_id("4c").unwrap().pattern, BcPattern::Dnnd);
        assert_eq!(Experiment2D::by_id("2d").unwrap().theta, 0.0);
        assert_eq!(Experiment2D::by_id("1d").unwrap().pe, 200.0);
        for bad in ["1e", "5a", "3f", "", "1aa"] {
            assert!(Experiment2D::by_id(bad).is_err());
        }
    }

    #[test]
    fn self_comparison_is_zero() {
        let e = Experiment2D::reference("1a");
        let (_, r) = e.problem(2, 2);
        let f = |x1: f64, x2: f64, k1: usize, k2: usize| r.eval(x1, x2, k1, k2);
        let rep = measure_errors_2d(&f, &f, 1.0, 1.0, 11);
        assert!(rep.errors.iter().all(|e| e.overall == 0.0 && e.corner == Some(0.0)));
    }
}
