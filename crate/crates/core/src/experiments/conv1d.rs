use serde::Serialize;

use super::metrics::{measure_errors_1d, ErrorReport, SAMPLES_1D};
use crate::cdr1d::{assemble_and_solve, Bcs1D, BoundaryCondition1D, CdrParams1D, FsmSolution1D, Method, Problem1D};
use crate::error::{FsmError, Result};
use crate::series::SourceModel;

/// Truncations of the convergence studies.
pub const M_SEQUENCE: [usize; 7] = [2, 3, 5, 10, 20, 30, 40];

/// Half-length of the 1D experiments (interval `[0, 1]` centred at `1/2`).
pub const HALF_LENGTH_1D: f64 = 0.5;

/// The four operator parameter sets, from strong reaction to strong convection.
pub const PARAM_SETS: [(f64, f64); 4] = [(3.0, 90.0), (1.0, 30.0), (30.0, 1.0), (200.0, -1.0)];

pub const EXPERIMENTS_1D: [&str; 11] = ["1a", "1b", "2a", "2b", "2c", "3a", "3b", "3c", "3d", "4a", "4b"];

/// One row of the 1D comparative convergence study.
#[derive(Debug, Clone, Serialize)]
pub struct Experiment1D {
    pub id: String,
    #[serde(rename = "Pe")]
    pub pe: f64,
    #[serde(rename = "Da")]
    pub da: f64,
    pub bcs: Bcs1D,
    #[serde(rename = "N1s")]
    pub n1s: usize,
    pub method: Method,
}

impl Experiment1D {
    /// Reference scheme: DD with `φ(−a) = 1, φ(a) = 0`, `(3, 90)`, no interpolation, FCCM.
    pub fn reference(id: &str) -> Self {
        Experiment1D {
            id: id.to_string(),
            pe: 3.0,
            da: 90.0,
            bcs: Bcs1D::dirichlet(1.0, 0.0),
            n1s: 0,
            method: Method::Fccm,
        }
    }

    pub fn by_id(id: &str) -> Result<Self> {
        let mut e = Self::reference(id);
        match id {
            "1a" | "2a" | "3a" | "4a" => {}
            "1b" => e.method = Method::Cm,
            "2b" => e.n1s = 1,
            "2c" => e.n1s = 2,
            "3b" | "3c" | "3d" => {
                let i = (id.as_bytes()[1] - b'a') as usize;
                (e.pe, e.da) = PARAM_SETS[i];
            }
            "4b" => e.bcs.right = BoundaryCondition1D::neumann(1.0),
            _ => return Err(FsmError::config(format!("unknown 1D experiment '{id}'"))),
        }
        Ok(e)
    }

    pub fn params(&self) -> CdrParams1D {
        CdrParams1D { pe: self.pe, da: self.da, a: HALF_LENGTH_1D }
    }

    pub fn problem(&self, source: SourceModel, m: usize) -> Problem1D {
        Problem1D::centered(self.params(), source, self.bcs, m, self.n1s, self.method)
    }
}

/// Third-order source used throughout the convergence study.
pub fn cubic_source() -> SourceModel {
    SourceModel::Polynomial { coeffs: vec![1e3, 2e3, 5e3, 1e4] }
}

/// Exact solution for a polynomial source: interpolating at its own degree
/// leaves no Fourier residual.
pub fn exact_polynomial_solution(p: CdrParams1D, coeffs: &[f64], bcs: Bcs1D) -> Result<FsmSolution1D> {
    let n1s = coeffs.len().saturating_sub(1).max(1);
    let prob = Problem1D::centered(p, SourceModel::Polynomial { coeffs: coeffs.to_vec() }, bcs, 1, n1s, Method::Fccm);
    assemble_and_solve(&prob)
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvePoint {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub report: ErrorReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceCurve {
    pub id: String,
    pub points: Vec<CurvePoint>,
}

impl ConvergenceCurve {
    /// Header and rows of `curve.csv`.
    pub fn table(&self) -> (Vec<String>, Vec<Vec<f64>>) {
        let mut header = vec!["M".to_string(), "N".to_string()];
        if let Some(p) = self.points.first() {
            header.extend(p.report.columns().into_iter().map(|(k, _)| k));
        }
        let rows = self
            .points
            .iter()
            .map(|p| {
                let mut r = vec![p.m as f64, p.n.unwrap_or(0) as f64];
                r.extend(p.report.columns().into_iter().map(|(_, v)| v));
                r
            })
            .collect();
        (header, rows)
    }
}

/// Errors of `sol` against `reference` with the standard 10001 samples.
pub fn compare_1d(sol: &FsmSolution1D, reference: &FsmSolution1D) -> ErrorReport {
    let (lo, hi) = reference.interval();
    let s = |x: f64, k: usize| sol.eval(x, k).unwrap_or(f64::NAN);
    let r = |x: f64, k: usize| reference.eval(x, k).unwrap_or(f64::NAN);
    measure_errors_1d(&s, &r, lo, hi, SAMPLES_1D)
}

/// Convergence curve of one experiment against the exact cubic-source solution.
pub fn run_convergence_1d(exp: &Experiment1D, ms: &[usize]) -> Result<ConvergenceCurve> {
    let reference = exact_polynomial_solution(exp.params(), &[1e3, 2e3, 5e3, 1e4], exp.bcs)?;
    let mut points = Vec::with_capacity(ms.len());
    for &m in ms {
        let sol = assemble_and_solve(&exp.problem(cubic_source(), m))?;
        points.push(CurvePoint { m, n: None, report: compare_1d(&sol, &reference) });
    }
    Ok(ConvergenceCurve { id: exp.id.clone(), points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_experiment_is_defined() {
        for id in EXPERIMENTS_1D {
            let e = Experiment1D::by_id(id).unwrap();
            assert_eq!(e.id, id);
        }
        assert_eq!(Experiment1D::by_id("3c").unwrap().pe, 30.0);
        assert!(Experiment1D::by_id("5a").is_err());
    }

    #[test]
    fn cubic_solution_has_no_fourier_part() {
        for (pe, da) in PARAM_SETS {
            let s = exact_polynomial_solution(CdrParams1D::new(pe, da, 0.5).unwrap(), &[1e3, 2e3, 5e3, 1e4], Bcs1D::dirichlet(1.0, 0.0))
                .unwrap();
            assert!(s.q0.max_abs_coeff() <= 1e-12 * 1e4);
        }
    }
}
