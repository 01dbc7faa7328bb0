use std::path::Path;

use serde::{Deserialize, Serialize};

use super::edges::EdgeBcSpec;
use super::family::reference_solution;
use super::params::CdrParams2D;
use super::solve::{FsmSolution2D, Problem2D};
use crate::error::{FsmError, Result};
use crate::output::{write_csv, write_json};
use crate::series::SourceModel2D;

fn zero_source() -> SourceModel2D {
    SourceModel2D::Zero
}

/// On-disk description of a 2D problem.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile2D {
    pub a: f64,
    pub b: f64,
    #[serde(rename = "Pe")]
    pub pe: f64,
    #[serde(rename = "Da")]
    pub da: f64,
    pub theta: f64,
    pub bc: EdgeBcSpec,
    #[serde(default = "zero_source")]
    pub source: SourceModel2D,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
}

impl ProblemFile2D {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| FsmError::config(format!("malformed 2D problem: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FsmError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_problem(&self) -> Result<Problem2D> {
        let params = CdrParams2D::new(self.pe, self.da, self.theta, self.a, self.b)?;
        Ok(Problem2D {
            params,
            source: self.source.clone(),
            bc: self.bc.resolve(|| reference_solution(&params)),
            m: self.m,
            n: self.n,
        })
    }
}

/// Write `solution.json` and `field.csv` on a `grid × grid` lattice.
pub fn export_solution_2d(sol: &FsmSolution2D, dir: &Path, grid: usize) -> Result<()> {
    write_json(&dir.join("solution.json"), sol)?;
    write_field(&dir.join("field.csv"), sol.field(grid))
}

pub fn write_field(path: &Path, rows: Vec<[f64; 5]>) -> Result<()> {
    write_csv(path, &["x1", "x2", "phi", "dphi_dx1", "dphi_dx2"], rows.into_iter().map(|r| r.to_vec()))
}
