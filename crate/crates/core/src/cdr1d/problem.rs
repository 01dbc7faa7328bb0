use std::path::Path;

use serde::{Deserialize, Serialize};

use super::particular::Method;
use super::roots::CdrParams1D;
use super::solve::{Bcs1D, FsmSolution1D, Problem1D};
use super::supplementary::SupplementarySpec;
use crate::error::{FsmError, Result};
use crate::output::{write_csv, write_json};
use crate::series::SourceModel;

/// On-disk description of a 1D problem.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile1D {
    pub interval: [f64; 2],
    #[serde(rename = "Pe")]
    pub pe: f64,
    #[serde(rename = "Da")]
    pub da: f64,
    pub bc: Bcs1D,
    pub source: SourceModel,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N1s", default)]
    pub n1s: usize,
    #[serde(default)]
    pub method: Method,
}

impl ProblemFile1D {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| FsmError::config(format!("malformed 1D problem: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FsmError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_problem(&self) -> Result<Problem1D> {
        let [lo, hi] = self.interval;
        if !(hi > lo) {
            return Err(FsmError::config(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Problem1D {
            params: CdrParams1D::new(self.pe, self.da, 0.5 * (hi - lo))?,
            center: 0.5 * (lo + hi),
            source: self.source.clone(),
            bcs: self.bc,
            m: self.m,
            supplementary: SupplementarySpec { n1s: self.n1s },
            method: self.method,
        })
    }
}

/// Write `solution.json` (coefficients and diagnostics) and `profile.csv`.
pub fn export_solution(sol: &FsmSolution1D, dir: &Path, samples: usize) -> Result<()> {
    write_json(&dir.join("solution.json"), sol)?;
    write_csv(
        &dir.join("profile.csv"),
        &["x", "phi", "dphi", "d2phi"],
        sol.profile(samples).into_iter().map(|r| r.to_vec()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{
        "interval": [0, 1], "Pe": 3, "Da": 90,
        "bc": {"left": {"kind": "dirichlet", "value": 1}, "right": {"kind": "neumann", "value": 1}},
        "source": {"type": "polynomial", "coeffs": [1000, 2000]},
        "M": 40, "N1s": 1, "method": "cm"
    }"#;

    #[test]
    fn parses_and_translates() {
        let p = ProblemFile1D::from_json(DOC).unwrap().to_problem().unwrap();
        assert_eq!(p.params.a, 0.5);
        assert_eq!(p.center, 0.5);
        assert_eq!(p.method, Method::Cm);
        assert_eq!(p.supplementary.n1s, 1);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_intervals() {
        assert!(ProblemFile1D::from_json(&DOC.replace("\"M\"", "\"Q\"")).is_err());
        let bad = DOC.replace("[0, 1]", "[1, 1]");
        assert!(ProblemFile1D::from_json(&bad).unwrap().to_problem().is_err());
    }
}
