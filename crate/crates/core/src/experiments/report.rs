//! On-disk layout of experiment runs: `<out>/<id>/curve.csv`, `fields/*.csv`, `meta.json`.

use std::path::{Path, PathBuf};

use serde::Serialize;

use super::conv1d::{cubic_source, run_convergence_1d, ConvergenceCurve, Experiment1D};
use super::conv2d::{reference_field_rows, run_convergence_2d, Experiment2D};
use super::green1d::{flux_jump, green_subinterval, run_green_1d, GreenProfile, GreenScheme};
use super::metrics::GRID_2D;
use super::oracle::OracleReport;
use crate::cdr1d::{assemble_and_solve, Diagnostics1D};
use crate::cdr2d::problem::write_field;
use crate::cdr2d::Diagnostics2D;
use crate::error::Result;
use crate::output::{fmt_f64, write_csv, write_json};

/// Truncation of the dumped 2D fields.
pub const FIELD_TRUNCATION: usize = 40;

/// `curve.csv`: integer `M`, `N` (empty in 1D), then the metric columns.
pub fn write_curve(path: &Path, curve: &ConvergenceCurve) -> Result<()> {
    let (header, _) = curve.table();
    let mut s = header.join(",");
    s.push('\n');
    for p in &curve.points {
        let n = p.n.map(|n| n.to_string()).unwrap_or_default();
        let vals: Vec<String> = p.report.columns().into_iter().map(|(_, v)| fmt_f64(v)).collect();
        s.push_str(&format!("{},{n},{}\n", p.m, vals.join(",")));
    }
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, s)?;
    Ok(())
}

#[derive(Serialize)]
struct Meta1D<'a> {
    experiment: &'a Experiment1D,
    #[serde(rename = "M")]
    ms: &'a [usize],
    diagnostics: Diagnostics1D,
    curve: &'a ConvergenceCurve,
}

/// Runs one 1D experiment and writes `<out>/<id>/{curve.csv, meta.json}`.
pub fn write_experiment_1d(exp: &Experiment1D, ms: &[usize], out: &Path) -> Result<ConvergenceCurve> {
    let dir = out.join(&exp.id);
    let curve = run_convergence_1d(exp, ms)?;
    let last = ms.iter().copied().max().unwrap_or(1);
    let diagnostics = assemble_and_solve(&exp.problem(cubic_source(), last))?.diagnostics;
    write_curve(&dir.join("curve.csv"), &curve)?;
    write_json(&dir.join("meta.json"), &Meta1D { experiment: exp, ms, diagnostics, curve: &curve })?;
    Ok(curve)
}

#[derive(Serialize)]
struct Meta2D<'a> {
    experiment: &'a Experiment2D,
    truncations: &'a [(usize, usize)],
    field_truncation: usize,
    diagnostics: Diagnostics2D,
    curve: &'a ConvergenceCurve,
}

/// Runs one 2D experiment and writes the curve, the `M = N = 40` fields and `meta.json`.
pub fn write_experiment_2d(exp: &Experiment2D, truncations: &[(usize, usize)], out: &Path) -> Result<ConvergenceCurve> {
    let dir = out.join(&exp.id);
    let curve = run_convergence_2d(exp, truncations)?;
    let (sol, reference) = exp.solve(FIELD_TRUNCATION, FIELD_TRUNCATION)?;
    write_curve(&dir.join("curve.csv"), &curve)?;
    write_field(&dir.join("fields").join("fsm.csv"), sol.field(GRID_2D))?;
    write_field(&dir.join("fields").join("reference.csv"), reference_field_rows(&reference, GRID_2D))?;
    let meta = Meta2D {
        experiment: exp,
        truncations,
        field_truncation: FIELD_TRUNCATION,
        diagnostics: sol.diagnostics,
        curve: &curve,
    };
    write_json(&dir.join("meta.json"), &meta)?;
    Ok(curve)
}

#[derive(Serialize)]
struct GreenMeta<'a> {
    #[serde(rename = "Pe")]
    pe: f64,
    #[serde(rename = "Da")]
    da: f64,
    scheme: GreenScheme,
    knobs: &'a [f64],
    /// `φ'` jump across the pulse for each `a2` (subinterval scheme only).
    flux_jumps: Vec<f64>,
}

/// Directory name of one point-source run, e.g. `green-whole-Pe3-Da90`.
pub fn green_id(pe: f64, da: f64, scheme: GreenScheme) -> String {
    let name = match scheme {
        GreenScheme::Whole => "whole",
        GreenScheme::Subinterval => "subinterval",
    };
    format!("green-{name}-Pe{pe}-Da{da}")
}

/// Writes one `profile_<k>.csv` per knob value plus `meta.json`.
pub fn write_green_1d(
    pe: f64,
    da: f64,
    scheme: GreenScheme,
    knobs: &[f64],
    samples: usize,
    out: &Path,
) -> Result<Vec<GreenProfile>> {
    let dir = out.join(green_id(pe, da, scheme));
    let profiles = run_green_1d(pe, da, scheme, knobs, samples)?;
    for (k, p) in profiles.iter().enumerate() {
        write_csv(&dir.join(format!("profile_{k}.csv")), &["x", "phi", "dphi"], p.samples.iter().map(|r| r.to_vec()))?;
    }
    let flux_jumps = match scheme {
        GreenScheme::Whole => Vec::new(),
        GreenScheme::Subinterval => {
            knobs.iter().map(|&a2| flux_jump(&green_subinterval(pe, da, a2)?)).collect::<Result<_>>()?
        }
    };
    write_json(&dir.join("meta.json"), &GreenMeta { pe, da, scheme, knobs, flux_jumps })?;
    Ok(profiles)
}

/// Writes `<out>/oracle/<dim>d-<id>.json`.
pub fn write_oracle(report: &OracleReport, out: &Path) -> Result<PathBuf> {
    let path = out.join("oracle").join(format!("{}d-{}.json", report.dim, report.id));
    write_json(&path, report)?;
    Ok(path)
}
