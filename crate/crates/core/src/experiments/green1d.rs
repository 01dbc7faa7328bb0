use serde::{Deserialize, Serialize};

use crate::cdr1d::multidomain::pulse_partition;
use crate::cdr1d::{
    assemble_and_solve, solve_multidomain, Bcs1D, CdrParams1D, Method, MultiDomainSpec, PiecewiseSolution1D, Problem1D,
    SubdomainScheme, SupplementarySpec,
};
use crate::error::Result;
use crate::series::SourceModel;

pub const GREEN_POSITION: f64 = 0.5;
pub const GREEN_STRENGTH: f64 = 1000.0;
pub const DEFAULT_WHOLE_M: [usize; 4] = [10, 40, 160, 640];
pub const DEFAULT_A2: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];
/// Truncation used on every subinterval; the restricted sources are linear so
/// the Fourier part vanishes.
pub const SUBINTERVAL_M: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GreenScheme {
    Whole,
    Subinterval,
}

/// `φ(0) = 1`, `φ(1) = 0` on `[0, 1]`.
pub fn green_bcs() -> Bcs1D {
    Bcs1D::dirichlet(1.0, 0.0)
}

/// Whole-interval solve of the point-source problem with `M` modes.
pub fn green_whole(pe: f64, da: f64, m: usize) -> Result<crate::cdr1d::FsmSolution1D> {
    let prob = Problem1D {
        params: CdrParams1D::new(pe, da, 0.5)?,
        center: 0.5,
        source: SourceModel::DiracDelta { position: GREEN_POSITION, strength: GREEN_STRENGTH },
        bcs: green_bcs(),
        m,
        supplementary: SupplementarySpec { n1s: 0 },
        method: Method::Fccm,
    };
    assemble_and_solve(&prob)
}

/// Three-subinterval solve with the point source spread over `[x0 − a2, x0 + a2]`.
pub fn green_subinterval(pe: f64, da: f64, a2: f64) -> Result<PiecewiseSolution1D> {
    let md = MultiDomainSpec::uniform_scheme(
        pe,
        da,
        pulse_partition(0.0, 1.0, GREEN_POSITION, a2),
        SubdomainScheme { m: SUBINTERVAL_M, n1s: 1, method: Method::Fccm },
    );
    let pulse = SourceModel::RectPulse { center: GREEN_POSITION, half_width: a2, area: GREEN_STRENGTH };
    solve_multidomain(&md, &pulse, green_bcs())
}

/// Sampled `(x, φ, φ')` profile of one knob value.
#[derive(Debug, Clone, Serialize)]
pub struct GreenProfile {
    pub knob: f64,
    pub samples: Vec<[f64; 3]>,
}

fn sample(f: &dyn Fn(f64, usize) -> Result<f64>, n: usize) -> Result<Vec<[f64; 3]>> {
    (0..n)
        .map(|i| {
            let x = i as f64 / (n - 1) as f64;
            Ok([x, f(x, 0)?, f(x, 1)?])
        })
        .collect()
}

/// Profiles for every knob value: `M` for the whole scheme, `a2` for the subinterval scheme.
pub fn run_green_1d(pe: f64, da: f64, scheme: GreenScheme, knobs: &[f64], samples: usize) -> Result<Vec<GreenProfile>> {
    knobs
        .iter()
        .map(|&knob| {
            let samples = match scheme {
                GreenScheme::Whole => {
                    let s = green_whole(pe, da, knob as usize)?;
                    sample(&|x, k| s.eval(x, k), samples)?
                }
                GreenScheme::Subinterval => {
                    let s = green_subinterval(pe, da, knob)?;
                    sample(&|x, k| s.eval(x, k), samples)?
                }
            };
            Ok(GreenProfile { knob, samples })
        })
        .collect()
}

/// Jump `φ'(x0 − a2) − φ'(x0 + a2)` across the pulse subinterval.
pub fn flux_jump(s: &PiecewiseSolution1D) -> Result<f64> {
    Ok(s.eval_at_breakpoint(1, 1, 0)? - s.eval_at_breakpoint(2, 1, 1)?)
}
