//! Cubic source on [0, 1] solved exactly with three supplementary nodes.

use fsm_cdr::cdr1d::{assemble_and_solve, ProblemFile1D};

const PROBLEM: &str = r#"{
    "interval": [0, 1], "Pe": 3, "Da": 90,
    "bc": {"left": {"kind": "dirichlet", "value": 1}, "right": {"kind": "dirichlet", "value": 0}},
    "source": {"type": "polynomial", "coeffs": [1000, 2000, 5000, 10000]},
    "M": 10, "N1s": 3
}"#;

fn main() -> fsm_cdr::Result<()> {
    let file = ProblemFile1D::from_json(PROBLEM)?;
    let sol = assemble_and_solve(&file.to_problem()?)?;
    println!("boundary residuals {:?}", sol.diagnostics.bc_residuals);
    println!("largest series coefficient {:.2e}", sol.q0.max_abs_coeff());
    println!("{:>6} {:>14} {:>14}", "x", "phi", "dphi");
    for [x, phi, dphi, _] in sol.profile(11) {
        println!("{x:>6.2} {phi:>14.6e} {dphi:>14.6e}");
    }
    Ok(())
}
