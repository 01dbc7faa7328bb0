//! Convergence curves of the 1D experiments written as CSV and JSON.

use fsm_cdr::experiments::report::write_experiment_1d;
use fsm_cdr::experiments::{Experiment1D, M_SEQUENCE};

fn main() -> fsm_cdr::Result<()> {
    let out = std::env::temp_dir().join("fsm-convergence-1d");
    for id in ["1a", "2c", "3d"] {
        let curve = write_experiment_1d(&Experiment1D::by_id(id)?, &M_SEQUENCE, &out)?;
        let last = curve.points.last().map(|p| p.report.get("0").overall).unwrap_or(f64::NAN);
        println!("{id}: error at M = 40 {last:.3e}");
    }
    println!("written to {}", out.display());
    Ok(())
}
