//! Finite-difference cross-check of the series solutions.

use fsm_cdr::experiments::{oracle_check_1d, oracle_check_2d, Experiment1D, Experiment2D};

fn main() -> fsm_cdr::Result<()> {
    for id in ["1a", "3d", "4b"] {
        let r = oracle_check_1d(&Experiment1D::by_id(id)?, 40, 20_001)?;
        println!("1D {id}: fsm/fd {:.2e}, fd/exact {:.2e}, pass {}", r.fsm_vs_fd, r.fd_vs_exact, r.pass);
    }
    let r = oracle_check_2d(&Experiment2D::by_id("1b")?, 20, 201)?;
    println!("2D 1b: fsm/fd {:.2e}, fd/exact {:.2e}, pass {}", r.fsm_vs_fd, r.fd_vs_exact, r.pass);
    Ok(())
}
