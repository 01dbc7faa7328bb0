//! Fourier coefficient and collocation variants of the particular solution agree in the truncated space.

use fsm_cdr::cdr1d::{assemble_and_solve, Method};
use fsm_cdr::experiments::conv1d::{compare_1d, cubic_source, exact_polynomial_solution};
use fsm_cdr::experiments::{Experiment1D, M_SEQUENCE};

fn main() -> fsm_cdr::Result<()> {
    let exp = Experiment1D::by_id("1a")?;
    let exact = exact_polynomial_solution(exp.params(), &[1e3, 2e3, 5e3, 1e4], exp.bcs)?;
    println!("{:>4} {:>12} {:>12}", "M", "FCCM", "CM");
    for m in M_SEQUENCE {
        let err = |method| -> fsm_cdr::Result<f64> {
            let mut prob = exp.problem(cubic_source(), m);
            prob.method = method;
            Ok(compare_1d(&assemble_and_solve(&prob)?, &exact).get("0").overall)
        };
        println!("{m:>4} {:>12.3e} {:>12.3e}", err(Method::Fccm)?, err(Method::Cm)?);
    }
    Ok(())
}
