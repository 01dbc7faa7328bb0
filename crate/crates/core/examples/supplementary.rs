//! Subtracting an interpolating polynomial removes the Gibbs error of a non-periodic source.

use fsm_cdr::cdr1d::assemble_and_solve;
use fsm_cdr::experiments::conv1d::{compare_1d, cubic_source, exact_polynomial_solution};
use fsm_cdr::experiments::Experiment1D;

fn main() -> fsm_cdr::Result<()> {
    let exp = Experiment1D::by_id("1a")?;
    let exact = exact_polynomial_solution(exp.params(), &[1e3, 2e3, 5e3, 1e4], exp.bcs)?;
    println!("{:>4} {:>12} {:>12} {:>12} {:>12}", "M", "N1s=0", "N1s=1", "N1s=2", "N1s=3");
    for m in [5, 10, 20, 40] {
        let row: Vec<String> = (0..=3)
            .map(|n1s| {
                let mut prob = exp.problem(cubic_source(), m);
                prob.supplementary.n1s = n1s;
                let sol = assemble_and_solve(&prob)?;
                Ok(format!("{:>12.3e}", compare_1d(&sol, &exact).get("1").overall))
            })
            .collect::<fsm_cdr::Result<_>>()?;
        println!("{m:>4} {}", row.join(" "));
    }
    Ok(())
}
