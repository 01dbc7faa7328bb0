//! Piecewise solve with value and flux continuity at the interfaces.

use fsm_cdr::cdr1d::{solve_multidomain, Bcs1D, Method, MultiDomainSpec, SubdomainScheme};
use fsm_cdr::series::SourceModel;

fn main() -> fsm_cdr::Result<()> {
    let scheme = SubdomainScheme { m: 20, n1s: 0, method: Method::Fccm };
    let md = MultiDomainSpec::uniform_scheme(30.0, 1.0, vec![0.0, 0.3, 0.45, 0.55, 1.0], scheme);
    let f = SourceModel::RectPulse { center: 0.5, half_width: 0.05, area: 1e3 };
    let sol = solve_multidomain(&md, &f, Bcs1D::dirichlet(0.0, 0.0))?;
    for j in 1..sol.breakpoints.len() - 1 {
        let jump = |k| -> fsm_cdr::Result<f64> { Ok(sol.eval_at_breakpoint(j, k, 1)? - sol.eval_at_breakpoint(j, k, 0)?) };
        println!("x = {:.2}: phi = {:.6e}, jumps {:.1e} {:.1e}", sol.breakpoints[j], sol.node_values[j], jump(0)?, jump(1)?);
    }
    Ok(())
}
