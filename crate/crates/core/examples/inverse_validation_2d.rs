//! Edge traces of a closed-form field imposed as data, then recovered.

use fsm_cdr::experiments::conv2d::compare_2d;
use fsm_cdr::experiments::Experiment2D;

fn main() -> fsm_cdr::Result<()> {
    for id in ["1a", "4b", "4c"] {
        let exp = Experiment2D::by_id(id)?;
        for m in [10, 20, 40] {
            let (sol, reference) = exp.solve(m, m)?;
            let rep = compare_2d(&sol, &reference);
            let (e, i) = (rep.get("00"), rep.get("10"));
            println!("{id} {} M = N = {m:>2}: phi {:.3e} (interior {:.3e}), dphi/dx1 {:.3e}", exp.pattern.name(), e.overall, e.internal, i.overall);
        }
    }
    Ok(())
}
