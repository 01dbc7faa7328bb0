//! Point source by a whole-interval series and by subinterval patching.

use fsm_cdr::experiments::green1d::{flux_jump, green_subinterval, green_whole, GREEN_POSITION};

fn main() -> fsm_cdr::Result<()> {
    let (pe, da) = (3.0, 90.0);
    let x = GREEN_POSITION;
    for m in [10, 40, 160, 640] {
        let s = green_whole(pe, da, m)?;
        println!("whole M = {m:>3}: phi(x0) = {:.6e}", s.eval(x, 0)?);
    }
    for a2 in [1e-1, 1e-2, 1e-3, 1e-4] {
        let s = green_subinterval(pe, da, a2)?;
        println!("subinterval a2 = {a2:.0e}: phi(x0) = {:.6e}, flux jump = {:.4}", s.eval(x, 0)?, flux_jump(&s)?);
    }
    Ok(())
}
