//! Rectangle problem with mixed edge conditions.

use fsm_cdr::cdr2d::{solve_2d, ProblemFile2D};

const PROBLEM: &str = r#"{
    "a": 1, "b": 0.5, "Pe": 10, "Da": 1, "theta": 0.5,
    "bc": {
        "left": {"kind": "dirichlet", "data": {"type": "constant", "value": 1}},
        "right": {"kind": "neumann", "data": {"type": "zero"}},
        "bottom": {"kind": "dirichlet", "data": {"type": "polynomial", "coeffs": [0.5, -0.5]}},
        "top": {"kind": "dirichlet", "data": {"type": "polynomial", "coeffs": [0.5, -0.5]}}
    },
    "source": {"type": "constant", "value": 5},
    "M": 20, "N": 20
}"#;

fn main() -> fsm_cdr::Result<()> {
    let sol = solve_2d(&ProblemFile2D::from_json(PROBLEM)?.to_problem()?)?;
    let d = sol.diagnostics;
    println!("{} x {} system, residual {:.3e} of {:.3e}", d.rows, d.cols, d.residual_norm, d.data_norm);
    for x2 in [-0.25, 0.0, 0.25] {
        let row: Vec<String> =
            (0..=4).map(|i| -1.0 + 0.5 * i as f64).map(|x1| Ok(format!("{:>10.4}", sol.eval(x1, x2, 0, 0)?))).collect::<fsm_cdr::Result<_>>()?;
        println!("x2 = {x2:>5.2}: {}", row.join(""));
    }
    Ok(())
}
