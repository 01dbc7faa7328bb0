use fsm_cdr::cdr1d::BcKind;
use fsm_cdr::cdr2d::{
    homogeneous_family, solve_2d, BcPattern, CdrParams2D, Direction, Edge, EdgeBc, EdgeBcSpec, EdgeData, ExpTerm,
    Problem2D,
};
use fsm_cdr::experiments::Experiment2D;
use fsm_cdr::series::{SourceModel, SourceModel2D};

fn poly(c: &[f64]) -> SourceModel {
    SourceModel::Polynomial { coeffs: c.to_vec() }
}

fn lattice(a: f64, b: f64, n: usize) -> impl Iterator<Item = (f64, f64)> {
    let t = move |i: usize, h: f64| -h + 2.0 * h * i as f64 / (n - 1) as f64;
    (0..n).flat_map(move |i| (0..n).map(move |j| (t(i, a), t(j, b))))
}

fn edge(kind: BcKind, coeffs: &[f64]) -> EdgeBc {
    EdgeBc { kind, data: EdgeData::Polynomial { coeffs: coeffs.to_vec() } }
}

#[test]
fn transposed_problem_gives_transposed_solution() {
    let p = CdrParams2D::new(8.0, 2.0, 0.4, 1.0, 0.6).unwrap();
    // Dirichlet data continuous at the corners
    let (left, right) = (edge(BcKind::Dirichlet, &[1.0, 0.5]), edge(BcKind::Neumann, &[0.3]));
    let (bottom, top) = (edge(BcKind::Dirichlet, &[1.2, 0.3, -0.4]), edge(BcKind::Dirichlet, &[1.5]));
    let (g, h) = (poly(&[1.0, 2.0]), poly(&[3.0, 0.0, -1.0]));
    let prob = Problem2D {
        params: p,
        source: SourceModel2D::Separable { x1: g.clone(), x2: h.clone() },
        bc: EdgeBcSpec { left: left.clone(), right: right.clone(), bottom: bottom.clone(), top: top.clone() },
        m: 8,
        n: 6,
    };
    let swapped = Problem2D {
        params: p.transposed(),
        source: SourceModel2D::Separable { x1: h, x2: g },
        bc: EdgeBcSpec { left: bottom, right: top, bottom: left, top: right },
        m: 6,
        n: 8,
    };
    let (s, t) = (solve_2d(&prob).unwrap(), solve_2d(&swapped).unwrap());
    let scale = lattice(p.a, p.b, 21).map(|(x1, x2)| s.eval(x1, x2, 0, 0).unwrap().abs()).fold(1.0, f64::max);
    for (x1, x2) in lattice(p.a, p.b, 21) {
        let (u, v) = (s.eval(x1, x2, 0, 0).unwrap(), t.eval(x2, x1, 0, 0).unwrap());
        assert!((u - v).abs() <= 1e-8 * scale, "({x1}, {x2}): {u} vs {v}");
        let (u1, v1) = (s.eval(x1, x2, 1, 0).unwrap(), t.eval(x2, x1, 0, 1).unwrap());
        assert!((u1 - v1).abs() <= 1e-7 * scale, "({x1}, {x2}): {u1} vs {v1}");
    }
}

#[test]
fn least_squares_residual_falls_with_truncation() {
    let e = Experiment2D::by_id("1a").unwrap();
    let res: Vec<f64> = [10, 20, 40].iter().map(|&m| e.solve(m, m).unwrap().0.diagnostics.residual_norm).collect();
    assert!(res.windows(2).all(|w| w[1] < 0.5 * w[0]), "{res:?}");
}

#[test]
fn family_members_are_reproduced_for_every_pattern() {
    let p = CdrParams2D::new(3.0, 90.0, std::f64::consts::FRAC_PI_3, 1.0, 1.0).unwrap();
    let pick = |dir, k: usize| -> ExpTerm { homogeneous_family(&p, 4, dir).members[k] };
    let field = vec![pick(Direction::X1, 6), pick(Direction::X2, 9).scaled(0.5)];
    for pattern in [BcPattern::Dddd, BcPattern::Ddnd, BcPattern::Dnnd] {
        let mut bc = EdgeBcSpec::uniform(BcKind::Dirichlet, EdgeData::Field(field.clone()));
        for e in Edge::ALL {
            bc.edge_mut(e).kind = pattern.kind(e);
        }
        let sol = solve_2d(&Problem2D { params: p, source: SourceModel2D::Zero, bc, m: 8, n: 8 }).unwrap();
        let exact = |x1, x2| field.iter().map(|t| t.eval(x1, x2, 0, 0)).sum::<f64>();
        let scale = lattice(1.0, 1.0, 21).map(|(x1, x2)| exact(x1, x2).abs()).fold(0.0, f64::max);
        for (x1, x2) in lattice(1.0, 1.0, 21) {
            let err = (sol.eval(x1, x2, 0, 0).unwrap() - exact(x1, x2)).abs();
            assert!(err <= 1e-9 * scale, "{} at ({x1}, {x2}): {err:e}", pattern.name());
        }
    }
}

#[test]
fn solution_is_linear_in_the_source() {
    let p = CdrParams2D::new(5.0, 1.0, 0.7, 1.0, 1.0).unwrap();
    let solve = |source| {
        let bc = EdgeBcSpec::uniform(BcKind::Dirichlet, EdgeData::Zero);
        solve_2d(&Problem2D { params: p, source, bc, m: 10, n: 10 }).unwrap()
    };
    let s1 = solve(SourceModel2D::Constant { value: 2.0 });
    let s2 = solve(SourceModel2D::Separable { x1: poly(&[0.0, 1.0]), x2: poly(&[1.0, 0.0, 1.0]) });
    let s = solve(SourceModel2D::sampled(|x1, x2| 2.0 + x1 * (1.0 + x2 * x2)));
    for (x1, x2) in lattice(1.0, 1.0, 11) {
        let (u, v) = (s.eval(x1, x2, 0, 0).unwrap(), s1.eval(x1, x2, 0, 0).unwrap() + s2.eval(x1, x2, 0, 0).unwrap());
        assert!((u - v).abs() <= 1e-6 * (1.0 + v.abs()), "({x1}, {x2}): {u} vs {v}");
    }
}

#[test]
fn zero_truncation_is_rejected() {
    let p = CdrParams2D::new(1.0, 1.0, 0.0, 1.0, 1.0).unwrap();
    let bc = EdgeBcSpec::uniform(BcKind::Dirichlet, EdgeData::Zero);
    assert!(solve_2d(&Problem2D { params: p, source: SourceModel2D::Zero, bc, m: 0, n: 4 }).is_err());
}
