use serde::{Deserialize, Serialize};

use super::family::{exp_trace_coeffs, poly_exp_factor, ExpTerm, ReferenceField};
use super::params::CdrParams2D;
use crate::cdr1d::BcKind;
use crate::error::{FsmError, Result};
use crate::series::quadrature::adaptive_coeffs;
use crate::series::source::horner;
use crate::series::trig1d::trig_derivs;
use crate::series::{fourier_coeffs, mu, Parity, SampledFn, SourceModel, TrigSeries2D};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    /// `x1 = −a`
    Left,
    /// `x1 = +a`
    Right,
    /// `x2 = −b`
    Bottom,
    /// `x2 = +b`
    Top,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::Left, Edge::Right, Edge::Bottom, Edge::Top];

    /// Whether the edge is a line `x1 = const`.
    pub fn is_x1_edge(self) -> bool {
        matches!(self, Edge::Left | Edge::Right)
    }

    /// Sign of the outward normal along the fixed axis.
    pub fn outward(self) -> f64 {
        match self {
            Edge::Left | Edge::Bottom => -1.0,
            Edge::Right | Edge::Top => 1.0,
        }
    }

    pub(crate) fn geometry(self, p: &CdrParams2D) -> EdgeGeometry {
        let (fixed, tangential) = if self.is_x1_edge() { (p.a, p.b) } else { (p.b, p.a) };
        EdgeGeometry { value: self.outward() * fixed, half_length: tangential }
    }

    /// Point `(x1, x2)` of the edge at tangential coordinate `t`.
    pub fn point(self, p: &CdrParams2D, t: f64) -> (f64, f64) {
        let g = self.geometry(p);
        if self.is_x1_edge() {
            (g.value, t)
        } else {
            (t, g.value)
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct EdgeGeometry {
    pub value: f64,
    pub half_length: f64,
}

/// Prescribed data along one edge, as a function of the tangential coordinate.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EdgeData {
    Zero,
    Constant {
        value: f64,
    },
    /// Polynomial in `t/l`, `l` the edge half-length.
    Polynomial {
        coeffs: Vec<f64>,
    },
    /// Trace of the closed-form reference field (its value on Dirichlet
    /// edges, its outward normal derivative on Neumann edges).
    Reference,
    /// Same as `Reference` for an arbitrary sum of exponential terms.
    #[serde(skip)]
    Field(Vec<ExpTerm>),
    #[serde(skip)]
    Sampled(SampledFn),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeBc {
    pub kind: BcKind,
    pub data: EdgeData,
}

/// Boundary conditions on the four edges.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeBcSpec {
    pub left: EdgeBc,
    pub right: EdgeBc,
    pub bottom: EdgeBc,
    pub top: EdgeBc,
}

/// Named boundary-condition layouts; letters run bottom, right, top, left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum BcPattern {
    #[serde(rename = "DDDD")]
    #[value(name = "DDDD")]
    Dddd,
    #[serde(rename = "DDND")]
    #[value(name = "DDND")]
    Ddnd,
    #[serde(rename = "DNND")]
    #[value(name = "DNND")]
    Dnnd,
}

impl BcPattern {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "DDDD" => Ok(BcPattern::Dddd),
            "DDND" => Ok(BcPattern::Ddnd),
            "DNND" => Ok(BcPattern::Dnnd),
            _ => Err(FsmError::config(format!("unknown boundary pattern {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BcPattern::Dddd => "DDDD",
            BcPattern::Ddnd => "DDND",
            BcPattern::Dnnd => "DNND",
        }
    }

    pub fn kind(self, e: Edge) -> BcKind {
        let letters = self.name().as_bytes();
        let i = match e {
            Edge::Bottom => 0,
            Edge::Right => 1,
            Edge::Top => 2,
            Edge::Left => 3,
        };
        if letters[i] == b'N' {
            BcKind::Neumann
        } else {
            BcKind::Dirichlet
        }
    }
}

impl EdgeBcSpec {
    pub fn edge(&self, e: Edge) -> &EdgeBc {
        match e {
            Edge::Left => &self.left,
            Edge::Right => &self.right,
            Edge::Bottom => &self.bottom,
            Edge::Top => &self.top,
        }
    }

    pub fn edge_mut(&mut self, e: Edge) -> &mut EdgeBc {
        match e {
            Edge::Left => &mut self.left,
            Edge::Right => &mut self.right,
            Edge::Bottom => &mut self.bottom,
            Edge::Top => &mut self.top,
        }
    }

    pub fn uniform(kind: BcKind, data: EdgeData) -> Self {
        let bc = EdgeBc { kind, data };
        EdgeBcSpec { left: bc.clone(), right: bc.clone(), bottom: bc.clone(), top: bc }
    }

    /// Traces of `reference` imposed with the given layout.
    pub fn from_reference(pattern: BcPattern, reference: &ReferenceField) -> Self {
        let mut s = Self::uniform(BcKind::Dirichlet, EdgeData::Field(reference.terms.clone()));
        for e in Edge::ALL {
            s.edge_mut(e).kind = pattern.kind(e);
        }
        s
    }

    /// Replaces `Reference` data by the traces of `reference`.
    pub fn resolve(&self, reference: impl Fn() -> ReferenceField) -> Self {
        let mut s = self.clone();
        for e in Edge::ALL {
            if matches!(s.edge(e).data, EdgeData::Reference) {
                s.edge_mut(e).data = EdgeData::Field(reference().terms);
            }
        }
        s
    }
}

fn normal_order(kind: BcKind) -> usize {
    match kind {
        BcKind::Dirichlet => 0,
        BcKind::Neumann => 1,
    }
}

/// Edge Fourier coefficients (`modes + 1` cosines, `modes` sines) of the
/// boundary operator applied to one exponential term.
pub(crate) fn term_edge_coeffs(
    t: &ExpTerm,
    edge: Edge,
    kind: BcKind,
    p: &CdrParams2D,
    modes: usize,
) -> (Vec<f64>, Vec<f64>) {
    let g = edge.geometry(p);
    let k = normal_order(kind);
    let sign = if k == 1 { edge.outward() } else { 1.0 };
    let (pf, zf, pt, zt) = if edge.is_x1_edge() { (t.p1, t.z1, t.p2, t.z2) } else { (t.p2, t.z2, t.p1, t.z1) };
    let sigma = zt.re.abs() * g.half_length;
    let factor = t.c * poly_exp_factor(pf, zf, g.value, k) * (zf * g.value - t.shift + sigma).exp() * sign;
    exp_trace_coeffs(factor, zt, pt, g.half_length, modes)
}

/// Boundary operator applied to one term at a point of `edge`.
pub(crate) fn term_edge_value(t: &ExpTerm, edge: Edge, kind: BcKind, p: &CdrParams2D, s: f64) -> f64 {
    let (x1, x2) = edge.point(p, s);
    let k = normal_order(kind);
    let v = if edge.is_x1_edge() { t.eval(x1, x2, k, 0) } else { t.eval(x1, x2, 0, k) };
    if k == 1 {
        edge.outward() * v
    } else {
        v
    }
}

/// Edge Fourier coefficients of the boundary operator applied to a double series.
pub(crate) fn series_edge_coeffs(s: &TrigSeries2D, edge: Edge, kind: BcKind, p: &CdrParams2D) -> (Vec<f64>, Vec<f64>) {
    let g = edge.geometry(p);
    let k = normal_order(kind);
    let sign = if k == 1 { edge.outward() } else { 1.0 };
    let (a, b) = s.half_lengths();
    let (mm, nn) = s.modes();
    let (fixed_modes, modes, l_fixed) = if edge.is_x1_edge() { (mm, nn, a) } else { (nn, mm, b) };
    let mut cos = vec![0.0; modes + 1];
    let mut sin = vec![0.0; modes];
    for i in 0..=fixed_modes {
        let (c, sn) = trig_derivs(i as f64 * std::f64::consts::PI / l_fixed, g.value, k);
        let w = mu(i) * sign;
        for j in 0..=modes {
            let (m, n) = if edge.is_x1_edge() { (i, j) } else { (j, i) };
            let (pc_c, pc_s, ps_c, ps_s) = if edge.is_x1_edge() {
                (Parity::CC, Parity::CS, Parity::SC, Parity::SS)
            } else {
                (Parity::CC, Parity::SC, Parity::CS, Parity::SS)
            };
            cos[j] += w * (s.get(m, n, pc_c) * c + s.get(m, n, ps_c) * sn);
            if j > 0 {
                sin[j - 1] += w * (s.get(m, n, pc_s) * c + s.get(m, n, ps_s) * sn);
            }
        }
    }
    (cos, sin)
}

/// Edge Fourier coefficients of the prescribed data.
pub(crate) fn data_edge_coeffs(bc: &EdgeBc, edge: Edge, p: &CdrParams2D, modes: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let l = edge.geometry(p).half_length;
    Ok(match &bc.data {
        EdgeData::Zero => (vec![0.0; modes + 1], vec![0.0; modes]),
        EdgeData::Constant { value } => {
            let mut c = vec![0.0; modes + 1];
            c[0] = 2.0 * value;
            (c, vec![0.0; modes])
        }
        EdgeData::Polynomial { coeffs } => {
            let s = fourier_coeffs(&SourceModel::Polynomial { coeffs: coeffs.clone() }, l, modes)?;
            (s.cos_coeffs().to_vec(), s.sin_coeffs().to_vec())
        }
        EdgeData::Sampled(f) => adaptive_coeffs(&|t| (f.0)(t), l, modes)?,
        EdgeData::Field(terms) => {
            let mut cos = vec![0.0; modes + 1];
            let mut sin = vec![0.0; modes];
            for t in terms {
                let (c, s) = term_edge_coeffs(t, edge, bc.kind, p, modes);
                cos.iter_mut().zip(c).for_each(|(x, y)| *x += y);
                sin.iter_mut().zip(s).for_each(|(x, y)| *x += y);
            }
            (cos, sin)
        }
        EdgeData::Reference => return Err(FsmError::config("reference edge data must be resolved before assembly")),
    })
}

/// Prescribed data at tangential coordinate `s` of `edge`.
pub(crate) fn data_edge_value(bc: &EdgeBc, edge: Edge, p: &CdrParams2D, s: f64) -> Result<f64> {
    let l = edge.geometry(p).half_length;
    Ok(match &bc.data {
        EdgeData::Zero => 0.0,
        EdgeData::Constant { value } => *value,
        EdgeData::Polynomial { coeffs } => horner(coeffs, s / l),
        EdgeData::Sampled(f) => (f.0)(s),
        EdgeData::Field(terms) => terms.iter().map(|t| term_edge_value(t, edge, bc.kind, p, s)).sum(),
        EdgeData::Reference => return Err(FsmError::config("reference edge data must be resolved before assembly")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdr2d::family::homogeneous_family;
    use num_complex::Complex64;
    use crate::cdr2d::params::Direction;
    use crate::series::quadrature::simpson_coeffs;
    use std::f64::consts::PI;

    fn check_against_quadrature(p: &CdrParams2D, t: &ExpTerm, modes: usize) {
        for e in Edge::ALL {
            for kind in [BcKind::Dirichlet, BcKind::Neumann] {
                let (c, s) = term_edge_coeffs(t, e, kind, p, modes);
                let l = e.geometry(p).half_length;
                let f = |x: f64| term_edge_value(t, e, kind, p, x);
                let (cq, sq) = simpson_coeffs(&f, l, modes, 8000);
                let scale = cq.iter().chain(&sq).fold(1.0f64, |m, v| m.max(v.abs()));
                for (x, y) in c.iter().chain(&s).zip(cq.iter().chain(&sq)) {
                    assert!((x - y).abs() <= 1e-8 * scale, "{e:?} {kind:?}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn family_traces_match_quadrature() {
        for &(pe, da, theta) in &[(3.0, 90.0, PI / 3.0), (200.0, -1.0, PI / 3.0), (30.0, 1.0, 0.0), (0.0, 0.0, 0.0)] {
            let p = CdrParams2D::new(pe, da, theta, 1.0, 0.5).unwrap();
            for dir in [Direction::X1, Direction::X2] {
                let fam = homogeneous_family(&p, 3, dir);
                for t in &fam.members {
                    check_against_quadrature(&p, t, 5);
                }
            }
        }
    }

    #[test]
    fn corner_monomial_traces() {
        let p = CdrParams2D::new(3.0, 90.0, PI / 3.0, 2.0, 1.0).unwrap();
        let t = ExpTerm {
            c: Complex64::new(1.0 / (4.0 * p.a * p.b), 0.0),
            p1: 1,
            p2: 1,
            z1: Complex64::new(0.0, 0.0),
            z2: Complex64::new(0.0, 0.0),
            shift: 0.0,
        };
        assert!((t.eval(2.0, 1.0, 0, 0) - 0.25).abs() < 1e-15);
        assert!((t.eval(2.0, 1.0, 1, 1) - 1.0 / 8.0).abs() < 1e-15);
        check_against_quadrature(&p, &t, 6);
    }

    #[test]
    fn series_traces_match_pointwise() {
        let p = CdrParams2D::new(3.0, 90.0, PI / 3.0, 1.0, 0.7).unwrap();
        let mut s = TrigSeries2D::zeros(1.0, 0.7, 3, 4);
        let mut v = 0.3;
        for m in 0..=3 {
            for n in 0..=4 {
                for q in Parity::ALL {
                    v = (v * 7.3 + 0.1) % 2.0 - 1.0;
                    s.set(m, n, q, v);
                }
            }
        }
        for e in Edge::ALL {
            for kind in [BcKind::Dirichlet, BcKind::Neumann] {
                let (c, sn) = series_edge_coeffs(&s, e, kind, &p);
                let l = e.geometry(&p).half_length;
                let modes = c.len() - 1;
                for &t in &[-0.3 * l, 0.1 * l, 0.8 * l] {
                    let (x1, x2) = e.point(&p, t);
                    let k = normal_order(kind);
                    let direct = if e.is_x1_edge() { s.eval(x1, x2, k, 0) } else { s.eval(x1, x2, 0, k) }.unwrap();
                    let direct = if k == 1 { e.outward() * direct } else { direct };
                    let tr = crate::series::TrigSeries1D::from_parts(l, c.clone(), sn.clone()).unwrap();
                    assert_eq!(tr.modes(), modes);
                    assert!((tr.eval(t, 0).unwrap() - direct).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn patterns_follow_counter_clockwise_order() {
        assert_eq!(BcPattern::Ddnd.kind(Edge::Top), BcKind::Neumann);
        assert_eq!(BcPattern::Ddnd.kind(Edge::Right), BcKind::Dirichlet);
        assert_eq!(BcPattern::Dnnd.kind(Edge::Right), BcKind::Neumann);
        assert_eq!(BcPattern::Dnnd.kind(Edge::Top), BcKind::Neumann);
        assert_eq!(BcPattern::Dnnd.kind(Edge::Left), BcKind::Dirichlet);
        assert!(Edge::ALL.iter().all(|&e| BcPattern::Dddd.kind(e) == BcKind::Dirichlet));
    }
}
