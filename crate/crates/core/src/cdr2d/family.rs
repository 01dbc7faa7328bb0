use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::params::{mode_roots, roots_for_wavenumber, CdrParams2D, Direction, ModeRoots};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `Re[c · x1^p1 · x2^p2 · exp(z1 x1 + z2 x2 − shift)]` with `p1, p2 ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpTerm {
    pub c: Complex64,
    pub p1: u8,
    pub p2: u8,
    pub z1: Complex64,
    pub z2: Complex64,
    pub shift: f64,
}

/// `e^{-zx} d^k/dx^k (x^p e^{zx})` for `p ∈ {0, 1}`.
#[inline]
pub(crate) fn poly_exp_factor(p: u8, z: Complex64, x: f64, k: usize) -> Complex64 {
    let zk = z.powu(k as u32);
    if p == 0 {
        zk
    } else if k == 0 {
        Complex64::from(x)
    } else {
        x * zk + k as f64 * z.powu(k as u32 - 1)
    }
}

impl ExpTerm {
    /// `∂^{k1+k2}/∂x1^{k1}∂x2^{k2}` at `(x1, x2)`.
    pub fn eval(&self, x1: f64, x2: f64, k1: usize, k2: usize) -> f64 {
        let e = (self.z1 * x1 + self.z2 * x2 - self.shift).exp();
        (self.c * poly_exp_factor(self.p1, self.z1, x1, k1) * poly_exp_factor(self.p2, self.z2, x2, k2) * e).re
    }

    pub fn scaled(mut self, s: f64) -> Self {
        self.c *= s;
        self
    }
}

/// `∫_{-l}^{l} t^p e^{w t − σ} dt` with `σ = |Re w|·l`, so the result never overflows.
pub(crate) fn scaled_moment(w: Complex64, p: u8, l: f64) -> Complex64 {
    let sigma = w.re.abs() * l;
    let wl = w * l;
    if wl.norm() < 1.0 {
        // Taylor: only even (p = 0) or odd (p = 1) powers survive
        let mut sum = Complex64::from(0.0);
        let mut term = Complex64::from(1.0);
        let w2 = wl * wl;
        if p == 0 {
            for k in 0..24 {
                sum += term / (2 * k + 1) as f64;
                term *= w2 / ((2 * k + 1) * (2 * k + 2)) as f64;
            }
            return sum * 2.0 * l * (-sigma).exp();
        }
        term = wl;
        for k in 0..24 {
            sum += term / (2 * k + 3) as f64;
            term *= w2 / ((2 * k + 2) * (2 * k + 3)) as f64;
        }
        return sum * 2.0 * l * l * (-sigma).exp();
    }
    let ep = (wl - sigma).exp();
    let em = (-wl - sigma).exp();
    if p == 0 {
        (ep - em) / w
    } else {
        l * (ep + em) / w - (ep - em) / (w * w)
    }
}

/// Fourier cosine and sine coefficients (modes `0..=modes`) of
/// `Re[k · t^p · e^{w t − σ}]` on `[-l, l]`, with `σ = |Re w|·l`.
pub(crate) fn exp_trace_coeffs(k: Complex64, w: Complex64, p: u8, l: f64, modes: usize) -> (Vec<f64>, Vec<f64>) {
    let mut cos = Vec::with_capacity(modes + 1);
    let mut sin = Vec::with_capacity(modes);
    for j in 0..=modes {
        let om = Complex64::new(0.0, j as f64 * std::f64::consts::PI / l);
        let jp = scaled_moment(w + om, p, l);
        let jm = scaled_moment(w - om, p, l);
        cos.push((k * 0.5 * (jp + jm)).re / l);
        if j > 0 {
            sin.push((k * (jp - jm) / (2.0 * I)).re / l);
        }
    }
    (cos, sin)
}

/// Normalisation of `exp(λ x)` by `cosh(λ l)`: returns the factor `2/(1 + e^{-2|λ|l})`
/// and the shift `|λ| l`, so that `exp(λx)/cosh(λl) = factor · exp(λx − shift)`.
fn cosh_normalisation(lambda: f64, l: f64) -> (f64, f64) {
    let s = lambda.abs() * l;
    (2.0 / (1.0 + (-2.0 * s).exp()), s)
}

/// Builds the term `Re[c · t_n^p · exp(zn · t_n + i β t_t)] / cosh(Re(zn) l)` in the
/// coordinates of `dir` (`t_n` along, `t_t` across).
fn oriented(dir: Direction, c: Complex64, p: u8, zn: Complex64, beta: f64, l: f64) -> ExpTerm {
    let (factor, shift) = cosh_normalisation(zn.re, l);
    let c = c * factor;
    let zt = Complex64::new(0.0, beta);
    match dir {
        Direction::X1 => ExpTerm { c, p1: p, p2: 0, z1: zn, z2: zt, shift },
        Direction::X2 => ExpTerm { c, p1: 0, p2: p, z1: zt, z2: zn, shift },
    }
}

/// Homogeneous solutions of one mode: 2 for the mean mode, 4 otherwise.
pub fn mode_members(p: &CdrParams2D, r: &ModeRoots) -> Vec<ExpTerm> {
    let (l, _) = p.lengths(r.direction);
    let dir = r.direction;
    let one = Complex64::from(1.0);
    let lam0 = Complex64::from(-r.alpha1);
    if r.beta == 0.0 {
        return if r.is_double(p.pe) {
            vec![oriented(dir, one, 0, lam0, 0.0, l), oriented(dir, one / l, 1, lam0, 0.0, l)]
        } else if r.gamma1 > 0.0 {
            let z = Complex64::new(-r.alpha1, r.alpha2);
            vec![oriented(dir, one, 0, z, 0.0, l), oriented(dir, -I, 0, z, 0.0, l)]
        } else {
            vec![oriented(dir, one, 0, r.eta1, 0.0, l), oriented(dir, one, 0, r.eta2, 0.0, l)]
        };
    }
    if r.is_double(p.pe) {
        vec![
            oriented(dir, one, 0, lam0, r.beta, l),
            oriented(dir, one / l, 1, lam0, r.beta, l),
            oriented(dir, -I, 0, lam0, r.beta, l),
            oriented(dir, -I / l, 1, lam0, r.beta, l),
        ]
    } else {
        vec![
            oriented(dir, one, 0, r.eta1, r.beta, l),
            oriented(dir, -I, 0, r.eta1, r.beta, l),
            oriented(dir, one, 0, r.eta2, r.beta, l),
            oriented(dir, -I, 0, r.eta2, r.beta, l),
        ]
    }
}

/// All homogeneous solutions decaying along `dir`, modes `0..=cap`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomogeneousFamily {
    pub direction: Direction,
    pub roots: Vec<ModeRoots>,
    pub members: Vec<ExpTerm>,
}

impl HomogeneousFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn homogeneous_family(p: &CdrParams2D, cap: usize, dir: Direction) -> HomogeneousFamily {
    let roots: Vec<ModeRoots> = (0..=cap).map(|n| mode_roots(p, n, dir)).collect();
    let members = roots.iter().flat_map(|r| mode_members(p, r)).collect();
    HomogeneousFamily { direction: dir, roots, members }
}

/// Closed-form field made of the four x1-decaying solutions with `β = π/(2b)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReferenceField {
    pub params: CdrParams2D,
    pub terms: Vec<ExpTerm>,
}

impl ReferenceField {
    pub fn eval(&self, x1: f64, x2: f64, k1: usize, k2: usize) -> f64 {
        self.terms.iter().map(|t| t.eval(x1, x2, k1, k2)).sum()
    }
}

pub fn reference_solution(p: &CdrParams2D) -> ReferenceField {
    let beta = std::f64::consts::PI / (2.0 * p.b);
    let r = roots_for_wavenumber(p, beta, Direction::X1);
    ReferenceField { params: *p, terms: mode_members(p, &r) }
}

/// Relative operator residual `|L t| / (sum of the magnitudes of its parts)`.
pub fn operator_residual(p: &CdrParams2D, f: &dyn Fn(f64, f64, usize, usize) -> f64, x1: f64, x2: f64) -> f64 {
    let v = f(x1, x2, 0, 0);
    let d1 = f(x1, x2, 1, 0);
    let d2 = f(x1, x2, 0, 1);
    let d11 = f(x1, x2, 2, 0);
    let d22 = f(x1, x2, 0, 2);
    let scale = (p.pe1() * d1).abs() + (p.pe2() * d2).abs() + d11.abs() + d22.abs() + (p.pe_da() * v).abs();
    let r = p.apply(v, d1, d2, d11, d22).abs();
    if scale == 0.0 {
        r
    } else {
        r / scale
    }
}
