use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FsmError, Result};

/// Operator parameters of
/// `Pe1 ∂/∂x1 + Pe2 ∂/∂x2 − (∂²/∂x1² + ∂²/∂x2²) − Pe·Da` on `[-a, a] × [-b, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdrParams2D {
    #[serde(rename = "Pe")]
    pub pe: f64,
    #[serde(rename = "Da")]
    pub da: f64,
    /// Inflow angle in radians.
    pub theta: f64,
    pub a: f64,
    pub b: f64,
}

impl CdrParams2D {
    pub fn new(pe: f64, da: f64, theta: f64, a: f64, b: f64) -> Result<Self> {
        let p = CdrParams2D { pe, da, theta, a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("b", self.b)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(FsmError::config(format!("half-length {name} must be positive, got {v}")));
            }
        }
        if !self.pe.is_finite() || !self.da.is_finite() || !self.theta.is_finite() {
            return Err(FsmError::config("Pe, Da and theta must be finite"));
        }
        Ok(())
    }

    pub fn pe1(&self) -> f64 {
        self.pe * self.theta.cos()
    }

    pub fn pe2(&self) -> f64 {
        self.pe * self.theta.sin()
    }

    pub fn pe_da(&self) -> f64 {
        self.pe * self.da
    }

    /// `L[φ]` from `φ`, `∂1φ`, `∂2φ`, `∂1²φ`, `∂2²φ`.
    #[inline]
    pub fn apply(&self, phi: f64, d1: f64, d2: f64, d11: f64, d22: f64) -> f64 {
        self.pe1() * d1 + self.pe2() * d2 - d11 - d22 - self.pe_da() * phi
    }

    /// Half-length along `dir` and across it.
    pub fn lengths(&self, dir: Direction) -> (f64, f64) {
        match dir {
            Direction::X1 => (self.a, self.b),
            Direction::X2 => (self.b, self.a),
        }
    }

    /// Convection component along `dir` and across it.
    pub fn pe_components(&self, dir: Direction) -> (f64, f64) {
        match dir {
            Direction::X1 => (self.pe1(), self.pe2()),
            Direction::X2 => (self.pe2(), self.pe1()),
        }
    }

    /// Parameters with the two axes exchanged.
    pub fn transposed(&self) -> CdrParams2D {
        CdrParams2D { theta: PI / 2.0 - self.theta, a: self.b, b: self.a, ..*self }
    }
}

/// Axis along which a homogeneous family varies exponentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    X1,
    X2,
}

/// Characteristic roots of one tangential mode.
///
/// For `Direction::X1` the modes are `exp(η x1)·exp(iβ x2)`, which requires
/// `η² − Pe1 η + (−β² + Pe·Da − i Pe2 β) = 0`; `Direction::X2` swaps the axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeRoots {
    pub direction: Direction,
    pub n: usize,
    pub beta: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub eta1: Complex64,
    pub eta2: Complex64,
}

impl ModeRoots {
    /// Both roots coincide.
    pub fn is_double(&self, pe: f64) -> bool {
        let tol = 1e-10 * pe.abs().powi(2).max(1.0);
        self.gamma1.abs() <= tol && self.gamma2.abs() <= tol
    }

    /// Residuals of both roots in the characteristic polynomial.
    pub fn residuals(&self, p: &CdrParams2D) -> [f64; 2] {
        let (pn, pt) = p.pe_components(self.direction);
        let c0 = Complex64::new(-self.beta * self.beta + p.pe_da(), -pt * self.beta);
        let r = |eta: Complex64| (eta * eta - pn * eta + c0).norm();
        [r(self.eta1), r(self.eta2)]
    }
}

/// Roots for mode `n` (`β = nπ/b` for x1 families, `nπ/a` for x2 families).
pub fn mode_roots(p: &CdrParams2D, n: usize, dir: Direction) -> ModeRoots {
    let (_, across) = p.lengths(dir);
    let mut r = roots_for_wavenumber(p, n as f64 * PI / across, dir);
    r.n = n;
    r
}

/// Roots for an arbitrary tangential wavenumber `beta`.
pub fn roots_for_wavenumber(p: &CdrParams2D, beta: f64, dir: Direction) -> ModeRoots {
    let (pn, pt) = p.pe_components(dir);
    let gamma1 = -pn * pn - 4.0 * beta * beta + 4.0 * p.pe_da();
    // + 0.0 turns a negative zero into a positive one so the branch cut is not hit
    let gamma2 = -4.0 * pt * beta + 0.0;
    let half_root = 0.5 * Complex64::new(gamma1, gamma2).sqrt();
    let (alpha2, alpha3) = (half_root.re, half_root.im);
    let alpha1 = -pn / 2.0;
    ModeRoots {
        direction: dir,
        n: 0,
        beta,
        gamma1,
        gamma2,
        alpha1,
        alpha2,
        alpha3,
        eta1: Complex64::new(-alpha1 + alpha3, -alpha2),
        eta2: Complex64::new(-alpha1 - alpha3, alpha2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mean_mode_has_real_gamma() {
        let p = CdrParams2D::new(3.0, 90.0, PI / 3.0, 1.0, 1.0).unwrap();
        let r = mode_roots(&p, 0, Direction::X1);
        assert_eq!(r.gamma2, 0.0);
        assert!((p.pe1() - 1.5).abs() < 1e-14);
        assert!((r.gamma1 - 1077.75).abs() < 1e-10);
        assert!(r.alpha2 > 0.0 && r.alpha3 == 0.0);
        assert!(r.residuals(&p).iter().all(|&e| e <= 1e-10 * 1080.0));
    }

    #[test]
    fn strong_convection_first_mode() {
        let p = CdrParams2D::new(200.0, -1.0, PI / 3.0, 1.0, 1.0).unwrap();
        let r = mode_roots(&p, 1, Direction::X1);
        assert!((r.gamma1 - (-10000.0 - 4.0 * PI * PI - 800.0)).abs() < 1e-8);
        assert!((r.gamma2 + 4.0 * 100.0 * 3f64.sqrt() * PI).abs() < 1e-9);
        assert!((r.gamma1 + 10839.48).abs() < 0.01);
        assert!((r.gamma2 + 2176.56).abs() < 0.01);
        assert!(r.residuals(&p).iter().all(|&e| e <= 1e-8 * 4e4));
    }

    #[test]
    fn negative_real_gamma_gives_real_roots() {
        let p = CdrParams2D::new(30.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        let r = mode_roots(&p, 2, Direction::X1);
        assert_eq!(r.gamma2, 0.0);
        assert_eq!(r.alpha2, 0.0);
        assert!(r.alpha3 > 0.0);
        assert_eq!(r.eta1.im, 0.0);
    }

    #[test]
    fn laplace_mean_mode_is_double() {
        let p = CdrParams2D::new(0.0, 0.0, 0.0, 1.0, 2.0).unwrap();
        assert!(mode_roots(&p, 0, Direction::X1).is_double(p.pe));
        assert!(!mode_roots(&p, 1, Direction::X2).is_double(p.pe));
    }

    #[test]
    fn components_preserve_magnitude() {
        let p = CdrParams2D::new(7.0, 1.0, 0.3, 1.0, 1.0).unwrap();
        assert!((p.pe1().hypot(p.pe2()) - 7.0).abs() <= 1e-12 * 7.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn roots_satisfy_characteristic_equation(
            pe in -250.0f64..250.0,
            da in -100.0f64..100.0,
            theta in 0.0f64..(2.0 * PI),
            n in 0usize..60,
            x2 in prop::bool::ANY,
        ) {
            let p = CdrParams2D::new(pe, da, theta, 1.0, 0.7).unwrap();
            let dir = if x2 { Direction::X2 } else { Direction::X1 };
            let r = mode_roots(&p, n, dir);
            let scale = 1f64.max(p.pe1().powi(2)).max(p.pe2().powi(2)).max(r.beta * r.beta).max(p.pe_da().abs());
            for e in r.residuals(&p) {
                prop_assert!(e <= 1e-9 * scale, "residual {e} scale {scale}");
            }
            prop_assert!(r.alpha2 >= 0.0);
        }
    }
}
