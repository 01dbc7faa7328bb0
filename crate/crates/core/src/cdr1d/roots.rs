use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FsmError, Result};

/// Operator parameters of `Pe d/dx − d²/dx² − Pe·Da` on `[-a, a]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdrParams1D {
    #[serde(rename = "Pe")]
    pub pe: f64,
    #[serde(rename = "Da")]
    pub da: f64,
    pub a: f64,
}

impl CdrParams1D {
    pub fn new(pe: f64, da: f64, a: f64) -> Result<Self> {
        let p = CdrParams1D { pe, da, a };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(FsmError::config(format!("half-length must be positive, got {}", self.a)));
        }
        if !self.pe.is_finite() || !self.da.is_finite() {
            return Err(FsmError::config("Pe and Da must be finite"));
        }
        Ok(())
    }

    /// Reaction coefficient `Pe·Da`.
    pub fn pe_da(&self) -> f64 {
        self.pe * self.da
    }

    /// `L[φ]` from the value and the first two derivatives.
    #[inline]
    pub fn apply(&self, phi: f64, dphi: f64, d2phi: f64) -> f64 {
        self.pe * dphi - d2phi - self.pe_da() * phi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    DistinctReal,
    ComplexPair,
    DoubleReal,
}

/// Roots of `η² − Pe·η + Pe·Da = 0` in the `α` parametrisation
/// `η1 = −α10 + α30 − iα20`, `η2 = −α10 − α30 + iα20`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootData {
    pub regime: Regime,
    pub alpha10: f64,
    pub alpha20: f64,
    pub alpha30: f64,
    pub eta1: Complex64,
    pub eta2: Complex64,
}

impl RootData {
    /// `|η² − Pe η + Pe Da|` maximised over both roots.
    pub fn residual(&self, p: &CdrParams1D) -> f64 {
        let r = |e: Complex64| (e * e - p.pe * e + p.pe_da()).norm();
        r(self.eta1).max(r(self.eta2))
    }
}

pub fn classify_regime(p: &CdrParams1D) -> RootData {
    let disc = p.pe * p.pe - 4.0 * p.pe_da();
    let tol = 1e-12 * (p.pe * p.pe).max(1.0);
    let alpha10 = -0.5 * p.pe;
    let (regime, alpha20, alpha30) = if disc.abs() <= tol {
        (Regime::DoubleReal, 0.0, 0.0)
    } else if disc > 0.0 {
        (Regime::DistinctReal, 0.0, 0.5 * disc.sqrt())
    } else {
        (Regime::ComplexPair, 0.5 * (-disc).sqrt(), 0.0)
    };
    let eta1 = Complex64::new(-alpha10 + alpha30, -alpha20);
    let eta2 = Complex64::new(-alpha10 - alpha30, alpha20);
    RootData { regime, alpha10, alpha20, alpha30, eta1, eta2 }
}
