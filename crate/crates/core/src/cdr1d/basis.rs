use serde::Serialize;

use super::roots::{classify_regime, CdrParams1D, Regime, RootData};

/// Non-exponential factor of a basis function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
enum Shape {
    One,
    /// `x / a`
    Linear,
    /// `sin(w x)`
    Sin,
    /// `sin(w (a − x))`
    SinReflected,
    /// `cosh(w x)`
    Cosh,
    /// `sinh(w x)`
    Sinh,
}

/// One homogeneous solution `exp(λx − |λ|a)·h(x) / s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisFn1D {
    lambda: f64,
    shape: Shape,
    w: f64,
    a: f64,
    scale: f64,
}

impl BasisFn1D {
    fn new(lambda: f64, shape: Shape, w: f64, a: f64) -> Self {
        let mut f = BasisFn1D { lambda, shape, w, a, scale: 1.0 };
        let s = f.eval(-a, 0).abs().max(f.eval(a, 0).abs());
        if s > 1e-300 && s.is_finite() {
            f.scale = s;
        }
        f
    }

    fn shape_derivs(&self, x: f64) -> [f64; 3] {
        let (w, a) = (self.w, self.a);
        match self.shape {
            Shape::One => [1.0, 0.0, 0.0],
            Shape::Linear => [x / a, 1.0 / a, 0.0],
            Shape::Sin => {
                let (s, c) = (w * x).sin_cos();
                [s, w * c, -w * w * s]
            }
            Shape::SinReflected => {
                let (s, c) = (w * (a - x)).sin_cos();
                [s, -w * c, -w * w * s]
            }
            Shape::Cosh => {
                let (c, s) = ((w * x).cosh(), (w * x).sinh());
                [c, w * s, w * w * c]
            }
            Shape::Sinh => {
                let (c, s) = ((w * x).cosh(), (w * x).sinh());
                [s, w * c, w * w * s]
            }
        }
    }

    /// `k`-th derivative at `x`, `k ≤ 2`.
    pub fn eval(&self, x: f64, k: usize) -> f64 {
        let l = self.lambda;
        let e = (l * x - l.abs() * self.a).exp();
        let [h, h1, h2] = self.shape_derivs(x);
        let v = match k {
            0 => h,
            1 => l * h + h1,
            _ => l * l * h + 2.0 * l * h1 + h2,
        };
        e * v / self.scale
    }

    /// Normalisation divisor applied after the exponential shift.
    pub fn scale(&self) -> f64 {
        self.scale
    }
}

/// Pair of homogeneous solutions of the 1D operator, each normalised so its
/// largest endpoint magnitude is one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomogeneousBasis1D {
    pub roots: RootData,
    pub funcs: [BasisFn1D; 2],
}

impl HomogeneousBasis1D {
    pub fn eval(&self, l: usize, x: f64, k: usize) -> f64 {
        self.funcs[l].eval(x, k)
    }
}

pub fn homogeneous_basis(p: &CdrParams1D) -> HomogeneousBasis1D {
    let roots = classify_regime(p);
    let a = p.a;
    let half = 0.5 * p.pe;
    let funcs = match roots.regime {
        // nearly equal roots: the exponential pair is close to collinear
        Regime::DistinctReal if roots.alpha30 * a <= 1.0 => [
            BasisFn1D::new(half, Shape::Cosh, roots.alpha30, a),
            BasisFn1D::new(half, Shape::Sinh, roots.alpha30, a),
        ],
        Regime::DistinctReal => [
            BasisFn1D::new(half + roots.alpha30, Shape::One, 0.0, a),
            BasisFn1D::new(half - roots.alpha30, Shape::One, 0.0, a),
        ],
        Regime::ComplexPair => [
            BasisFn1D::new(half, Shape::Sin, roots.alpha20, a),
            BasisFn1D::new(half, Shape::SinReflected, roots.alpha20, a),
        ],
        Regime::DoubleReal => [BasisFn1D::new(half, Shape::One, 0.0, a), BasisFn1D::new(half, Shape::Linear, 0.0, a)],
    };
    HomogeneousBasis1D { roots, funcs }
}
