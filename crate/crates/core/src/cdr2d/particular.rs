use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use super::params::CdrParams2D;
use crate::error::{FsmError, Result};
use crate::series::{Parity, TrigSeries2D};

/// Block of `L` acting on the parity coefficients `[cc, cs, sc, ss]` of mode `(m, n)`.
fn mode_block(p: &CdrParams2D, alpha: f64, beta: f64) -> [[f64; 4]; 4] {
    let d = alpha * alpha + beta * beta - p.pe_da();
    let u = p.pe1() * alpha;
    let v = p.pe2() * beta;
    [[d, v, u, 0.0], [-v, d, 0.0, u], [-u, 0.0, d, v], [0.0, -u, -v, d]]
}

/// Truncated double series `φ0` whose image under `L` has the Fourier coefficients of `f`.
pub fn particular_2d_fccm(p: &CdrParams2D, f: &TrigSeries2D) -> Result<TrigSeries2D> {
    let (a, b) = f.half_lengths();
    let (mm, nn) = f.modes();
    let mut out = TrigSeries2D::zeros(a, b, mm, nn);
    let scale = f.max_abs_coeff();
    if scale == 0.0 {
        return Ok(out);
    }
    for m in 0..=mm {
        for n in 0..=nn {
            let active: Vec<Parity> = Parity::ALL.into_iter().filter(|q| q.active(m, n)).collect();
            let rhs = DVector::from_iterator(active.len(), active.iter().map(|&q| f.get(m, n, q)));
            let full = mode_block(p, m as f64 * PI / a, n as f64 * PI / b);
            let k = DMatrix::from_fn(active.len(), active.len(), |i, j| full[active[i].index()][active[j].index()]);
            let sv = k.singular_values();
            let (smin, smax) = (sv.min(), sv.max().max(1.0));
            if smin <= 1e-13 * smax {
                if rhs.amax() <= 1e-13 * scale {
                    continue;
                }
                return Err(if m == 0 && n == 0 {
                    FsmError::SingularMeanMode { mean: rhs[0] / 4.0 }
                } else {
                    FsmError::ResonantMode { m, n }
                });
            }
            let x = k.lu().solve(&rhs).ok_or(FsmError::ResonantMode { m, n })?;
            for (i, &q) in active.iter().enumerate() {
                out.set(m, n, q, x[i]);
            }
        }
    }
    Ok(out)
}

/// Fourier coefficients of `L` applied to a truncated double series.
pub fn apply_operator_2d(p: &CdrParams2D, s: &TrigSeries2D) -> TrigSeries2D {
    let (a, b) = s.half_lengths();
    let (mm, nn) = s.modes();
    let mut out = TrigSeries2D::zeros(a, b, mm, nn);
    for m in 0..=mm {
        for n in 0..=nn {
            let k = mode_block(p, m as f64 * PI / a, n as f64 * PI / b);
            for q in Parity::ALL {
                if !q.active(m, n) {
                    continue;
                }
                let v: f64 = Parity::ALL
                    .iter()
                    .filter(|r| r.active(m, n))
                    .map(|&r| k[q.index()][r.index()] * s.get(m, n, r))
                    .sum();
                out.set(m, n, q, v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{fourier_coeffs_2d, SourceModel, SourceModel2D};
    use proptest::prelude::*;

    #[test]
    fn zero_source_zero_output() {
        let p = CdrParams2D::new(3.0, 90.0, PI / 3.0, 1.0, 1.0).unwrap();
        let s = particular_2d_fccm(&p, &TrigSeries2D::zeros(1.0, 1.0, 5, 5)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn pure_diffusion_single_mode() {
        let p = CdrParams2D::new(0.0, 7.0, 0.4, PI, PI).unwrap();
        let mut f = TrigSeries2D::zeros(PI, PI, 2, 2);
        f.set(1, 1, Parity::CC, 1.0);
        let s = particular_2d_fccm(&p, &f).unwrap();
        assert!((s.get(1, 1, Parity::CC) - 0.5).abs() < 1e-15);
        for q in [Parity::CS, Parity::SC, Parity::SS] {
            assert_eq!(s.get(1, 1, q), 0.0);
        }
    }

    #[test]
    fn nonzero_mean_without_reaction_is_rejected() {
        let p = CdrParams2D::new(3.0, 0.0, 0.4, 1.0, 1.0).unwrap();
        let f = fourier_coeffs_2d(&SourceModel2D::Constant { value: 1.0 }, 1.0, 1.0, 3, 3).unwrap();
        assert!(matches!(particular_2d_fccm(&p, &f), Err(FsmError::SingularMeanMode { .. })));
    }

    #[test]
    fn resonance_is_reported() {
        // α² + β² = Pe·Da with Pe1 = 0 and n = 0
        let p = CdrParams2D::new(1.0, PI * PI, PI / 2.0, 1.0, 1.0).unwrap();
        let mut f = TrigSeries2D::zeros(1.0, 1.0, 2, 2);
        f.set(1, 0, Parity::CC, 1.0);
        assert!(matches!(particular_2d_fccm(&p, &f), Err(FsmError::ResonantMode { m: 1, n: 0 })));
    }

    #[test]
    fn truncated_series_matches_pointwise_operator() {
        let p = CdrParams2D::new(3.0, 90.0, PI / 3.0, 1.0, 0.5).unwrap();
        let src = SourceModel2D::Separable {
            x1: SourceModel::Polynomial { coeffs: vec![1.0, 2.0] },
            x2: SourceModel::Polynomial { coeffs: vec![0.5, 0.0, -1.0] },
        };
        let f = fourier_coeffs_2d(&src, 1.0, 0.5, 6, 6).unwrap();
        let s = particular_2d_fccm(&p, &f).unwrap();
        for &(x1, x2) in &[(0.1, 0.2), (-0.7, 0.3), (0.5, -0.45)] {
            let lhs = p.apply(
                s.eval(x1, x2, 0, 0).unwrap(),
                s.eval(x1, x2, 1, 0).unwrap(),
                s.eval(x1, x2, 0, 1).unwrap(),
                s.eval(x1, x2, 2, 0).unwrap(),
                s.eval(x1, x2, 0, 2).unwrap(),
            );
            let rhs = f.eval(x1, x2, 0, 0).unwrap();
            assert!((lhs - rhs).abs() < 1e-9 * rhs.abs().max(1.0));
        }
    }

    proptest! {
        #[test]
        fn exact_in_truncated_space(
            pe in -200.0f64..200.0,
            da in 0.5f64..50.0,
            theta in 0.0f64..6.3,
            seed in prop::collection::vec(-1.0f64..1.0, 4 * 16),
        ) {
            let p = CdrParams2D::new(pe, da, theta, 1.0, 0.8).unwrap();
            let mut f = TrigSeries2D::zeros(1.0, 0.8, 3, 3);
            for (i, v) in seed.iter().enumerate() {
                f.set(i / 16, (i / 4) % 4, Parity::ALL[i % 4], *v);
            }
            match particular_2d_fccm(&p, &f) {
                Ok(s) => {
                    let back = apply_operator_2d(&p, &s);
                    let err = back.flat().iter().zip(f.flat()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                    prop_assert!(err <= 1e-10 * f.max_abs_coeff().max(1.0));
                }
                Err(FsmError::ResonantMode { .. }) | Err(FsmError::SingularMeanMode { .. }) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
