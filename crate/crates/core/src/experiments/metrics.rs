use serde::Serialize;

pub const SAMPLES_1D: usize = 10001;
pub const GRID_2D: usize = 101;

/// `max|sol − ref| / max|ref|` over paired samples, or the plain maximum
/// difference when the reference is below `1e-14` everywhere.
pub fn max_relative_error(sol: &[f64], reference: &[f64]) -> f64 {
    let mut diff = 0.0f64;
    let mut norm = 0.0f64;
    for (s, r) in sol.iter().zip(reference) {
        diff = diff.max((s - r).abs());
        norm = norm.max(r.abs());
    }
    if norm < 1e-14 {
        diff
    } else {
        diff / norm
    }
}

/// Errors of one derivative over the sample regions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionErrors {
    pub overall: f64,
    pub internal: f64,
    pub boundary: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corner: Option<f64>,
}

/// Per-derivative region errors. 1D orders are `"0"`, `"1"`, `"2"`; 2D orders
/// are `"00"`, `"10"`, `"01"` for `φ`, `∂φ/∂x1`, `∂φ/∂x2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub orders: Vec<String>,
    pub errors: Vec<RegionErrors>,
}

impl ErrorReport {
    pub fn get(&self, order: &str) -> &RegionErrors {
        let i = self.orders.iter().position(|o| o == order).unwrap_or_else(|| panic!("no order {order}"));
        &self.errors[i]
    }

    /// Flat `(column name, value)` pairs in a stable order.
    pub fn columns(&self) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        for (o, e) in self.orders.iter().zip(&self.errors) {
            out.push((format!("overall_k{o}"), e.overall));
            out.push((format!("internal_k{o}"), e.internal));
            out.push((format!("boundary_k{o}"), e.boundary));
            if let Some(c) = e.corner {
                out.push((format!("corner_k{o}"), c));
            }
        }
        out
    }
}

fn split_errors(sol: &[f64], reference: &[f64], region: &[u8]) -> [f64; 4] {
    let pick = |want: &dyn Fn(u8) -> bool| {
        let (s, r): (Vec<f64>, Vec<f64>) =
            sol.iter().zip(reference).zip(region).filter(|(_, g)| want(**g)).map(|((s, r), _)| (*s, *r)).unzip();
        max_relative_error(&s, &r)
    };
    [pick(&|_| true), pick(&|g| g == 0), pick(&|g| g == 1), pick(&|g| g == 2)]
}

/// 1D errors for `k = 0, 1, 2` at `samples` uniform points of `[lo, hi]`;
/// internal samples exclude the endpoints, boundary samples are the endpoints.
pub fn measure_errors_1d(
    sol: &dyn Fn(f64, usize) -> f64,
    reference: &dyn Fn(f64, usize) -> f64,
    lo: f64,
    hi: f64,
    samples: usize,
) -> ErrorReport {
    let n = samples.max(3);
    let xs: Vec<f64> = (0..n).map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect();
    let region: Vec<u8> = (0..n).map(|i| if i == 0 || i == n - 1 { 1 } else { 0 }).collect();
    let mut errors = Vec::new();
    for k in 0..3 {
        let s: Vec<f64> = xs.iter().map(|&x| sol(x, k)).collect();
        let r: Vec<f64> = xs.iter().map(|&x| reference(x, k)).collect();
        let [overall, internal, boundary, _] = split_errors(&s, &r, &region);
        errors.push(RegionErrors { overall, internal, boundary, corner: None });
    }
    ErrorReport { orders: vec!["0".into(), "1".into(), "2".into()], errors }
}

/// 2D errors for `φ`, `∂φ/∂x1`, `∂φ/∂x2` on a `grid × grid` lattice of
/// `[-a, a] × [-b, b]`. Internal points satisfy `|x1| ≤ 0.99a`, `|x2| ≤ 0.99b`;
/// boundary points are edge points other than the corners.
pub fn measure_errors_2d(
    sol: &dyn Fn(f64, f64, usize, usize) -> f64,
    reference: &dyn Fn(f64, f64, usize, usize) -> f64,
    a: f64,
    b: f64,
    grid: usize,
) -> ErrorReport {
    let n = grid.max(3);
    let coord = |i: usize, h: f64| if i == n - 1 { h } else { -h + 2.0 * h * i as f64 / (n - 1) as f64 };
    let mut pts = Vec::with_capacity(n * n);
    let mut region = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (x1, x2) = (coord(i, a), coord(j, b));
            let e1 = i == 0 || i == n - 1;
            let e2 = j == 0 || j == n - 1;
            let g = if e1 && e2 {
                2
            } else if e1 || e2 {
                1
            } else if x1.abs() <= 0.99 * a && x2.abs() <= 0.99 * b {
                0
            } else {
                3
            };
            pts.push((x1, x2));
            region.push(g);
        }
    }
    let mut errors = Vec::new();
    for (k1, k2) in [(0, 0), (1, 0), (0, 1)] {
        let s: Vec<f64> = pts.iter().map(|&(x, y)| sol(x, y, k1, k2)).collect();
        let r: Vec<f64> = pts.iter().map(|&(x, y)| reference(x, y, k1, k2)).collect();
        let [overall, internal, _, _] = split_errors(&s, &r, &region);
        let edge = |g: u8| g == 1;
        let corner = |g: u8| g == 2;
        let sel = |want: &dyn Fn(u8) -> bool| {
            let (ss, rr): (Vec<f64>, Vec<f64>) =
                s.iter().zip(&r).zip(&region).filter(|(_, g)| want(**g)).map(|((s, r), _)| (*s, *r)).unzip();
            max_relative_error(&ss, &rr)
        };
        errors.push(RegionErrors { overall, internal, boundary: sel(&edge), corner: Some(sel(&corner)) });
    }
    ErrorReport { orders: vec!["00".into(), "10".into(), "01".into()], errors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn self_comparison_is_zero() {
        let f = |x: f64, k: usize| (x * (k + 1) as f64).sin();
        let r = measure_errors_1d(&f, &f, 0.0, 1.0, 101);
        assert!(r.errors.iter().all(|e| e.overall == 0.0 && e.internal == 0.0 && e.boundary == 0.0));
        let g = |x: f64, y: f64, k1: usize, k2: usize| x * y + (k1 + 2 * k2) as f64;
        let r = measure_errors_2d(&g, &g, 1.0, 0.5, 11);
        assert!(r.errors.iter().all(|e| e.overall == 0.0 && e.corner == Some(0.0)));
    }

    #[test]
    fn regions_are_separated() {
        let reference = |_: f64, _: usize| 1.0;
        let sol = |x: f64, _: usize| if x == 0.0 || x == 1.0 { 1.5 } else { 1.0 };
        let r = measure_errors_1d(&sol, &reference, 0.0, 1.0, 11);
        assert_eq!(r.get("0").internal, 0.0);
        assert_eq!(r.get("0").boundary, 0.5);
        assert_eq!(r.get("0").overall, 0.5);
    }

    #[test]
    fn absolute_fallback() {
        assert_eq!(max_relative_error(&[1e-3, 0.0], &[0.0, 0.0]), 1e-3);
    }

    proptest! {
        #[test]
        fn metric_properties(v in proptest::collection::vec(-10.0f64..10.0, 1..40), w in proptest::collection::vec(-10.0f64..10.0, 1..40)) {
            let n = v.len().min(w.len());
            let (v, w) = (&v[..n], &w[..n]);
            let d1: Vec<f64> = v.iter().zip(w).map(|(a, b)| (a - b).abs()).collect();
            let d2: Vec<f64> = w.iter().zip(v).map(|(a, b)| (a - b).abs()).collect();
            prop_assert_eq!(d1, d2);
            let e = max_relative_error(v, w);
            prop_assert!(e >= 0.0);
            prop_assert_eq!(e == 0.0, v == w);
        }
    }
}
