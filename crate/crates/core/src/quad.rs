//! Gauss–Legendre panel quadrature and sequence acceleration.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::Complex64;

/// Gauss–Legendre rule on `[-1, 1]` with nodes computed by Newton iteration
/// on the Legendre recurrence.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            // Chebyshev-based initial guess.
            let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        nodes.reverse();
        weights.reverse();
        GaussLegendre { nodes, weights }
    }

    pub fn degree(&self) -> usize {
        self.nodes.len()
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Integrate a complex-valued `f` over `[a, b]`.
    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
        &self,
        a: f64,
        b: f64,
        mut f: F,
    ) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * x) * w;
        }
        acc * half
    }

    /// Integrate over `[a, b]` split into `panels` equal panels.
    pub fn integrate_panels<F: FnMut(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: F,
    ) -> f64 {
        let h = (b - a) / panels as f64;
        let mut acc = 0.0;
        for i in 0..panels {
            acc += self.integrate(a + i as f64 * h, a + (i + 1) as f64 * h, &mut f);
        }
        acc
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    if n == 1 {
        return (x, 1.0);
    }
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// One pass of Aitken's delta-squared transform.
fn aitken_pass(s: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(s.len().saturating_sub(2));
    for w in s.windows(3) {
        let denom = w[2] - 2.0 * w[1] + w[0];
        if denom.norm() < 1e-300 {
            out.push(w[2]);
        } else {
            let d = w[2] - w[1];
            out.push(w[2] - d * d / denom);
        }
    }
    out
}

/// Iterated Aitken extrapolation of a partial-sum sequence. Returns the
/// extrapolated limit and an empirical error estimate (the distance between
/// the last two extrapolation stages).
pub fn aitken_limit(partial_sums: &[Complex64]) -> (Complex64, f64) {
    let mut row: Vec<Complex64> = partial_sums.to_vec();
    let mut best = *row.last().unwrap_or(&Complex64::new(0.0, 0.0));
    let mut est = f64::INFINITY;
    while row.len() >= 3 {
        let next = aitken_pass(&row);
        if next.is_empty() {
            break;
        }
        let candidate = *next.last().unwrap();
        let spread = (candidate - best).norm();
        best = candidate;
        est = spread;
        row = next;
    }
    (best, est)
}

/// Real-sequence convenience wrapper around [`aitken_limit`].
pub fn aitken_limit_real(partial_sums: &[f64]) -> (f64, f64) {
    let complex: Vec<Complex64> = partial_sums
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    let (v, e) = aitken_limit(&complex);
    (v.re, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_nodes_integrate_polynomials_exactly() {
        // An n-point rule is exact through degree 2n-1.
        let gl = GaussLegendre::new(5);
        let val = gl.integrate(0.0, 1.0, |x| x.powi(9));
        assert!((val - 0.1).abs() < 1e-14, "got {val}");
        let gl = GaussLegendre::new(32);
        let val = gl.integrate(-2.0, 3.0, |x| x.powi(63));
        let exact = (3.0f64.powi(64) - 2.0f64.powi(64)) / 64.0;
        assert!((val - exact).abs() / exact.abs() < 1e-12);
    }

    #[test]
    fn gl_matches_transcendental_integral() {
        let gl = GaussLegendre::new(32);
        let val = gl.integrate_panels(0.0, core::f64::consts::PI, 4, |x| x.sin());
        assert!((val - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gl_weights_sum_to_two() {
        for n in [1usize, 2, 7, 16, 32, 48] {
            let gl = GaussLegendre::new(n);
            let s: f64 = gl.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n} sum={s}");
            assert!(gl.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn aitken_accelerates_alternating_series() {
        // ln 2 = 1 - 1/2 + 1/3 - ...
        let mut s = 0.0;
        let partials: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        let raw_err = (partials.last().unwrap() - core::f64::consts::LN_2).abs();
        let (accel, _) = aitken_limit_real(&partials);
        let accel_err = (accel - core::f64::consts::LN_2).abs();
        assert!(accel_err < 1e-10, "accel_err = {accel_err}");
        assert!(accel_err < raw_err / 1e6);
    }

    #[test]
    fn aitken_handles_geometric_tails() {
        let partials: Vec<f64> = (0..12).map(|k| 5.0 - 3.0 * 0.7f64.powi(k)).collect();
        let (accel, est) = aitken_limit_real(&partials);
        assert!((accel - 5.0).abs() < 1e-12);
        assert!(est < 1e-6);
    }
}
