//! Adaptive Gauss–Legendre quadrature with panel bisection.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{FueterError, Result};

/// Tolerance and panel rule for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub max_depth: u32,
    pub panel_order: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            max_depth: 40,
            panel_order: 16,
        }
    }
}

/// Nodes and weights on [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// n-point rule from Newton iteration on P_n.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// One-panel estimate of ∫_a^b f.
    pub fn apply<F: Fn(f64) -> Result<f64>>(&self, f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let fx = f(mid + half * x)?;
            sum += w * fx;
            abs_sum += w * fx.abs();
        }
        Ok((sum * half, abs_sum * half.abs()))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Shared, lazily built rules keyed by order.
pub fn rule(order: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(r) = cache.read().expect("rule cache poisoned").get(&order) {
        return Arc::clone(r);
    }
    let built = Arc::new(GaussLegendre::new(order));
    cache
        .write()
        .expect("rule cache poisoned")
        .entry(order)
        .or_insert(built)
        .clone()
}

/// ∫_a^b f for an infallible integrand.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    try_integrate(|x| Ok(f(x)), a, b, cfg)
}

/// ∫_a^b f by recursive bisection.
///
/// A panel is accepted when its estimate agrees with the sum over its two
/// halves to within its share of `abs_tol` (proportional to panel length), or
/// when the disagreement is at the rounding level of the panel itself.
/// Reversed limits flip the sign; `a == b` returns 0.
pub fn try_integrate<F: Fn(f64) -> Result<f64>>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(FueterError::InvalidArgument("non-finite integration limits".into()));
    }
    let gl = rule(cfg.panel_order.max(1));
    let total_len = (b - a).abs();
    let (whole, whole_abs) = gl.apply(&f, a, b)?;
    let mut stack = vec![(a, b, whole, whole_abs, 0u32)];
    let mut result = 0.0;
    while let Some((lo, hi, est, est_abs, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let (left, left_abs) = gl.apply(&f, lo, mid)?;
        let (right, right_abs) = gl.apply(&f, mid, hi)?;
        let refined = left + right;
        let diff = (refined - est).abs();
        let local_tol = cfg.abs_tol * (hi - lo).abs() / total_len;
        let roundoff = 64.0 * f64::EPSILON * est_abs.max(left_abs + right_abs);
        if diff <= local_tol || diff <= roundoff {
            result += refined;
            continue;
        }
        if depth + 1 >= cfg.max_depth {
            return Err(FueterError::Quadrature {
                a,
                b,
                tol: cfg.abs_tol,
                depth: cfg.max_depth,
            });
        }
        stack.push((lo, mid, left, left_abs, depth + 1));
        stack.push((mid, hi, right, right_abs, depth + 1));
    }
    if !result.is_finite() {
        return Err(FueterError::Quadrature {
            a,
            b,
            tol: cfg.abs_tol,
            depth: cfg.max_depth,
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 16, 64] {
            let r = GaussLegendre::new(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n = {n}: {s}");
        }
    }

    #[test]
    fn sixteen_points_are_exact_to_degree_31() {
        let r = GaussLegendre::new(16);
        let (v, _) = r.apply(&|x: f64| Ok(x.powi(30)), -1.0, 1.0).unwrap();
        assert!((v - 2.0 / 31.0).abs() < 1e-15);
    }

    #[test]
    fn smooth_integrals() {
        let cfg = QuadratureConfig::default();
        let v = integrate(|x| x.sin(), 0.0, PI, &cfg).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
        let v = integrate(|x| 1.0 / (1.0 + 25.0 * x * x), -1.0, 1.0, &cfg).unwrap();
        assert!((v - 0.4 * 5f64.atan()).abs() < 1e-11);
    }

    #[test]
    fn empty_and_reversed_intervals() {
        let cfg = QuadratureConfig::default();
        assert_eq!(integrate(|x| x, 1.5, 1.5, &cfg).unwrap(), 0.0);
        let v = integrate(|x| x, 1.0, 0.0, &cfg).unwrap();
        assert!((v + 0.5).abs() < 1e-15);
    }

    #[test]
    fn non_convergence_is_reported() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-14,
            max_depth: 3,
            panel_order: 4,
        };
        let err = integrate(|x| (1.0 / x).sin(), 1e-3, 1.0, &cfg).unwrap_err();
        assert!(matches!(err, FueterError::Quadrature { .. }));
    }
}
