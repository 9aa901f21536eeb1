//! Fixed-step classical Runge–Kutta with cubic Hermite dense output.

use serde::{Deserialize, Serialize};

use crate::error::{FueterError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OdeMethod {
    #[default]
    Rk4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdeConfig {
    pub steps: usize,
    pub method: OdeMethod,
}

impl Default for OdeConfig {
    fn default() -> Self {
        Self {
            steps: 2048,
            method: OdeMethod::Rk4,
        }
    }
}

/// Samples y(x_i) and y′(x_i) on a uniform grid.
#[derive(Clone, Debug)]
pub struct DenseSolution {
    start: f64,
    end: f64,
    step: f64,
    values: Vec<Vec<f64>>,
    slopes: Vec<Vec<f64>>,
}

impl DenseSolution {
    pub fn interval(&self) -> (f64, f64) {
        (self.start, self.end)
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |i| self.node(i))
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    fn node(&self, i: usize) -> f64 {
        if i + 1 == self.values.len() {
            self.end
        } else {
            self.start + i as f64 * self.step
        }
    }

    /// Cubic Hermite interpolation of state and derivative at `x`.
    pub fn eval(&self, x: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let slack = 1e-12 * (self.end - self.start);
        if x < self.start - slack || x > self.end + slack {
            return Err(FueterError::Domain(format!(
                "x0 = {x} outside [{}, {}]",
                self.start, self.end
            )));
        }
        let last = self.values.len() - 2;
        let i = (((x - self.start) / self.step).floor().max(0.0) as usize).min(last);
        let h = self.step;
        let t = (x - self.node(i)) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let d00 = (6.0 * t2 - 6.0 * t) / h;
        let d10 = 3.0 * t2 - 4.0 * t + 1.0;
        let d01 = (-6.0 * t2 + 6.0 * t) / h;
        let d11 = 3.0 * t2 - 2.0 * t;
        let (y0, y1) = (&self.values[i], &self.values[i + 1]);
        let (s0, s1) = (&self.slopes[i], &self.slopes[i + 1]);
        let y = (0..y0.len())
            .map(|k| h00 * y0[k] + h10 * h * s0[k] + h01 * y1[k] + h11 * h * s1[k])
            .collect();
        let dy = (0..y0.len())
            .map(|k| d00 * y0[k] + d10 * s0[k] + d01 * y1[k] + d11 * s1[k])
            .collect();
        Ok((y, dy))
    }
}

/// Integrate y′ = f(x, y) from `start` to `end` with `cfg.steps` RK4 steps.
pub fn solve<F>(f: F, start: f64, end: f64, y0: &[f64], cfg: &OdeConfig) -> Result<DenseSolution>
where
    F: Fn(f64, &[f64]) -> Result<Vec<f64>>,
{
    if cfg.steps == 0 || !(end > start) {
        return Err(FueterError::InvalidArgument(format!(
            "ODE needs steps > 0 and start < end (got {} steps on [{start}, {end}])",
            cfg.steps
        )));
    }
    let OdeMethod::Rk4 = cfg.method;
    let h = (end - start) / cfg.steps as f64;
    let axpy = |y: &[f64], s: f64, k: &[f64]| -> Vec<f64> { y.iter().zip(k).map(|(a, b)| a + s * b).collect() };

    let mut values = Vec::with_capacity(cfg.steps + 1);
    let mut slopes = Vec::with_capacity(cfg.steps + 1);
    let mut y = y0.to_vec();
    let mut k1 = f(start, &y)?;
    for i in 0..cfg.steps {
        let x = start + i as f64 * h;
        let k2 = f(x + 0.5 * h, &axpy(&y, 0.5 * h, &k1))?;
        let k3 = f(x + 0.5 * h, &axpy(&y, 0.5 * h, &k2))?;
        let k4 = f(x + h, &axpy(&y, h, &k3))?;
        let next: Vec<f64> = (0..y.len())
            .map(|j| y[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]))
            .collect();
        if next.iter().any(|v| !v.is_finite()) {
            return Err(FueterError::Ode(x + h));
        }
        values.push(std::mem::replace(&mut y, next));
        slopes.push(k1);
        let x_next = if i + 1 == cfg.steps { end } else { x + h };
        k1 = f(x_next, &y)?;
    }
    values.push(y);
    slopes.push(k1);
    Ok(DenseSolution {
        start,
        end,
        step: h,
        values,
        slopes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let cfg = OdeConfig { steps: 200, ..Default::default() };
        let sol = solve(|_, y| Ok(vec![-y[0]]), 0.0, 2.0, &[1.0], &cfg).unwrap();
        for x in [0.0, 0.3, 1.234, 2.0] {
            let (y, dy) = sol.eval(x).unwrap();
            assert!((y[0] - (-x).exp()).abs() < 1e-9, "{x}");
            assert!((dy[0] + (-x).exp()).abs() < 1e-6);
        }
        assert!(sol.eval(2.5).is_err());
    }

    #[test]
    fn cubic_forcing_is_exact() {
        // y′ = 3x² integrates exactly under RK4 (Simpson) and Hermite cubic
        let cfg = OdeConfig { steps: 7, ..Default::default() };
        let sol = solve(|x, _| Ok(vec![3.0 * x * x]), -1.0, 1.0, &[0.0], &cfg).unwrap();
        for x in [-0.77, 0.0, 0.5, 1.0] {
            let (y, _) = sol.eval(x).unwrap();
            assert!((y[0] - (x * x * x + 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn blow_up_is_reported() {
        let cfg = OdeConfig { steps: 100, ..Default::default() };
        let err = solve(|_, y| Ok(vec![y[0] * y[0] * 1e200]), 0.0, 1.0, &[1.0], &cfg).unwrap_err();
        assert!(matches!(err, FueterError::Ode(_)));
    }
}
