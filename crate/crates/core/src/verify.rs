//! Residual checks that turn the function-theoretic identities into numbers:
//! Vekua and Cauchy–Riemann systems, the generalized Cauchy–Riemann operator,
//! the kernel of the Fueter map and the gauge freedom of primitives.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{Multivector, Paravector};
use crate::error::{FueterError, Result};
use crate::forward::{fueter_map, FueterConfig};
use crate::inverse::{FueterPrimitive, Rectangle};
use crate::jet::HolomorphicExpr;
use crate::monogenic::{builtin_pk, PkVariant};

/// Default finite-difference step relative to the rectangle size.
pub const RELATIVE_FD_STEP: f64 = 1e-4;

/// Fourth-order central difference f′(x) ≈ (f(x-2h) - 8f(x-h) + 8f(x+h) - f(x+2h)) / 12h.
pub fn central_derivative(f: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    let fm2 = f(x - 2.0 * h)?;
    let fm1 = f(x - h)?;
    let fp1 = f(x + h)?;
    let fp2 = f(x + 2.0 * h)?;
    Ok((fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h))
}

/// Sample grid over the interior of a rectangle, shrunk so that every
/// finite-difference stencil stays inside.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub rect: Rectangle,
    pub nx0: usize,
    pub nr: usize,
    pub fd_step: f64,
}

/// Serializable summary of a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub rect: [f64; 4],
    pub nx0: usize,
    pub nr: usize,
}

impl GridSpec {
    pub fn new(rect: Rectangle, nx0: usize, nr: usize, fd_step: f64) -> Result<Self> {
        if nx0 == 0 || nr == 0 {
            return Err(FueterError::InvalidArgument("grid needs at least one sample per axis".into()));
        }
        let margin = 2.0 * fd_step;
        if !(fd_step > 0.0) || 2.0 * margin >= rect.b - rect.a || 2.0 * margin >= rect.d - rect.c {
            return Err(FueterError::InvalidArgument(format!(
                "finite-difference step {fd_step} does not fit the rectangle"
            )));
        }
        Ok(Self { rect, nx0, nr, fd_step })
    }

    pub fn with_default_step(rect: Rectangle, nx0: usize, nr: usize) -> Result<Self> {
        let size = (rect.b - rect.a).max(rect.d - rect.c);
        Self::new(rect, nx0, nr, RELATIVE_FD_STEP * size)
    }

    pub fn meta(&self) -> GridMeta {
        GridMeta {
            rect: self.rect.as_array(),
            nx0: self.nx0,
            nr: self.nr,
        }
    }

    fn axis(lo: f64, hi: f64, n: usize, margin: f64) -> Vec<f64> {
        let (lo, hi) = (lo + margin, hi - margin);
        if n == 1 {
            return vec![0.5 * (lo + hi)];
        }
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    /// Interior sample points, x0-major.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let margin = 2.0 * self.fd_step;
        let xs = Self::axis(self.rect.a, self.rect.b, self.nx0, margin);
        let rs = Self::axis(self.rect.c, self.rect.d, self.nr, margin);
        xs.iter().flat_map(|&x| rs.iter().map(move |&r| (x, r))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub name: String,
    pub grid: GridMeta,
    pub max: f64,
    pub mean: f64,
    pub step: f64,
}

impl ResidualReport {
    fn from_samples(name: &str, grid: &GridSpec, samples: &[f64]) -> Self {
        let max = samples.iter().fold(0.0f64, |a, &b| if b.is_nan() { f64::NAN } else { a.max(b) });
        let mean = samples.iter().sum::<f64>() / samples.len().max(1) as f64;
        Self {
            name: name.to_string(),
            grid: grid.meta(),
            max,
            mean,
            step: grid.fd_step,
        }
    }
}

type Field<'a> = &'a dyn Fn(f64, f64) -> f64;

/// max |∂_{x0}A - ∂_rB - (2k+m-1)/r·B| and |∂_{x0}B + ∂_rA| over the grid.
pub fn vekua_residual(a: Field, b: Field, k: u32, m: usize, grid: &GridSpec) -> Result<ResidualReport> {
    let h = grid.fd_step;
    let weight = (2 * k as usize + m - 1) as f64;
    let mut samples = Vec::new();
    for (x0, r) in grid.points() {
        let a_x = central_derivative(&|s| Ok(a(s, r)), x0, h)?;
        let a_r = central_derivative(&|s| Ok(a(x0, s)), r, h)?;
        let b_x = central_derivative(&|s| Ok(b(s, r)), x0, h)?;
        let b_r = central_derivative(&|s| Ok(b(x0, s)), r, h)?;
        let first = (a_x - b_r - weight / r * b(x0, r)).abs();
        let second = (b_x + a_r).abs();
        samples.push(first.max(second));
    }
    Ok(ResidualReport::from_samples("vekua", grid, &samples))
}

/// max |∂_{x0}u - ∂_rv| and |∂_ru + ∂_{x0}v| over the grid.
pub fn cr_residual(u: &dyn Fn(f64, f64) -> Result<f64>, v: &dyn Fn(f64, f64) -> Result<f64>, grid: &GridSpec) -> Result<ResidualReport> {
    let h = grid.fd_step;
    let mut samples = Vec::new();
    for (x0, r) in grid.points() {
        let u_x = central_derivative(&|s| u(s, r), x0, h)?;
        let u_r = central_derivative(&|s| u(x0, s), r, h)?;
        let v_x = central_derivative(&|s| v(s, r), x0, h)?;
        let v_r = central_derivative(&|s| v(x0, s), r, h)?;
        samples.push((u_x - v_r).abs().max((u_r + v_x).abs()));
    }
    Ok(ResidualReport::from_samples("cauchy-riemann", grid, &samples))
}

/// max over grid and components of (∂_{x0} + Σ e_j ∂_{x_j}) F, evaluated at
/// the points x0 + r·direction/|direction|.
pub fn monogenicity_residual(
    f: &dyn Fn(&Paravector) -> Result<Multivector>,
    direction: &[f64],
    grid: &GridSpec,
) -> Result<ResidualReport> {
    let m = direction.len();
    let h = grid.fd_step;
    let mut samples = Vec::new();
    for (x0, r) in grid.points() {
        let p = Paravector::from_axial(x0, r, direction)?;
        let shifted = |axis: usize, s: f64| -> Paravector {
            let mut q = p.clone();
            if axis == 0 {
                q.x0 += s;
            } else {
                q.vec[axis - 1] += s;
            }
            q
        };
        let partial = |axis: usize| -> Result<Multivector> {
            let mut acc = f(&shifted(axis, -2.0 * h))?;
            acc.add_scaled(-8.0, &f(&shifted(axis, -h))?)?;
            acc.add_scaled(8.0, &f(&shifted(axis, h))?)?;
            acc.add_scaled(-1.0, &f(&shifted(axis, 2.0 * h))?)?;
            Ok(acc.scale(1.0 / (12.0 * h)))
        };
        let mut d = partial(0)?;
        for j in 1..=m {
            let ej = Multivector::basis_vector(m, j)?;
            d = d.add(&ej.product(&partial(j)?)?)?;
        }
        samples.push(d.max_abs());
    }
    Ok(ResidualReport::from_samples("monogenicity", grid, &samples))
}

/// Result of evaluating Ft[zⁿ, P_k] over a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    pub n: u32,
    pub k: u32,
    pub m: usize,
    /// max over the grid of the coefficient norm of Ft[zⁿ, P_k]
    pub max: f64,
    /// n ≤ 2k + m - 2
    pub expected_zero: bool,
    /// norm at (x0, r) = (1, 1) in direction e₁
    pub at_reference: f64,
}

/// Evaluate Ft[zⁿ, P_k] with the built-in P_k (x₁e₂ + x₂e₁ for k = 1) along e₁.
pub fn kernel_check(n: u32, k: u32, m: usize, grid: &GridSpec) -> Result<KernelReport> {
    let cfg = FueterConfig::new(m, k)?;
    let p_k = builtin_pk(m, k, PkVariant::default())?;
    let h = HolomorphicExpr::power(n as i32);
    let mut direction = vec![0.0; m];
    direction[0] = 1.0;
    let mut max = 0.0f64;
    for (x0, r) in grid.points() {
        let p = Paravector::from_axial(x0, r, &direction)?;
        max = max.max(fueter_map(&h, &p_k, &cfg, &p)?.norm());
    }
    let reference = Paravector::from_axial(1.0, 1.0, &direction)?;
    let at_reference = fueter_map(&h, &p_k, &cfg, &reference)?.norm();
    Ok(KernelReport {
        n,
        k,
        m,
        max,
        expected_zero: n <= cfg.kernel_degree(),
        at_reference,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialFit {
    /// real coefficients of z⁰, z¹, …
    pub coeffs: Vec<f64>,
    /// max |d(z) - fit(z)| over the samples
    pub residual: f64,
}

/// Least-squares fit of Σ c_n zⁿ (c_n real, n ≤ degree) to samples (z, d(z)).
pub fn polynomial_fit_residual(samples: &[(Complex64, Complex64)], degree: usize) -> Result<PolynomialFit> {
    if samples.len() < degree + 2 {
        return Err(FueterError::InvalidArgument(format!(
            "degree {degree} fit needs at least {} samples, got {}",
            degree + 2,
            samples.len()
        )));
    }
    let cols = degree + 1;
    let rows = 2 * samples.len();
    let mut design = DMatrix::<f64>::zeros(rows, cols);
    let mut rhs = DVector::<f64>::zeros(rows);
    for (i, (z, d)) in samples.iter().enumerate() {
        let mut zp = Complex64::new(1.0, 0.0);
        for n in 0..cols {
            design[(2 * i, n)] = zp.re;
            design[(2 * i + 1, n)] = zp.im;
            zp *= z;
        }
        rhs[2 * i] = d.re;
        rhs[2 * i + 1] = d.im;
    }
    // column equilibration before the SVD
    let scales: Vec<f64> = (0..cols).map(|n| design.column(n).norm()).collect();
    if scales.contains(&0.0) {
        return Err(FueterError::RankDeficient);
    }
    for (n, s) in scales.iter().enumerate() {
        design.column_mut(n).scale_mut(1.0 / s);
    }
    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin <= 1e-12 * smax {
        return Err(FueterError::RankDeficient);
    }
    let solution = svd
        .solve(&rhs, 0.0)
        .map_err(|_| FueterError::RankDeficient)?;
    let coeffs: Vec<f64> = solution.iter().zip(&scales).map(|(c, s)| c / s).collect();
    let residual = samples
        .iter()
        .map(|(z, d)| {
            let fit = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
            (d - fit).norm()
        })
        .fold(0.0, f64::max);
    Ok(PolynomialFit { coeffs, residual })
}

/// Forward map and Cauchy–Riemann residuals of a computed primitive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundTripReport {
    /// max |Ft[u + iv] - (A, B)| over the grid, componentwise
    pub forward: ResidualReport,
    pub cauchy_riemann: ResidualReport,
}

/// Check a primitive against its source field: Ft of (u, v) via
/// [`FueterPrimitive::forward_fields`], and the Cauchy–Riemann system.
pub fn roundtrip(prim: &FueterPrimitive, grid: &GridSpec) -> Result<RoundTripReport> {
    let field = prim.field();
    let mut samples = Vec::new();
    for (x0, r) in grid.points() {
        let (a, b) = prim.forward_fields(x0, r, grid.fd_step)?;
        let err = (a - field.eval_a(x0, r)?).abs().max((b - field.eval_b(x0, r)?).abs());
        samples.push(err);
    }
    let forward = ResidualReport::from_samples("roundtrip-forward", grid, &samples);
    let cauchy_riemann = cr_residual(&|x, r| Ok(prim.eval(x, r)?.0), &|x, r| Ok(prim.eval(x, r)?.1), grid)?;
    Ok(RoundTripReport { forward, cauchy_riemann })
}

/// Max over the grid of both construction-identity residuals.
pub fn construction_identity_residual(prim: &FueterPrimitive, grid: &GridSpec) -> Result<ResidualReport> {
    let mut samples = Vec::new();
    for (x0, r) in grid.points() {
        let (du, dv) = prim.construction_identity(x0, r, grid.fd_step)?;
        samples.push(du.abs().max(dv.abs()));
    }
    Ok(ResidualReport::from_samples("construction-identity", grid, &samples))
}

/// Inclusive nx × nr tensor grid over [a, b] × [c, d], x0-major.
pub fn tensor_grid(a: f64, b: f64, c: f64, d: f64, nx: usize, nr: usize) -> Vec<(f64, f64)> {
    let lin = |lo: f64, hi: f64, n: usize, i: usize| if n == 1 { lo } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
    (0..nx)
        .flat_map(|i| (0..nr).map(move |j| (lin(a, b, nx, i), lin(c, d, nr, j))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_grid(n: usize) -> GridSpec {
        GridSpec::with_default_step(Rectangle::new(0.0, 1.0, 0.5, 1.5).unwrap(), n, n).unwrap()
    }

    #[test]
    fn grid_stays_inside() {
        let g = unit_grid(5);
        let pts = g.points();
        assert_eq!(pts.len(), 25);
        for (x, r) in pts {
            assert!(x - 2.0 * g.fd_step >= 0.0 && x + 2.0 * g.fd_step <= 1.0);
            assert!(r - 2.0 * g.fd_step >= 0.5 && r + 2.0 * g.fd_step <= 1.5);
        }
        assert!(GridSpec::new(g.rect, 3, 3, 0.5).is_err());
    }

    #[test]
    fn vekua_simple_fields() {
        let g = unit_grid(6);
        let rep = vekua_residual(&|_, _| 1.0, &|_, _| 0.0, 0, 3, &g).unwrap();
        assert_eq!(rep.max, 0.0);
        let rep = vekua_residual(&|x, _| x, &|_, _| 0.0, 0, 3, &g).unwrap();
        assert!((rep.max - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cr_simple_fields() {
        let g = unit_grid(6);
        let rep = cr_residual(&|x, _| Ok(x), &|_, y| Ok(y), &g).unwrap();
        assert!(rep.max < 1e-10);
        let rep = cr_residual(&|x, _| Ok(x * x), &|_, _| Ok(0.0), &g).unwrap();
        let largest_x = g.points().iter().map(|p| p.0).fold(0.0, f64::max);
        assert!((rep.max - 2.0 * largest_x).abs() < 1e-9);
    }

    #[test]
    fn monogenicity_simple_fields() {
        let g = unit_grid(4);
        let dir = [1.0, 0.0, 0.0];
        let rep = monogenicity_residual(&|_| Multivector::scalar(3, 2.0), &dir, &g).unwrap();
        assert_eq!(rep.max, 0.0);
        let rep = monogenicity_residual(&|p| Multivector::scalar(3, p.x0), &dir, &g).unwrap();
        assert!((rep.max - 1.0).abs() < 1e-10);
    }

    #[test]
    fn polynomial_fits() {
        let zs: Vec<Complex64> = (0..12).map(|i| Complex64::new(0.1 * i as f64, 0.5 + 0.05 * i as f64)).collect();
        let lin: Vec<_> = zs.iter().map(|&z| (z, z * 0.25)).collect();
        let fit = polynomial_fit_residual(&lin, 1).unwrap();
        assert!(fit.residual < 1e-12);
        assert!((fit.coeffs[1] - 0.25).abs() < 1e-12);
        let sq: Vec<_> = zs.iter().map(|&z| (z, z * z)).collect();
        assert!(polynomial_fit_residual(&sq, 1).unwrap().residual > 1e-3);
        let same: Vec<_> = (0..5).map(|_| (Complex64::new(1.0, 1.0), Complex64::new(0.0, 0.0))).collect();
        assert_eq!(polynomial_fit_residual(&same, 2).unwrap_err(), FueterError::RankDeficient);
        assert!(polynomial_fit_residual(&lin[..2], 1).is_err());
    }

    #[test]
    fn kernel_examples() {
        let g = unit_grid(5);
        let rep = kernel_check(1, 0, 3, &g).unwrap();
        assert!(rep.expected_zero && rep.max <= 1e-10);
        let rep = kernel_check(2, 0, 3, &g).unwrap();
        assert!(!rep.expected_zero);
        assert!((rep.max - 4.0).abs() < 1e-12 && (rep.at_reference - 4.0).abs() < 1e-12);
        let rep = kernel_check(3, 0, 5, &g).unwrap();
        assert!(rep.expected_zero && rep.max <= 1e-10);
    }
}
