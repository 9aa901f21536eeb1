//! Forward Fueter map Ft[h, P_k] in radial-operator form.
//!
//! Ft[h, P_k] = (2k+m-1)!! ((r⁻¹∂_r)^N u + ω̲ (∂_r r⁻¹)^N v) P_k(x̲), N = k + (m-1)/2.
//! The iterated Laplacian form is kept only as a finite-difference oracle.

use crate::clifford::{Multivector, Paravector, MAX_DIM};
use crate::error::{FueterError, Result};
use crate::jet::{radial_derivatives, Holomorphic};
use crate::monogenic::MonogenicPolynomial;
use crate::radial::{double_factorial, radial_op, RadialVariant};

/// Dimension, degree and the derived constants of the Fueter map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FueterConfig {
    m: usize,
    k: u32,
    order: u32,
    leading: u128,
}

impl FueterConfig {
    pub fn new(m: usize, k: u32) -> Result<Self> {
        if m.is_multiple_of(2) {
            return Err(FueterError::EvenDimension(m));
        }
        if !(3..=MAX_DIM).contains(&m) {
            return Err(FueterError::UnsupportedDimension(m));
        }
        let order = k + (m as u32 - 1) / 2;
        let leading = double_factorial(2 * k + m as u32 - 1)?;
        Ok(Self { m, k, order, leading })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// N = k + (m-1)/2.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// (2k+m-1)!!, exact.
    pub fn leading(&self) -> u128 {
        self.leading
    }

    /// 2k + m - 2: the largest n with Ft[zⁿ] = 0.
    pub fn kernel_degree(&self) -> u32 {
        2 * self.k + self.m as u32 - 2
    }

    fn check_polynomial(&self, p: &MonogenicPolynomial) -> Result<()> {
        if p.dim() != self.m {
            return Err(FueterError::DimensionMismatch {
                expected: self.m,
                found: p.dim(),
            });
        }
        if p.degree() != self.k {
            return Err(FueterError::InvalidArgument(format!(
                "P_k has degree {}, configuration expects k = {}",
                p.degree(),
                self.k
            )));
        }
        Ok(())
    }
}

/// Scalar fields (A, B) of Ft[h, P_k] = (A + ω̲B) P_k at (x0, r).
pub fn radial_fields(h: &dyn Holomorphic, cfg: &FueterConfig, x0: f64, r: f64) -> Result<(f64, f64)> {
    let n = cfg.order;
    let (u, v) = radial_derivatives(h, x0, r, n as usize)?;
    let lead = cfg.leading as f64;
    let a = lead * radial_op(&u, r, n, RadialVariant::Minus)?;
    let b = lead * radial_op(&v, r, n, RadialVariant::Plus)?;
    Ok((a, b))
}

/// (A + ω̲B) P_k(x̲) at the point `p`.
pub fn assemble_axial(a: f64, b: f64, p_k: &MonogenicPolynomial, p: &Paravector) -> Result<Multivector> {
    let omega = p.omega()?;
    let mut radial = omega.scale(b);
    radial.add_scaled(a, &Multivector::scalar(p.dim(), 1.0)?)?;
    radial.product(&p_k.eval(&p.vec)?)
}

/// Ft[h, P_k] at `p` via the radial-operator form.
pub fn fueter_map(
    h: &dyn Holomorphic,
    p_k: &MonogenicPolynomial,
    cfg: &FueterConfig,
    p: &Paravector,
) -> Result<Multivector> {
    cfg.check_polynomial(p_k)?;
    if p.dim() != cfg.m {
        return Err(FueterError::DimensionMismatch {
            expected: cfg.m,
            found: p.dim(),
        });
    }
    let r = p.radius();
    if r == 0.0 {
        return Err(FueterError::Domain("Ft is not evaluated on the axis r = 0".into()));
    }
    let (a, b) = radial_fields(h, cfg, p.x0, r)?;
    assemble_axial(a, b, p_k, p)
}

/// (u(x0,r) + ω̲ v(x0,r)) P_k(x̲), the function whose iterated Laplacian is Ft.
fn pre_image(h: &dyn Holomorphic, p_k: &MonogenicPolynomial, y: &[f64]) -> Result<Multivector> {
    let p = Paravector::new(y[0], y[1..].to_vec());
    let r = p.radius();
    if r == 0.0 {
        return Err(FueterError::Domain("finite-difference stencil reached the axis".into()));
    }
    let (u, v) = radial_derivatives(h, p.x0, r, 0)?;
    assemble_axial(u[0], v[0], p_k, &p)
}

fn fd_laplacian(
    f: &dyn Fn(&[f64]) -> Result<Multivector>,
    y: &[f64],
    step: f64,
    times: u32,
) -> Result<Multivector> {
    if times == 0 {
        return f(y);
    }
    let centre = fd_laplacian(f, y, step, times - 1)?;
    let mut acc = centre.scale(-2.0 * y.len() as f64);
    let mut shifted = y.to_vec();
    for i in 0..y.len() {
        for s in [step, -step] {
            shifted[i] = y[i] + s;
            acc = acc.add(&fd_laplacian(f, &shifted, step, times - 1)?)?;
        }
        shifted[i] = y[i];
    }
    Ok(acc.scale(1.0 / (step * step)))
}

/// Δ^N[(u + ω̲v) P_k] by nested second-order central differences in the
/// m+1 Cartesian coordinates. Only N ≤ 2 is supported; the error is O(step²).
pub fn laplacian_oracle(
    h: &dyn Holomorphic,
    p_k: &MonogenicPolynomial,
    cfg: &FueterConfig,
    p: &Paravector,
    fd_step: f64,
) -> Result<Multivector> {
    cfg.check_polynomial(p_k)?;
    if cfg.order > 2 {
        return Err(FueterError::InvalidArgument(format!(
            "Laplacian oracle supports N <= 2, got N = {}",
            cfg.order
        )));
    }
    if !(fd_step > 0.0) {
        return Err(FueterError::InvalidArgument("fd_step must be positive".into()));
    }
    if p.dim() != cfg.m {
        return Err(FueterError::DimensionMismatch {
            expected: cfg.m,
            found: p.dim(),
        });
    }
    // every stencil point lies within N·step of p in each coordinate
    if p.radius() <= cfg.order as f64 * fd_step * (cfg.m as f64).sqrt() {
        return Err(FueterError::Domain("finite-difference stencil reaches the axis".into()));
    }
    let mut y = vec![p.x0];
    y.extend_from_slice(&p.vec);
    let f = |y: &[f64]| pre_image(h, p_k, y);
    fd_laplacian(&f, &y, fd_step, cfg.order)
}
