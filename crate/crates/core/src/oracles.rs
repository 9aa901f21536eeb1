//! Closed-form reference fields and primitives: the monogenic Cauchy kernel,
//! the Cauchy-kernel example in R^6 (k = 0, m = 5), the sphere-integrated
//! kernels 𝒩± in R^4 with their primitives, and a direct quadrature of the
//! sphere integrals.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::clifford::{Multivector, Paravector};
use crate::error::{FueterError, Result};
use crate::inverse::{AxialFunction, Rectangle};
use crate::jet::{Holomorphic, HolomorphicExpr};
use crate::monogenic::{builtin_pk, MonogenicPolynomial, PkVariant};
use crate::quadrature::GaussLegendre;
use crate::radial::double_factorial;

/// Surface area of the unit sphere in R^n: 2π^{n/2}/Γ(n/2).
pub fn unit_sphere_area(n: u32) -> f64 {
    assert!(n >= 1, "ambient dimension must be positive");
    // Γ(n/2) by the half-integer recurrence from Γ(1/2) = √π or Γ(1) = 1
    let mut gamma = if n.is_multiple_of(2) { 1.0 } else { PI.sqrt() };
    let mut x = if n.is_multiple_of(2) { 1.0 } else { 0.5 };
    while x < n as f64 / 2.0 {
        gamma *= x;
        x += 1.0;
    }
    2.0 * PI.powf(n as f64 / 2.0) / gamma
}

/// 𝒢(x) = conj(x) / (A_{m+1} |x|^{m+1}), A_{m+1} the area of S^m ⊂ R^{m+1}.
pub fn cauchy_kernel(m: usize, p: &Paravector) -> Result<Multivector> {
    if p.dim() != m {
        return Err(FueterError::DimensionMismatch { expected: m, found: p.dim() });
    }
    let n2 = p.norm_sqr();
    if n2 == 0.0 {
        return Err(FueterError::Domain("Cauchy kernel at the origin".into()));
    }
    let scale = 1.0 / (unit_sphere_area(m as u32 + 1) * n2.powf((m as f64 + 1.0) / 2.0));
    Ok(p.embed()?.conjugate().scale(scale))
}

/// Quantities displayed for the Cauchy-kernel example (k = 0, m = 5, N = 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example1Field {
    A,
    B,
    I1,
    I2,
    Alpha0,
    Alpha1,
    Beta0,
    Beta1,
    U,
    V,
}

impl Example1Field {
    pub const ALL: [Example1Field; 10] = [
        Self::A,
        Self::B,
        Self::I1,
        Self::I2,
        Self::Alpha0,
        Self::Alpha1,
        Self::Beta0,
        Self::Beta1,
        Self::U,
        Self::V,
    ];
}

/// Closed forms for H = (x0 - x̲)/|x0 + x̲|⁶ in R^6 and its primitive
/// u + iv = 1/(64 z), with integration from r = c.
pub fn example1_oracle(field: Example1Field, x0: f64, r: f64, c: f64) -> Result<f64> {
    let s = x0 * x0 + r * r;
    let sc = x0 * x0 + c * c;
    if s == 0.0 || sc == 0.0 {
        return Err(FueterError::Domain(format!("singular point ({x0}, {r}) with c = {c}")));
    }
    let beta0 = -(x0 * x0 + 2.0 * c * c) / (64.0 * sc * sc);
    let beta1 = 1.0 / (64.0 * sc * sc);
    let w = (r * r - c * c).powi(2) / (4.0 * s * sc * sc);
    Ok(match field {
        Example1Field::A => x0 / s.powi(3),
        Example1Field::B => -r / s.powi(3),
        Example1Field::I1 => w * x0,
        Example1Field::I2 => -w * r,
        Example1Field::Beta0 => beta0,
        Example1Field::Alpha0 => -x0 * beta0,
        Example1Field::Beta1 => beta1,
        Example1Field::Alpha1 => -x0 * beta1,
        Example1Field::U => x0 / (64.0 * s),
        Example1Field::V => -r / (64.0 * s),
    })
}

/// Components of 𝒩± (axial fields in R^4) and their primitives 𝒲±.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example2Field {
    NplusA,
    NplusB,
    NminusA,
    NminusB,
    Wplus,
    Wminus,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OracleValue {
    Real(f64),
    Complex(Complex64),
}

impl OracleValue {
    pub fn real(self) -> Option<f64> {
        match self {
            Self::Real(v) => Some(v),
            Self::Complex(_) => None,
        }
    }

    pub fn complex(self) -> Complex64 {
        match self {
            Self::Real(v) => Complex64::new(v, 0.0),
            Self::Complex(z) => z,
        }
    }
}

/// 𝒲⁺ = arctan z / 2π.
pub fn w_plus() -> HolomorphicExpr {
    HolomorphicExpr::arctan().scaled(1.0 / (2.0 * PI))
}

/// 𝒲⁻ = z arctan z / 2π.
pub fn w_minus() -> HolomorphicExpr {
    HolomorphicExpr::z_arctan().scaled(1.0 / (2.0 * PI))
}

pub fn example2_oracle(field: Example2Field, x0: f64, r: f64) -> Result<OracleValue> {
    match field {
        Example2Field::Wplus => return Ok(OracleValue::Complex(w_plus().eval(Complex64::new(x0, r))?)),
        Example2Field::Wminus => return Ok(OracleValue::Complex(w_minus().eval(Complex64::new(x0, r))?)),
        _ => {}
    }
    let near = x0 * x0 + (r - 1.0).powi(2);
    if !(r > 0.0) || near == 0.0 {
        return Err(FueterError::Domain(format!(
            "({x0}, {r}) is on the axis or on the singular circle"
        )));
    }
    let far = x0 * x0 + (r + 1.0).powi(2);
    let q = 1.0 + x0 * x0 - r * r;
    let den = q * q + 4.0 * x0 * x0 * r * r;
    // ln((x0² + (r-1)²)/(x0² + (r+1)²)) / (2r)
    let log_term = (near / far).ln() / (2.0 * r);
    let value = match field {
        Example2Field::NplusA => 2.0 * x0 / (PI * den),
        Example2Field::NplusB => (2.0 * q / den + log_term) / (2.0 * PI * r),
        Example2Field::NminusA => (log_term + 2.0 * (x0 * x0 + r * r - 1.0) / den) / (2.0 * PI),
        Example2Field::NminusB => x0 / (2.0 * PI * r) * (log_term + 2.0 * (1.0 + x0 * x0 + r * r) / den),
        Example2Field::Wplus | Example2Field::Wminus => unreachable!(),
    };
    Ok(OracleValue::Real(value))
}

/// 𝒩± at a point of R^4 from the closed-form A, B components.
pub fn example2_value(minus: bool, q: &Paravector) -> Result<Multivector> {
    let r = q.radius();
    let (fa, fb) = if minus {
        (Example2Field::NminusA, Example2Field::NminusB)
    } else {
        (Example2Field::NplusA, Example2Field::NplusB)
    };
    let a = example2_oracle(fa, q.x0, r)?.complex().re;
    let b = example2_oracle(fb, q.x0, r)?.complex().re;
    let mut out = q.omega()?.scale(b);
    out.add_scaled(a, &Multivector::scalar(3, 1.0)?)?;
    Ok(out)
}

/// Product rule on S²: Gauss–Legendre in cos θ × uniform trapezoid in φ.
#[derive(Clone, Debug)]
pub struct SphereQuadrature {
    nodes: Vec<[f64; 3]>,
    weights: Vec<f64>,
    resolution: (usize, usize),
}

impl SphereQuadrature {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 {
            return Err(FueterError::InvalidArgument("sphere quadrature needs a positive resolution".into()));
        }
        let gl = GaussLegendre::new(n_theta);
        let dphi = 2.0 * PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (&ct, &w) in gl.nodes.iter().zip(&gl.weights) {
            let st = (1.0 - ct * ct).sqrt();
            for k in 0..n_phi {
                let phi = k as f64 * dphi;
                nodes.push([st * phi.cos(), st * phi.sin(), ct]);
                weights.push(w * dphi);
            }
        }
        Ok(Self {
            nodes,
            weights,
            resolution: (n_theta, n_phi),
        })
    }

    pub fn resolution(&self) -> (usize, usize) {
        self.resolution
    }

    pub fn nodes(&self) -> &[[f64; 3]] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// ∫_{S²} 𝒢(q - ω̲) dS(ω̲), or ∫_{S²} 𝒢(q - ω̲) ω̲ dS(ω̲) with `with_omega`.
pub fn sphere_cauchy_integral(q: &Paravector, with_omega: bool, quad: &SphereQuadrature) -> Result<Multivector> {
    if q.dim() != 3 {
        return Err(FueterError::DimensionMismatch { expected: 3, found: q.dim() });
    }
    let dist = (q.x0 * q.x0 + (q.radius() - 1.0).powi(2)).sqrt();
    if dist < 1e-6 {
        return Err(FueterError::Domain(format!("q is within {dist:e} of the unit sphere")));
    }
    let mut acc = Multivector::zero(3)?;
    for (w, node) in quad.weights.iter().zip(&quad.nodes) {
        let shifted = Paravector::new(q.x0, (0..3).map(|j| q.vec[j] - node[j]).collect());
        let g = cauchy_kernel(3, &shifted)?;
        if with_omega {
            acc.add_scaled(*w, &g.product(&Multivector::vector(node)?)?)?;
        } else {
            acc.add_scaled(*w, &g)?;
        }
    }
    Ok(acc)
}

/// Names accepted by [`builtin_axial_field`].
pub const FIELD_NAMES: [&str; 5] = ["example1", "example2-nplus", "example2-nminus", "cauchy-kernel", "cubic"];

fn require(name: &str, m: usize, k: u32, want_m: Option<usize>, want_k: u32) -> Result<()> {
    if want_m.is_some_and(|w| w != m) || k != want_k {
        return Err(FueterError::InvalidArgument(format!(
            "field {name:?} is defined for m = {}, k = {want_k}; got m = {m}, k = {k}",
            want_m.map_or("any odd".to_string(), |w| w.to_string())
        )));
    }
    Ok(())
}

/// Axial monogenic fields by name. `ft:<h>` gives the fields of Ft[h, P_k]
/// for the built-in P_k.
pub fn builtin_axial_field(name: &str, rect: Rectangle, m: usize, k: u32) -> Result<AxialFunction> {
    let one = || MonogenicPolynomial::one(m);
    match name {
        "example1" => {
            require(name, m, k, Some(5), 0)?;
            AxialFunction::new(
                |x0, r| example1_oracle(Example1Field::A, x0, r, 1.0).unwrap_or(f64::NAN),
                |x0, r| example1_oracle(Example1Field::B, x0, r, 1.0).unwrap_or(f64::NAN),
                one()?,
                rect,
            )
        }
        "example2-nplus" | "example2-nminus" => {
            require(name, m, k, Some(3), 0)?;
            let (fa, fb) = if name == "example2-nplus" {
                (Example2Field::NplusA, Example2Field::NplusB)
            } else {
                (Example2Field::NminusA, Example2Field::NminusB)
            };
            AxialFunction::new(
                move |x0, r| example2_oracle(fa, x0, r).map_or(f64::NAN, |v| v.complex().re),
                move |x0, r| example2_oracle(fb, x0, r).map_or(f64::NAN, |v| v.complex().re),
                one()?,
                rect,
            )
        }
        "cauchy-kernel" => {
            require(name, m, k, None, 0)?;
            let area = unit_sphere_area(m as u32 + 1);
            let power = (m as i32 + 1) / 2;
            AxialFunction::new(
                move |x0, r| x0 / (area * (x0 * x0 + r * r).powi(power)),
                move |x0, r| -r / (area * (x0 * x0 + r * r).powi(power)),
                one()?,
                rect,
            )
        }
        "cubic" => {
            require(name, m, k, Some(3), 0)?;
            AxialFunction::new(|x0, _| -12.0 * x0, |_, r| -4.0 * r, one()?, rect)
        }
        _ => {
            let h_name = name
                .strip_prefix("ft:")
                .ok_or_else(|| FueterError::Parse(format!("unknown field {name:?}")))?;
            let h = HolomorphicExpr::parse(h_name)?;
            AxialFunction::from_holomorphic(Arc::new(h), builtin_pk(m, k, PkVariant::default())?, rect)
        }
    }
}

/// A primitive of a named field, when one is known in closed form.
pub fn known_primitive(name: &str, m: usize, k: u32) -> Result<Option<HolomorphicExpr>> {
    Ok(match name {
        "example1" => Some(HolomorphicExpr::recip().scaled(1.0 / 64.0)),
        "example2-nplus" => Some(w_plus()),
        "example2-nminus" => Some(w_minus()),
        "cubic" => Some(HolomorphicExpr::power(3)),
        "cauchy-kernel" => {
            // Ft[1/z] = (-1)^N ((m-1)!!)² conj(x)/|x|^{m+1} for k = 0
            let n = (m as i32 - 1) / 2;
            let df = double_factorial(m as u32 - 1)? as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Some(HolomorphicExpr::recip().scaled(sign / (df * df * unit_sphere_area(m as u32 + 1))))
        }
        _ => match name.strip_prefix("ft:") {
            Some(h) if k <= 1 => Some(HolomorphicExpr::parse(h)?),
            _ => None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_areas() {
        assert!((unit_sphere_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((unit_sphere_area(3) - 4.0 * PI).abs() < 1e-13);
        assert!((unit_sphere_area(4) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((unit_sphere_area(4) - 19.7392088).abs() < 1e-7);
        assert!((unit_sphere_area(6) - PI.powi(3)).abs() < 1e-12);
        assert!((unit_sphere_area(6) - 31.00628).abs() < 1e-5);
    }

    #[test]
    fn cauchy_kernel_points() {
        let k = cauchy_kernel(3, &Paravector::new(1.0, vec![0.0; 3])).unwrap();
        assert!(k.approx_eq(&Multivector::scalar(3, 1.0 / (2.0 * PI * PI)).unwrap(), 1e-16));
        let k = cauchy_kernel(3, &Paravector::new(0.0, vec![1.0, 0.0, 0.0])).unwrap();
        let expected = Multivector::basis_vector(3, 1).unwrap().scale(-1.0 / (2.0 * PI * PI));
        assert!(k.approx_eq(&expected, 1e-16));
        assert!(cauchy_kernel(3, &Paravector::new(0.0, vec![0.0; 3])).is_err());
    }

    #[test]
    fn example1_points() {
        let u = example1_oracle(Example1Field::U, 1.0, 1.0, 0.5).unwrap();
        assert!((u - 1.0 / 128.0).abs() < 1e-17);
        let b1 = example1_oracle(Example1Field::Beta1, 1.0, 0.3, 0.5).unwrap();
        assert!((b1 - 0.01).abs() < 1e-16);
        assert_eq!(example1_oracle(Example1Field::I1, 1.0, 0.5, 0.5).unwrap(), 0.0);
        let i1 = example1_oracle(Example1Field::I1, 1.0, 1.0, 0.5).unwrap();
        assert!((i1 - 0.045).abs() < 1e-15);
        let i2 = example1_oracle(Example1Field::I2, 1.0, 1.0, 0.5).unwrap();
        assert!((i2 + 0.045).abs() < 1e-15);
        assert!(example1_oracle(Example1Field::A, 0.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn example2_points() {
        let a = example2_oracle(Example2Field::NplusA, 1.0, 0.5).unwrap().real().unwrap();
        assert!((a - 2.0 / PI / 4.0625).abs() < 1e-15);
        let w = example2_oracle(Example2Field::Wplus, 0.0, 0.0).unwrap().complex();
        assert_eq!(w, Complex64::new(0.0, 0.0));
        // regression value, cross-checked in 30-digit arithmetic
        let b = example2_oracle(Example2Field::NplusB, 0.0, 0.5).unwrap().real().unwrap();
        assert!((b - 0.149_428_058_024_655_57).abs() < 1e-14, "{b}");
        assert!(example2_oracle(Example2Field::NplusA, 0.0, 1.0).is_err());
        assert!(example2_oracle(Example2Field::Wplus, 0.0, 1.0).is_err());
    }

    #[test]
    fn sphere_weights_sum_to_area() {
        let q = SphereQuadrature::new(64, 128).unwrap();
        let s: f64 = q.weights().iter().sum();
        assert!((s - 4.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn sphere_integral_rejects_points_on_the_sphere() {
        let quad = SphereQuadrature::new(8, 16).unwrap();
        assert!(sphere_cauchy_integral(&Paravector::new(0.0, vec![1.0, 0.0, 0.0]), false, &quad).is_err());
        assert!(sphere_cauchy_integral(&Paravector::new(0.0, vec![0.5; 2]), false, &quad).is_err());
    }

    #[test]
    fn named_fields_check_dimensions() {
        let rect = Rectangle::new(0.0, 1.0, 0.5, 1.5).unwrap();
        assert!(builtin_axial_field("example1", rect, 3, 0).is_err());
        assert!(builtin_axial_field("example1", rect, 5, 0).is_ok());
        assert!(builtin_axial_field("cauchy-kernel", rect, 7, 0).is_ok());
        assert!(builtin_axial_field("ft:arctan", rect, 3, 1).is_ok());
        assert!(builtin_axial_field("nope", rect, 3, 0).is_err());
    }
}
