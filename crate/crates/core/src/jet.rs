//! Truncated Taylor arithmetic for holomorphic functions of one complex
//! variable.
//!
//! Jets carry normalized Taylor coefficients h⁽ʲ⁾(z)/j! internally; derivatives
//! are produced on request. All high-order data comes from recurrences.

use num_complex::Complex64;

use crate::error::{FueterError, Result};

/// Distance below which a point counts as lying on a branch cut or pole.
pub const CUT_TOLERANCE: f64 = 1e-12;

/// Truncated Taylor expansion of order `d` at the base point `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    z: Complex64,
    taylor: Vec<Complex64>,
}

fn factorial(j: usize) -> f64 {
    (1..=j).map(|i| i as f64).product()
}

impl Jet {
    /// Build a jet from derivatives h(z), h′(z), …, h⁽ᵈ⁾(z).
    pub fn from_derivatives(z: Complex64, derivs: &[Complex64]) -> Result<Self> {
        if derivs.is_empty() {
            return Err(FueterError::InvalidArgument("a jet needs at least one entry".into()));
        }
        let taylor = derivs
            .iter()
            .enumerate()
            .map(|(j, d)| d / factorial(j))
            .collect();
        Ok(Self { z, taylor })
    }

    fn from_taylor(z: Complex64, taylor: Vec<Complex64>) -> Self {
        Self { z, taylor }
    }

    pub fn constant(z: Complex64, c: Complex64, order: usize) -> Self {
        let mut taylor = vec![Complex64::new(0.0, 0.0); order + 1];
        taylor[0] = c;
        Self { z, taylor }
    }

    pub fn identity(z: Complex64, order: usize) -> Self {
        let mut jet = Self::constant(z, z, order);
        if order >= 1 {
            jet.taylor[1] = Complex64::new(1.0, 0.0);
        }
        jet
    }

    /// 1/z: Taylor coefficients (-1)ʲ z^{-j-1}.
    pub fn recip(z: Complex64, order: usize) -> Result<Self> {
        if z.norm() == 0.0 {
            return Err(FueterError::Domain("1/z at z = 0".into()));
        }
        let w = z.inv();
        let mut taylor = Vec::with_capacity(order + 1);
        let mut t = w;
        for _ in 0..=order {
            taylor.push(t);
            t *= -w;
        }
        Ok(Self::from_taylor(z, taylor))
    }

    /// zⁿ for integer n; negative powers require z ≠ 0.
    pub fn power(z: Complex64, n: i32, order: usize) -> Result<Self> {
        if n < 0 && z.norm() == 0.0 {
            return Err(FueterError::Domain(format!("z^{n} at z = 0")));
        }
        let mut taylor = Vec::with_capacity(order + 1);
        // generalized binomial: C(n, j) z^{n-j}
        let mut binom = 1.0;
        for j in 0..=order {
            if j > 0 {
                binom *= (n as f64 - (j as f64 - 1.0)) / j as f64;
            }
            let exp = n - j as i32;
            let term = if binom == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                z.powi(exp) * binom
            };
            taylor.push(term);
        }
        Ok(Self::from_taylor(z, taylor))
    }

    /// Principal arctan, cuts on {iy : |y| ≥ 1}. Higher coefficients come
    /// from integrating the jet of 1/(1 + z²).
    pub fn arctan(z: Complex64, order: usize) -> Result<Self> {
        if z.re.abs() <= CUT_TOLERANCE && z.im.abs() >= 1.0 - CUT_TOLERANCE {
            return Err(FueterError::Domain(format!(
                "arctan at {z} lies on its branch cut"
            )));
        }
        let mut taylor = vec![z.atan()];
        if order >= 1 {
            let id = Self::identity(z, order - 1);
            let one = Self::constant(z, Complex64::new(1.0, 0.0), order - 1);
            let deriv = one.div(&one.add(&id.mul(&id)?)?)?;
            taylor.extend(
                deriv
                    .taylor
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c / (j as f64 + 1.0)),
            );
        }
        Ok(Self::from_taylor(z, taylor))
    }

    /// Principal logarithm, cut on the non-positive real axis.
    pub fn log(z: Complex64, order: usize) -> Result<Self> {
        if z.im.abs() <= CUT_TOLERANCE && z.re <= CUT_TOLERANCE {
            return Err(FueterError::Domain(format!("log at {z} lies on its branch cut")));
        }
        let w = z.inv();
        let mut taylor = vec![z.ln()];
        let mut t = w;
        for j in 1..=order {
            taylor.push(t / j as f64);
            t *= -w;
        }
        Ok(Self::from_taylor(z, taylor))
    }

    pub fn base(&self) -> Complex64 {
        self.z
    }

    pub fn order(&self) -> usize {
        self.taylor.len() - 1
    }

    pub fn value(&self) -> Complex64 {
        self.taylor[0]
    }

    /// h⁽ʲ⁾(z).
    pub fn derivative(&self, j: usize) -> Complex64 {
        self.taylor[j] * factorial(j)
    }

    pub fn derivatives(&self) -> Vec<Complex64> {
        (0..self.taylor.len()).map(|j| self.derivative(j)).collect()
    }

    /// Normalized coefficient h⁽ʲ⁾(z)/j!.
    pub fn taylor_coeff(&self, j: usize) -> Complex64 {
        self.taylor[j]
    }

    /// Keep orders 0..=order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(FueterError::InvalidArgument(format!(
                "cannot truncate an order-{} jet to order {order}",
                self.order()
            )));
        }
        Ok(Self::from_taylor(self.z, self.taylor[..=order].to_vec()))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.z != other.z || self.taylor.len() != other.taylor.len() {
            return Err(FueterError::InvalidArgument(format!(
                "jets at {} (order {}) and {} (order {}) cannot be combined",
                self.z,
                self.order(),
                other.z,
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let taylor = self.taylor.iter().zip(&other.taylor).map(|(a, b)| a + b).collect();
        Ok(Self::from_taylor(self.z, taylor))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let taylor = self.taylor.iter().zip(&other.taylor).map(|(a, b)| a - b).collect();
        Ok(Self::from_taylor(self.z, taylor))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_taylor(self.z, self.taylor.iter().map(|c| c * s).collect())
    }

    /// Leibniz rule (Cauchy product of Taylor coefficients).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.taylor.len();
        let taylor = (0..n)
            .map(|k| (0..=k).map(|i| self.taylor[i] * other.taylor[k - i]).sum())
            .collect();
        Ok(Self::from_taylor(self.z, taylor))
    }

    /// Quotient rule by forward substitution: q_k = (a_k - Σ_{i<k} q_i b_{k-i}) / b_0.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let b0 = other.taylor[0];
        if b0.norm() == 0.0 {
            return Err(FueterError::Domain("division by a jet with zero value".into()));
        }
        let n = self.taylor.len();
        let mut q: Vec<Complex64> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.taylor[k];
            for (i, qi) in q.iter().enumerate() {
                acc -= qi * other.taylor[k - i];
            }
            q.push(acc / b0);
        }
        Ok(Self::from_taylor(self.z, q))
    }
}

/// The built-in elementary functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Elementary {
    Const(Complex64),
    Identity,
    Recip,
    Power(i32),
    Arctan,
    Log,
}

pub fn jet_elementary(kind: Elementary, z: Complex64, order: usize) -> Result<Jet> {
    match kind {
        Elementary::Const(c) => Ok(Jet::constant(z, c, order)),
        Elementary::Identity => Ok(Jet::identity(z, order)),
        Elementary::Recip => Jet::recip(z, order),
        Elementary::Power(n) => Jet::power(z, n, order),
        Elementary::Arctan => Jet::arctan(z, order),
        Elementary::Log => Jet::log(z, order),
    }
}

/// Binary jet operations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JetOp {
    Add,
    Mul,
    Div,
}

pub fn jet_combine(op: JetOp, a: &Jet, b: &Jet) -> Result<Jet> {
    match op {
        JetOp::Add => a.add(b),
        JetOp::Mul => a.mul(b),
        JetOp::Div => a.div(b),
    }
}

/// A holomorphic function that can produce exact jets.
pub trait Holomorphic: Send + Sync {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet>;

    fn in_domain(&self, z: Complex64) -> bool {
        self.jet(z, 0).is_ok()
    }

    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.jet(z, 0)?.value())
    }
}

/// Expression tree over the elementary functions.
#[derive(Clone, Debug, PartialEq)]
pub enum HolomorphicExpr {
    Elementary(Elementary),
    /// Σ c_n zⁿ with real coefficients.
    RealPolynomial(Vec<f64>),
    Sum(Box<HolomorphicExpr>, Box<HolomorphicExpr>),
    Product(Box<HolomorphicExpr>, Box<HolomorphicExpr>),
    Quotient(Box<HolomorphicExpr>, Box<HolomorphicExpr>),
    Scaled(f64, Box<HolomorphicExpr>),
}

impl HolomorphicExpr {
    pub fn power(n: i32) -> Self {
        Self::Elementary(Elementary::Power(n))
    }

    pub fn recip() -> Self {
        Self::Elementary(Elementary::Recip)
    }

    pub fn arctan() -> Self {
        Self::Elementary(Elementary::Arctan)
    }

    pub fn z_arctan() -> Self {
        Self::Product(
            Box::new(Self::Elementary(Elementary::Identity)),
            Box::new(Self::arctan()),
        )
    }

    pub fn scaled(self, s: f64) -> Self {
        Self::Scaled(s, Box::new(self))
    }

    pub fn plus(self, other: Self) -> Self {
        Self::Sum(Box::new(self), Box::new(other))
    }

    /// Parse a CLI name: `recip`, `arctan`, `z*arctan`, `log`, `z^n`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        match name {
            "recip" | "1/z" => Ok(Self::recip()),
            "arctan" => Ok(Self::arctan()),
            "z*arctan" => Ok(Self::z_arctan()),
            "log" => Ok(Self::Elementary(Elementary::Log)),
            "z" => Ok(Self::power(1)),
            _ => {
                let exp = name
                    .strip_prefix("z^")
                    .ok_or_else(|| FueterError::Parse(format!("unknown function name {name:?}")))?;
                let n: i32 = exp
                    .parse()
                    .map_err(|_| FueterError::Parse(format!("bad exponent in {name:?}")))?;
                Ok(Self::power(n))
            }
        }
    }
}

impl Holomorphic for HolomorphicExpr {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet> {
        match self {
            Self::Elementary(kind) => jet_elementary(*kind, z, order),
            Self::RealPolynomial(coeffs) => {
                let mut acc = Jet::constant(z, Complex64::new(0.0, 0.0), order);
                // Horner in jet arithmetic
                let id = Jet::identity(z, order);
                for &c in coeffs.iter().rev() {
                    acc = acc.mul(&id)?.add(&Jet::constant(z, Complex64::new(c, 0.0), order))?;
                }
                Ok(acc)
            }
            Self::Sum(a, b) => a.jet(z, order)?.add(&b.jet(z, order)?),
            Self::Product(a, b) => a.jet(z, order)?.mul(&b.jet(z, order)?),
            Self::Quotient(a, b) => a.jet(z, order)?.div(&b.jet(z, order)?),
            Self::Scaled(s, a) => Ok(a.jet(z, order)?.scale(*s)),
        }
    }
}

/// Radial derivatives of u = Re h and v = Im h along z = x0 + i r:
/// ∂_rʲ u = Re(iʲ h⁽ʲ⁾(z)), ∂_rʲ v = Im(iʲ h⁽ʲ⁾(z)).
pub fn radial_derivatives(
    h: &dyn Holomorphic,
    x0: f64,
    r: f64,
    order: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(r > 0.0) {
        return Err(FueterError::Domain(format!("radial derivatives need r > 0, got {r}")));
    }
    let jet = h.jet(Complex64::new(x0, r), order)?;
    let mut u = Vec::with_capacity(order + 1);
    let mut v = Vec::with_capacity(order + 1);
    let mut ipow = Complex64::new(1.0, 0.0);
    for j in 0..=order {
        let d = ipow * jet.derivative(j);
        u.push(d.re);
        v.push(d.im);
        ipow *= Complex64::new(0.0, 1.0);
    }
    Ok((u, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn arctan_at_origin() {
        let d = Jet::arctan(c(0.0, 0.0), 3).unwrap().derivatives();
        let expected = [0.0, 1.0, 0.0, -2.0];
        for (got, want) in d.iter().zip(expected) {
            assert!(close(*got, c(want, 0.0), 1e-15), "{got} vs {want}");
        }
    }

    #[test]
    fn recip_at_one() {
        let d = Jet::recip(c(1.0, 0.0), 3).unwrap().derivatives();
        for (got, want) in d.iter().zip([1.0, -1.0, 2.0, -6.0]) {
            assert!(close(*got, c(want, 0.0), 1e-14));
        }
        assert!(Jet::recip(c(0.0, 0.0), 2).is_err());
    }

    #[test]
    fn zeroth_power_is_constant_one() {
        let d = Jet::power(c(0.3, 1.7), 0, 4).unwrap().derivatives();
        assert_eq!(d[0], c(1.0, 0.0));
        assert!(d[1..].iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn product_of_identities_is_square() {
        let z = c(0.4, 0.9);
        let sq = jet_combine(JetOp::Mul, &Jet::identity(z, 2), &Jet::identity(z, 2)).unwrap();
        let d = sq.derivatives();
        assert!(close(d[0], z * z, 1e-15));
        assert!(close(d[1], z * 2.0, 1e-15));
        assert!(close(d[2], c(2.0, 0.0), 1e-15));
    }

    #[test]
    fn jet_minus_itself_is_zero() {
        let a = Jet::arctan(c(0.5, 0.5), 5).unwrap();
        let zero = jet_combine(JetOp::Add, &a, &a.neg()).unwrap();
        assert!(zero.derivatives().iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn z_arctan_at_origin() {
        let z = c(0.0, 0.0);
        let p = jet_combine(JetOp::Mul, &Jet::arctan(z, 3).unwrap(), &Jet::identity(z, 3)).unwrap();
        let d = p.derivatives();
        for (got, want) in d.iter().zip([0.0, 0.0, 2.0, 0.0]) {
            assert!(close(*got, c(want, 0.0), 1e-15));
        }
    }

    #[test]
    fn mismatched_jets_are_rejected() {
        let a = Jet::identity(c(1.0, 0.0), 2);
        assert!(a.add(&Jet::identity(c(1.0, 0.0), 3)).is_err());
        assert!(a.mul(&Jet::identity(c(2.0, 0.0), 2)).is_err());
        let zero = Jet::constant(c(1.0, 0.0), c(0.0, 0.0), 2);
        assert!(a.div(&zero).is_err());
    }

    #[test]
    fn branch_cuts_are_rejected() {
        assert!(Jet::arctan(c(0.0, 1.0), 2).is_err());
        assert!(Jet::arctan(c(0.0, 2.5), 2).is_err());
        assert!(Jet::arctan(c(1e-3, 2.5), 2).is_ok());
        assert!(Jet::log(c(-1.0, 0.0), 1).is_err());
        assert!(Jet::log(c(-1.0, 0.1), 1).is_ok());
    }

    #[test]
    fn log_derivatives() {
        let z = c(0.5, 1.5);
        let d = Jet::log(z, 3).unwrap().derivatives();
        assert!(close(d[1], z.inv(), 1e-14));
        assert!(close(d[2], -(z * z).inv(), 1e-14));
        assert!(close(d[3], (z * z * z).inv() * 2.0, 1e-14));
    }

    #[test]
    fn lower_order_request_is_a_prefix() {
        let h = HolomorphicExpr::z_arctan();
        let z = c(0.7, 0.4);
        let long = h.jet(z, 8).unwrap();
        let short = h.jet(z, 3).unwrap();
        assert_eq!(long.truncate(3).unwrap(), short);
    }

    #[test]
    fn radial_derivatives_of_square() {
        let h = HolomorphicExpr::power(2);
        let (u, v) = radial_derivatives(&h, 1.0, 2.0, 2).unwrap();
        for (got, want) in u.iter().zip([-3.0, -4.0, -2.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        for (got, want) in v.iter().zip([4.0, 2.0, 0.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn radial_derivatives_of_constant_and_recip() {
        let h = HolomorphicExpr::Elementary(Elementary::Const(c(2.5, 0.0)));
        let (u, v) = radial_derivatives(&h, 0.3, 0.7, 3).unwrap();
        assert_eq!(u, vec![2.5, 0.0, 0.0, 0.0]);
        assert_eq!(v, vec![0.0; 4]);

        let (u, v) = radial_derivatives(&HolomorphicExpr::recip(), 0.0, 1.0, 2).unwrap();
        assert!(u[0].abs() < 1e-15);
        assert!((v[0] + 1.0).abs() < 1e-15);
        assert!(radial_derivatives(&HolomorphicExpr::recip(), 0.0, 0.0, 2).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!(HolomorphicExpr::parse("z^3").unwrap(), HolomorphicExpr::power(3));
        assert_eq!(HolomorphicExpr::parse("recip").unwrap(), HolomorphicExpr::recip());
        assert_eq!(HolomorphicExpr::parse("z*arctan").unwrap(), HolomorphicExpr::z_arctan());
        assert!(HolomorphicExpr::parse("sin").is_err());
        assert!(HolomorphicExpr::parse("z^x").is_err());
    }
}
