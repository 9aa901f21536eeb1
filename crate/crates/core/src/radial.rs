//! Iterated radial operators (x⁻¹ d/dx)ⁿ and (d/dx x⁻¹)ⁿ and their
//! antiderivatives φ_n, ψ_n.

use std::sync::{Arc, OnceLock};

use crate::error::{FueterError, Result};
use crate::quadrature::{integrate, try_integrate, QuadratureConfig};

/// Largest order kept in the precomputed coefficient table.
pub const TABLE_MAX_ORDER: u32 = 12;

/// n!! with 0!! = 1, exact.
pub fn double_factorial(n: u32) -> Result<u128> {
    let mut acc: u128 = 1;
    let mut k = n;
    while k >= 2 {
        acc = acc
            .checked_mul(k as u128)
            .ok_or_else(|| FueterError::Overflow(format!("{n}!!")))?;
        k -= 2;
    }
    Ok(acc)
}

fn compute_coeff(j: u32, n: u32) -> Result<u128> {
    // (2n-j-1)! / ((n-j)! (j-1)!) = Π_{i=n-j+1}^{2n-j-1} i / (j-1)!
    let overflow = || FueterError::Overflow(format!("a_{{{j},{n}}}"));
    let mut num: u128 = 1;
    for i in (n - j + 1)..=(2 * n - j - 1) {
        num = num.checked_mul(i as u128).ok_or_else(overflow)?;
    }
    let mut den: u128 = 1;
    for i in 2..j {
        den = den.checked_mul(i as u128).ok_or_else(overflow)?;
    }
    den = den
        .checked_mul(1u128.checked_shl(n - j).ok_or_else(overflow)?)
        .ok_or_else(overflow)?;
    debug_assert_eq!(num % den, 0);
    Ok(num / den)
}

fn table() -> &'static Vec<Vec<u128>> {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=TABLE_MAX_ORDER)
            .map(|n| {
                (0..=n)
                    .map(|j| if j == 0 { 0 } else { compute_coeff(j, n).expect("table entries fit") })
                    .collect()
            })
            .collect()
    })
}

/// a_{j,n} = (2n-j-1)! / (2^{n-j} (n-j)! (j-1)!) for 1 ≤ j ≤ n.
///
/// Row n holds the coefficients of the Bessel polynomial of degree n-1.
pub fn coeff_a(j: u32, n: u32) -> Result<u128> {
    if j == 0 || j > n {
        return Err(FueterError::InvalidArgument(format!(
            "a_{{j,n}} needs 1 <= j <= n, got j = {j}, n = {n}"
        )));
    }
    if n <= TABLE_MAX_ORDER {
        return Ok(table()[n as usize][j as usize]);
    }
    compute_coeff(j, n)
}

/// Which iterated operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadialVariant {
    /// (x⁻¹ d/dx)ⁿ
    Minus,
    /// (d/dx x⁻¹)ⁿ
    Plus,
}

/// Apply the iterated operator to g given its derivatives g, g′, …, g⁽ⁿ⁾ at x.
///
/// Minus: Σ_{j=1}^{n} (-1)^{n+j} a_{j,n} x^{j-2n} g⁽ʲ⁾.
/// Plus:  Σ_{j=0}^{n} (-1)^{n+j} a_{j+1,n+1} x^{j-2n} g⁽ʲ⁾.
pub fn radial_op(derivs: &[f64], x: f64, n: u32, variant: RadialVariant) -> Result<f64> {
    if derivs.len() < n as usize + 1 {
        return Err(FueterError::InvalidArgument(format!(
            "order {n} needs {} derivatives, got {}",
            n + 1,
            derivs.len()
        )));
    }
    if x == 0.0 {
        return Err(FueterError::Domain("radial operator at x = 0".into()));
    }
    if n == 0 {
        return Ok(derivs[0]);
    }
    let sign = |j: u32| if (n + j).is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut sum = 0.0;
    match variant {
        RadialVariant::Minus => {
            for j in 1..=n {
                let a = coeff_a(j, n)? as f64;
                sum += sign(j) * a * x.powi(j as i32 - 2 * n as i32) * derivs[j as usize];
            }
        }
        RadialVariant::Plus => {
            for j in 0..=n {
                let a = coeff_a(j + 1, n + 1)? as f64;
                sum += sign(j) * a * x.powi(j as i32 - 2 * n as i32) * derivs[j as usize];
            }
        }
    }
    Ok(sum)
}

/// A continuous scalar function on [a, b].
#[derive(Clone)]
pub struct RadialField {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    a: f64,
    b: f64,
}

impl std::fmt::Debug for RadialField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialField")
            .field("a", &self.a)
            .field("b", &self.b)
            .finish_non_exhaustive()
    }
}

impl RadialField {
    pub fn new(a: f64, b: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        if !(a < b) {
            return Err(FueterError::InvalidArgument(format!("empty interval [{a}, {b}]")));
        }
        Ok(Self { f: Arc::new(f), a, b })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        Ok((self.f)(x))
    }

    fn check(&self, x: f64) -> Result<()> {
        let slack = 1e-12 * (self.b - self.a);
        if x < self.a - slack || x > self.b + slack {
            Err(FueterError::Domain(format!("{x} outside [{}, {}]", self.a, self.b)))
        } else {
            Ok(())
        }
    }
}

/// φ_n (x ∫ t …) or ψ_n (x ∫ …).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Antiderivative {
    Phi,
    Psi,
}

/// Single-integral form of the n-th antiderivative:
/// φ_n(x) = 1/(2n-2)!! ∫_a^x t (x²-t²)^{n-1} f(t) dt,
/// ψ_n(x) = x/(2n-2)!! ∫_a^x (x²-t²)^{n-1} f(t) dt.
pub fn antiderivative(
    f: &RadialField,
    x: f64,
    n: u32,
    kind: Antiderivative,
    quad: &QuadratureConfig,
) -> Result<f64> {
    if n == 0 {
        return Err(FueterError::InvalidArgument("antiderivative order must be >= 1".into()));
    }
    f.check(x)?;
    let norm = double_factorial(2 * n - 2)? as f64;
    let x2 = x * x;
    let p = n as i32 - 1;
    let integral = match kind {
        Antiderivative::Phi => integrate(|t| t * (x2 - t * t).powi(p) * (f.f)(t), f.a, x, quad)?,
        Antiderivative::Psi => integrate(|t| (x2 - t * t).powi(p) * (f.f)(t), f.a, x, quad)? * x,
    };
    Ok(integral / norm)
}

/// Reference value from the defining recursion
/// φ_n(x) = ∫_a^x t φ_{n-1}(t) dt, ψ_n(x) = x ∫_a^x ψ_{n-1}(t) dt,
/// evaluated as n nested quadratures. Cost grows geometrically with n.
pub fn nested_antiderivative_oracle(
    f: &RadialField,
    x: f64,
    n: u32,
    kind: Antiderivative,
    quad: &QuadratureConfig,
) -> Result<f64> {
    if n == 0 {
        return Err(FueterError::InvalidArgument("antiderivative order must be >= 1".into()));
    }
    f.check(x)?;
    nested(f, x, n, kind, quad)
}

fn nested(f: &RadialField, x: f64, n: u32, kind: Antiderivative, quad: &QuadratureConfig) -> Result<f64> {
    if n == 0 {
        return Ok((f.f)(x));
    }
    match kind {
        Antiderivative::Phi => try_integrate(|t| Ok(t * nested(f, t, n - 1, kind, quad)?), f.a, x, quad),
        Antiderivative::Psi => Ok(x * try_integrate(|t| nested(f, t, n - 1, kind, quad), f.a, x, quad)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(0).unwrap(), 1);
        assert_eq!(double_factorial(1).unwrap(), 1);
        assert_eq!(double_factorial(6).unwrap(), 48);
        assert_eq!(double_factorial(7).unwrap(), 105);
        assert!(double_factorial(200).is_err());
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(coeff_a(1, 1).unwrap(), 1);
        assert_eq!(coeff_a(1, 2).unwrap(), 1);
        assert_eq!(coeff_a(2, 2).unwrap(), 1);
        let row: Vec<u128> = (1..=3).map(|j| coeff_a(j, 3).unwrap()).collect();
        assert_eq!(row, vec![3, 3, 1]);
        assert!(coeff_a(0, 3).is_err());
        assert!(coeff_a(4, 3).is_err());
    }

    #[test]
    fn diagonal_is_one_and_bessel_rows_match() {
        for n in 1..=20 {
            assert_eq!(coeff_a(n, n).unwrap(), 1);
        }
        // y_3(x) = 15x³ + 15x² + 6x + 1 → a_{j+1,4} for j = 0..3 is 15, 15, 6, 1
        let row: Vec<u128> = (0..=3).map(|j| coeff_a(j + 1, 4).unwrap()).collect();
        assert_eq!(row, vec![15, 15, 6, 1]);
    }

    #[test]
    fn coefficients_beyond_table_and_overflow() {
        assert_eq!(coeff_a(1, 13).unwrap(), double_factorial(23).unwrap());
        assert!(matches!(coeff_a(1, 60), Err(FueterError::Overflow(_))));
    }

    #[test]
    fn radial_op_examples() {
        // g = x⁴ at x = 2: derivs 16, 32, 48
        let v = radial_op(&[16.0, 32.0, 48.0], 2.0, 2, RadialVariant::Minus).unwrap();
        assert!((v - 8.0).abs() < 1e-14);
        // g = x² at x = 3: (d/dx)(x) = 1
        let v = radial_op(&[9.0, 6.0], 3.0, 1, RadialVariant::Plus).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        let v = radial_op(&[5.0, 0.0, 0.0, 0.0], 1.3, 3, RadialVariant::Minus).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn radial_op_errors() {
        assert!(radial_op(&[1.0, 2.0], 1.0, 2, RadialVariant::Minus).is_err());
        assert!(radial_op(&[1.0, 2.0, 3.0], 0.0, 2, RadialVariant::Plus).is_err());
    }

    #[test]
    fn antiderivatives_of_one() {
        let quad = QuadratureConfig::default();
        let one = RadialField::new(0.0, 3.0, |_| 1.0).unwrap();
        for x in [0.5, 1.0, 2.7] {
            let p1 = antiderivative(&one, x, 1, Antiderivative::Phi, &quad).unwrap();
            assert!((p1 - x * x / 2.0).abs() < 1e-14);
            let p2 = antiderivative(&one, x, 2, Antiderivative::Phi, &quad).unwrap();
            assert!((p2 - x.powi(4) / 8.0).abs() < 1e-13);
        }
        assert_eq!(antiderivative(&one, 0.0, 3, Antiderivative::Psi, &quad).unwrap(), 0.0);
        assert!(antiderivative(&one, 3.5, 1, Antiderivative::Phi, &quad).is_err());
    }

    #[test]
    fn nested_oracle_examples() {
        let quad = QuadratureConfig::default();
        let one = RadialField::new(0.0, 3.0, |_| 1.0).unwrap();
        let v = nested_antiderivative_oracle(&one, 1.0, 2, Antiderivative::Phi, &quad).unwrap();
        assert!((v - 0.125).abs() < 1e-15);
        let t = RadialField::new(0.0, 3.0, |t| t).unwrap();
        let v = nested_antiderivative_oracle(&t, 2.0, 1, Antiderivative::Psi, &quad).unwrap();
        assert!((v - 4.0).abs() < 1e-14);
        let v = nested_antiderivative_oracle(&t, 0.0, 3, Antiderivative::Psi, &quad).unwrap();
        assert_eq!(v, 0.0);
    }
}
