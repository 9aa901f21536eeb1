//! Exact Laurent polynomials over the rationals, used as an independent
//! reference for the radial operator expansions.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{FueterError, Result};
use crate::radial::{coeff_a, RadialVariant};

pub type Rational = Ratio<i128>;

/// Σ c_p x^p with integer (possibly negative) powers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(power: i32, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(power, coeff);
        p
    }

    /// Polynomial from coefficients of x⁰, x¹, ….
    pub fn from_coeffs(coeffs: &[Rational]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(i as i32, *c);
        }
        p
    }

    pub fn add_term(&mut self, power: i32, coeff: Rational) {
        let e = self.terms.entry(power).or_insert_with(|| Rational::from_integer(0));
        *e += coeff;
        if *e == Rational::from_integer(0) {
            self.terms.remove(&power);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, Rational)> + '_ {
        self.terms.iter().map(|(&p, &c)| (p, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p, c);
        }
        out
    }

    pub fn scale(&self, s: Rational) -> Self {
        let mut out = Self::zero();
        for (p, c) in self.terms() {
            out.add_term(p, c * s);
        }
        out
    }

    /// Multiply by x^shift.
    pub fn shift(&self, shift: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&p, &c)| (p + shift, c)).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (p, c) in self.terms() {
            if p != 0 {
                out.add_term(p - 1, c * Rational::from_integer(p as i128));
            }
        }
        out
    }

    /// ∫_a^x p(t) dt. Requires no x⁻¹ term.
    pub fn integrate_from(&self, a: Rational) -> Option<Self> {
        let mut out = Self::zero();
        let mut at_a = Rational::from_integer(0);
        for (p, c) in self.terms() {
            if p == -1 {
                return None;
            }
            let q = c / Rational::from_integer(p as i128 + 1);
            out.add_term(p + 1, q);
            at_a += q * pow_rational(a, p + 1)?;
        }
        out.add_term(0, -at_a);
        Some(out)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms()
            .map(|(p, c)| (*c.numer() as f64 / *c.denom() as f64) * x.powi(p))
            .sum()
    }
}

/// (x⁻¹ d/dx)ⁿ g (Minus) or (d/dx x⁻¹)ⁿ g (Plus), applied step by step.
pub fn nested_radial_op(g: &LaurentPoly, n: u32, variant: RadialVariant) -> LaurentPoly {
    (0..n).fold(g.clone(), |acc, _| match variant {
        RadialVariant::Minus => acc.derivative().shift(-1),
        RadialVariant::Plus => acc.shift(-1).derivative(),
    })
}

/// The same operator through the closed-form expansion in g, g′, …, g⁽ⁿ⁾
/// with exact coefficients a_{j,n}.
pub fn expanded_radial_op(g: &LaurentPoly, n: u32, variant: RadialVariant) -> Result<LaurentPoly> {
    if n == 0 {
        return Ok(g.clone());
    }
    let mut derivs = vec![g.clone()];
    for _ in 0..n {
        let next = derivs.last().unwrap().derivative();
        derivs.push(next);
    }
    let mut out = LaurentPoly::zero();
    let (lo, hi) = match variant {
        RadialVariant::Minus => (1, n),
        RadialVariant::Plus => (0, n),
    };
    for j in lo..=hi {
        let a = match variant {
            RadialVariant::Minus => coeff_a(j, n)?,
            RadialVariant::Plus => coeff_a(j + 1, n + 1)?,
        };
        let a = i128::try_from(a).map_err(|_| FueterError::Overflow(format!("a_{{{j},{n}}}")))?;
        let sign = if (n + j).is_multiple_of(2) { 1 } else { -1 };
        let term = derivs[j as usize]
            .shift(j as i32 - 2 * n as i32)
            .scale(Rational::from_integer(sign * a));
        out = out.add(&term);
    }
    Ok(out)
}

fn pow_rational(a: Rational, p: i32) -> Option<Rational> {
    if p >= 0 {
        Some(num_traits_pow(a, p as u32))
    } else if a == Rational::from_integer(0) {
        None
    } else {
        Some(num_traits_pow(a.recip(), (-p) as u32))
    }
}

fn num_traits_pow(a: Rational, p: u32) -> Rational {
    (0..p).fold(Rational::from_integer(1), |acc, _| acc * a)
}
