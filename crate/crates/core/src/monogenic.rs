//! Homogeneous polynomials in x₁..x_m with Clifford coefficients.
//!
//! Coefficients sit to the left of the monomial and the Dirac operator
//! multiplies by e_j from the left.

use std::collections::BTreeMap;

use crate::clifford::Multivector;
use crate::error::{FueterError, Result};

/// Homogeneous polynomial Σ x^d · c_d with every exponent tuple summing to `k`.
///
/// The zero polynomial is an empty term map with a declared degree.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPolynomial {
    m: usize,
    k: u32,
    terms: BTreeMap<Vec<u32>, Multivector>,
}

impl HomogeneousPolynomial {
    pub fn zero(m: usize, k: u32) -> Result<Self> {
        Multivector::zero(m)?;
        Ok(Self {
            m,
            k,
            terms: BTreeMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Multivector)> {
        self.terms.iter().map(|(d, c)| (d.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coeff · x^exponents`. Coefficients that cancel to exactly zero are dropped.
    pub fn add_term(&mut self, exponents: &[u32], coeff: &Multivector) -> Result<()> {
        if exponents.len() != self.m {
            return Err(FueterError::DimensionMismatch {
                expected: self.m,
                found: exponents.len(),
            });
        }
        if coeff.dim() != self.m {
            return Err(FueterError::DimensionMismatch {
                expected: self.m,
                found: coeff.dim(),
            });
        }
        let total: u32 = exponents.iter().sum();
        if total != self.k {
            return Err(FueterError::InvalidArgument(format!(
                "monomial of degree {total} in a homogeneous polynomial of degree {}",
                self.k
            )));
        }
        let entry = self
            .terms
            .entry(exponents.to_vec())
            .or_insert(Multivector::zero(self.m)?);
        *entry = entry.add(coeff)?;
        if entry.is_zero() {
            self.terms.remove(exponents);
        }
        Ok(())
    }

    pub fn with_term(mut self, exponents: &[u32], coeff: &Multivector) -> Result<Self> {
        self.add_term(exponents, coeff)?;
        Ok(self)
    }

    /// Σ x^d · c_d at the point `x`.
    pub fn eval(&self, x: &[f64]) -> Result<Multivector> {
        if x.len() != self.m {
            return Err(FueterError::DimensionMismatch {
                expected: self.m,
                found: x.len(),
            });
        }
        let mut out = Multivector::zero(self.m)?;
        for (exps, coeff) in &self.terms {
            let monomial: f64 = exps
                .iter()
                .zip(x)
                .map(|(&d, &xi)| xi.powi(d as i32))
                .product();
            out.add_scaled(monomial, coeff)?;
        }
        Ok(out)
    }

    /// ∂_x̲ P = Σ_j e_j ∂_{x_j} P, computed monomial by monomial.
    pub fn dirac(&self) -> Result<Self> {
        let mut out = Self::zero(self.m, self.k.saturating_sub(1))?;
        for (exps, coeff) in &self.terms {
            for j in 0..self.m {
                let d = exps[j];
                if d == 0 {
                    continue;
                }
                let mut lowered = exps.clone();
                lowered[j] -= 1;
                let ej = Multivector::basis_vector(self.m, j + 1)?;
                let c = ej.product(coeff)?.scale(d as f64);
                out.add_term(&lowered, &c)?;
            }
        }
        Ok(out)
    }

    pub fn linear_combination(&self, s: f64, other: &Self, t: f64) -> Result<Self> {
        if self.m != other.m || self.k != other.k {
            return Err(FueterError::InvalidArgument(
                "polynomials of different dimension or degree".into(),
            ));
        }
        let mut out = Self::zero(self.m, self.k)?;
        for (d, c) in &self.terms {
            out.add_term(d, &c.scale(s))?;
        }
        for (d, c) in &other.terms {
            out.add_term(d, &c.scale(t))?;
        }
        Ok(out)
    }
}

/// A homogeneous polynomial whose Dirac derivative vanishes identically.
#[derive(Clone, Debug, PartialEq)]
pub struct MonogenicPolynomial(HomogeneousPolynomial);

impl MonogenicPolynomial {
    /// Validate `p` by applying the Dirac operator; every coefficient of the
    /// result must cancel exactly.
    pub fn new(p: HomogeneousPolynomial) -> Result<Self> {
        let d = p.dirac()?;
        if d.is_zero() {
            Ok(Self(p))
        } else {
            Err(FueterError::NotMonogenic(d.terms.len()))
        }
    }

    /// The constant polynomial 1 (k = 0).
    pub fn one(m: usize) -> Result<Self> {
        let p = HomogeneousPolynomial::zero(m, 0)?.with_term(&vec![0; m], &Multivector::scalar(m, 1.0)?)?;
        Ok(Self(p))
    }

    pub fn dim(&self) -> usize {
        self.0.m
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn polynomial(&self) -> &HomogeneousPolynomial {
        &self.0
    }

    pub fn eval(&self, x: &[f64]) -> Result<Multivector> {
        self.0.eval(x)
    }
}

/// The two first-degree families shipped with the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearForm {
    /// x_i e_j + x_j e_i
    Symmetric,
    /// x_i e_i - x_j e_j
    Difference,
}

/// Selects a built-in degree-1 spherical monogenic by index pair `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PkVariant {
    pub i: usize,
    pub j: usize,
    pub form: LinearForm,
}

impl Default for PkVariant {
    fn default() -> Self {
        Self {
            i: 1,
            j: 2,
            form: LinearForm::Symmetric,
        }
    }
}

/// Built-in inner spherical monogenics of degree 0 and 1.
///
/// Higher degrees must be supplied as explicit term maps and validated with
/// [`MonogenicPolynomial::new`].
pub fn builtin_pk(m: usize, k: u32, variant: PkVariant) -> Result<MonogenicPolynomial> {
    match k {
        0 => MonogenicPolynomial::one(m),
        1 => {
            let PkVariant { i, j, form } = variant;
            if !(1 <= i && i < j && j <= m) {
                return Err(FueterError::InvalidArgument(format!(
                    "index pair ({i}, {j}) must satisfy 1 <= i < j <= {m}"
                )));
            }
            let mut xi = vec![0; m];
            xi[i - 1] = 1;
            let mut xj = vec![0; m];
            xj[j - 1] = 1;
            let ei = Multivector::basis_vector(m, i)?;
            let ej = Multivector::basis_vector(m, j)?;
            let p = HomogeneousPolynomial::zero(m, 1)?;
            let p = match form {
                LinearForm::Symmetric => p.with_term(&xi, &ej)?.with_term(&xj, &ei)?,
                LinearForm::Difference => p.with_term(&xi, &ei)?.with_term(&xj, &ej.scale(-1.0))?,
            };
            let validated = MonogenicPolynomial::new(p);
            debug_assert!(validated.is_ok());
            validated
        }
        _ => Err(FueterError::InvalidArgument(format!(
            "no built-in spherical monogenic of degree {k}; supply the terms explicitly"
        ))),
    }
}
