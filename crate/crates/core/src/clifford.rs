//! Dense arithmetic in the real Clifford algebra R_{0,m}.
//!
//! Basis blades e_A are indexed by a bit pattern: bit `j-1` set means e_j is
//! a factor. e_∅ = 1 is index 0. The generators satisfy
//! e_j e_k + e_k e_j = -2 δ_jk, so every repeated generator contributes -1.

use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{FueterError, Result};

/// Largest supported algebra dimension. Subset labels use one digit per index.
pub const MAX_DIM: usize = 9;

fn check_dim(m: usize) -> Result<()> {
    if m == 0 || m > MAX_DIM {
        Err(FueterError::UnsupportedDimension(m))
    } else {
        Ok(())
    }
}

/// Sign of `e_a * e_b` for canonical blades `a`, `b` in signature (0, m).
///
/// Counts the transpositions needed to merge the two ordered index lists and
/// adds one factor -1 for every contracted pair e_j e_j.
pub fn blade_sign(a: u32, b: u32) -> f64 {
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    swaps += (a & b).count_ones();
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Grade of a blade.
pub fn blade_grade(blade: u32) -> u32 {
    blade.count_ones()
}

/// Render a blade as its sorted index string: `""`, `"1"`, `"13"`, ...
pub fn blade_label(blade: u32) -> String {
    (0..MAX_DIM as u32)
        .filter(|j| blade & (1 << j) != 0)
        .map(|j| char::from(b'1' + j as u8))
        .collect()
}

/// Parse a sorted index string back into a blade. Indices must be strictly
/// increasing and at most `m`.
pub fn parse_blade_label(label: &str, m: usize) -> Result<u32> {
    let mut blade = 0u32;
    let mut last = 0u32;
    for ch in label.chars() {
        let j = ch
            .to_digit(10)
            .filter(|&d| d >= 1)
            .ok_or_else(|| FueterError::Parse(format!("bad blade label {label:?}")))?;
        if j <= last || j as usize > m {
            return Err(FueterError::Parse(format!(
                "blade label {label:?} is not a sorted subset of 1..={m}"
            )));
        }
        blade |= 1 << (j - 1);
        last = j;
    }
    Ok(blade)
}

/// An element of R_{0,m} stored as 2^m real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    m: usize,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(m: usize) -> Result<Self> {
        check_dim(m)?;
        Ok(Self {
            m,
            coeffs: vec![0.0; 1 << m],
        })
    }

    pub fn scalar(m: usize, s: f64) -> Result<Self> {
        let mut out = Self::zero(m)?;
        out.coeffs[0] = s;
        Ok(out)
    }

    /// The generator e_j, 1-based.
    pub fn basis_vector(m: usize, j: usize) -> Result<Self> {
        if j == 0 || j > m {
            return Err(FueterError::InvalidArgument(format!(
                "generator index {j} outside 1..={m}"
            )));
        }
        Self::blade(m, 1 << (j - 1), 1.0)
    }

    /// `coeff * e_A` for the canonical blade `blade`.
    pub fn blade(m: usize, blade: u32, coeff: f64) -> Result<Self> {
        let mut out = Self::zero(m)?;
        if blade as usize >= out.coeffs.len() {
            return Err(FueterError::InvalidArgument(format!(
                "blade {blade:#b} does not exist for m = {m}"
            )));
        }
        out.coeffs[blade as usize] = coeff;
        Ok(out)
    }

    /// Grade-1 element Σ v_j e_j.
    pub fn vector(components: &[f64]) -> Result<Self> {
        let mut out = Self::zero(components.len())?;
        for (j, &x) in components.iter().enumerate() {
            out.coeffs[1 << j] = x;
        }
        Ok(out)
    }

    pub fn from_coeffs(m: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dim(m)?;
        if coeffs.len() != 1 << m {
            return Err(FueterError::DimensionMismatch {
                expected: 1 << m,
                found: coeffs.len(),
            });
        }
        Ok(Self { m, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, blade: u32) -> f64 {
        self.coeffs.get(blade as usize).copied().unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |acc, c| acc.max(c.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            Err(FueterError::DimensionMismatch {
                expected: self.m,
                found: other.m,
            })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { m: self.m, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { m: self.m, coeffs })
    }

    /// In-place `self += s * other`.
    pub fn add_scaled(&mut self, s: f64, other: &Self) -> Result<()> {
        self.check_same(other)?;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
        Ok(())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Clifford product `self * other`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = vec![0.0; self.coeffs.len()];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb == 0.0 {
                    continue;
                }
                let (a, b) = (a as u32, b as u32);
                out[(a ^ b) as usize] += blade_sign(a, b) * ca * cb;
            }
        }
        Ok(Self {
            m: self.m,
            coeffs: out,
        })
    }

    /// Clifford conjugation: ē_j = -e_j extended as an anti-automorphism.
    ///
    /// A grade-g blade picks up (-1)^g from the generators and (-1)^{g(g-1)/2}
    /// from the reversal, i.e. (-1)^{g(g+1)/2} in total.
    pub fn conjugate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(blade, &c)| {
                let g = blade_grade(blade as u32);
                if (g * (g + 1) / 2).is_multiple_of(2) {
                    c
                } else {
                    -c
                }
            })
            .collect();
        Self { m: self.m, coeffs }
    }

    /// Part of grade `g`.
    pub fn grade(&self, g: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(blade, &c)| if blade_grade(blade as u32) == g { c } else { 0.0 })
            .collect();
        Self { m: self.m, coeffs }
    }

    /// Nonzero (or all, with `include_zero`) coefficients as (label, value) pairs
    /// in canonical blade order.
    pub fn to_pairs(&self, include_zero: bool) -> Vec<(String, f64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| include_zero || c != 0.0)
            .map(|(blade, &c)| (blade_label(blade as u32), c))
            .collect()
    }

    /// Inverse of [`Multivector::to_pairs`]. Repeated labels accumulate.
    pub fn from_pairs<S: AsRef<str>>(m: usize, pairs: &[(S, f64)]) -> Result<Self> {
        let mut out = Self::zero(m)?;
        for (label, c) in pairs {
            let blade = parse_blade_label(label.as_ref(), m)?;
            out.coeffs[blade as usize] += c;
        }
        Ok(out)
    }

    /// Componentwise closeness in max norm.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.m == other.m
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.to_pairs(false);
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (label, c)) in terms.iter().enumerate() {
            let (sign, mag) = if *c < 0.0 { ("-", -c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if label.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}e{label}")?;
            }
        }
        Ok(())
    }
}

/// A point x0 + x̲ of R^{m+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct Paravector {
    pub x0: f64,
    pub vec: Vec<f64>,
}

impl Paravector {
    pub fn new(x0: f64, vec: Vec<f64>) -> Self {
        Self { x0, vec }
    }

    /// The point `x0 + r·direction/|direction|`.
    pub fn from_axial(x0: f64, r: f64, direction: &[f64]) -> Result<Self> {
        let len = direction.iter().map(|d| d * d).sum::<f64>().sqrt();
        if len == 0.0 {
            return Err(FueterError::InvalidArgument("zero direction".into()));
        }
        Ok(Self {
            x0,
            vec: direction.iter().map(|d| r * d / len).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    /// r = |x̲|.
    pub fn radius(&self) -> f64 {
        self.vec.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// ω̲ = x̲ / r, as a grade-1 multivector.
    pub fn omega(&self) -> Result<Multivector> {
        let r = self.radius();
        if r == 0.0 {
            return Err(FueterError::Domain("ω̲ is undefined on the axis r = 0".into()));
        }
        let unit: Vec<f64> = self.vec.iter().map(|x| x / r).collect();
        Multivector::vector(&unit)
    }

    /// The vector part x̲ as a multivector.
    pub fn vector_part(&self) -> Result<Multivector> {
        Multivector::vector(&self.vec)
    }

    /// Embedding x0 + Σ x_j e_j.
    pub fn embed(&self) -> Result<Multivector> {
        let mut out = Multivector::vector(&self.vec)?;
        out.coeffs[0] = self.x0;
        Ok(out)
    }

    /// |x0 + x̲|² = x0² + r².
    pub fn norm_sqr(&self) -> f64 {
        self.x0 * self.x0 + self.vec.iter().map(|x| x * x).sum::<f64>()
    }
}
