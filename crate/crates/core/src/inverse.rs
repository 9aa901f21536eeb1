//! Fueter primitives of axial monogenic functions by integration in r.
//!
//! Given H = (A + ω̲B) P_k on a rectangle [a,b]×[c,d] with c > 0, a primitive
//! h = u + iv is
//!
//! u = K_N I₁ + Σ_j α_j(x0) r^{2j},   v = K_N I₂ + Σ_j β_j(x0) r^{2j+1},
//!
//! with I₁ = ∫_c^r t(r²-t²)^{N-1} A dt, I₂ = r ∫_c^r (r²-t²)^{N-1} B dt,
//! K_N = 1/(2N((2N-2)!!)²), and α_j, β_j solving a linear ODE chain in x0
//! driven by A(x0, c) and B(x0, c).

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::clifford::{Multivector, Paravector};
use crate::error::{FueterError, Result};
use crate::forward::{assemble_axial, radial_fields, FueterConfig};
use crate::jet::Holomorphic;
use crate::monogenic::MonogenicPolynomial;
use crate::ode::{self, DenseSolution, OdeConfig};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::radial::double_factorial;
use crate::verify::central_derivative;

/// [a, b] × [c, d] in the (x0, r) half-plane, c > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rectangle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Rectangle {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if !(a < b) || !(0.0 < c && c < d) {
            return Err(FueterError::InvalidArgument(format!(
                "rectangle [{a}, {b}]×[{c}, {d}] needs a < b and 0 < c < d"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn contains(&self, x0: f64, r: f64) -> bool {
        let sx = 1e-12 * (self.b - self.a);
        let sr = 1e-12 * (self.d - self.c);
        x0 >= self.a - sx && x0 <= self.b + sx && r >= self.c - sr && r <= self.d + sr
    }

    fn check(&self, x0: f64, r: f64) -> Result<()> {
        if self.contains(x0, r) {
            Ok(())
        } else {
            Err(FueterError::Domain(format!(
                "({x0}, {r}) outside [{}, {}]×[{}, {}]",
                self.a, self.b, self.c, self.d
            )))
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

pub type ScalarField = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// H = (A(x0,r) + ω̲B(x0,r)) P_k(x̲) restricted to a rectangle.
#[derive(Clone)]
pub struct AxialFunction {
    a_field: ScalarField,
    b_field: ScalarField,
    config: FueterConfig,
    p_k: MonogenicPolynomial,
    rect: Rectangle,
    certified: Option<f64>,
}

impl fmt::Debug for AxialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AxialFunction")
            .field("m", &self.config.dim())
            .field("k", &self.config.degree())
            .field("rect", &self.rect)
            .field("certified", &self.certified)
            .finish_non_exhaustive()
    }
}

impl AxialFunction {
    pub fn new(
        a_field: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        b_field: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        p_k: MonogenicPolynomial,
        rect: Rectangle,
    ) -> Result<Self> {
        let config = FueterConfig::new(p_k.dim(), p_k.degree())?;
        Ok(Self {
            a_field: Arc::new(a_field),
            b_field: Arc::new(b_field),
            config,
            p_k,
            rect,
            certified: None,
        })
    }

    /// The fields of Ft[h, P_k], computed with exact jets.
    pub fn from_holomorphic(
        h: Arc<dyn Holomorphic>,
        p_k: MonogenicPolynomial,
        rect: Rectangle,
    ) -> Result<Self> {
        let cfg = FueterConfig::new(p_k.dim(), p_k.degree())?;
        let h_b = Arc::clone(&h);
        Self::new(
            move |x0, r| radial_fields(h.as_ref(), &cfg, x0, r).map(|f| f.0).unwrap_or(f64::NAN),
            move |x0, r| radial_fields(h_b.as_ref(), &cfg, x0, r).map(|f| f.1).unwrap_or(f64::NAN),
            p_k,
            rect,
        )
    }

    pub fn config(&self) -> &FueterConfig {
        &self.config
    }

    pub fn rect(&self) -> &Rectangle {
        &self.rect
    }

    pub fn polynomial(&self) -> &MonogenicPolynomial {
        &self.p_k
    }

    /// Same fields on a different rectangle.
    pub fn with_rect(&self, rect: Rectangle) -> Self {
        Self {
            rect,
            certified: None,
            ..self.clone()
        }
    }

    pub fn eval_a(&self, x0: f64, r: f64) -> Result<f64> {
        self.rect.check(x0, r)?;
        Ok((self.a_field)(x0, r))
    }

    pub fn eval_b(&self, x0: f64, r: f64) -> Result<f64> {
        self.rect.check(x0, r)?;
        Ok((self.b_field)(x0, r))
    }

    /// A and B without the rectangle check, for finite-difference stencils.
    pub fn fields_unchecked(&self, x0: f64, r: f64) -> (f64, f64) {
        ((self.a_field)(x0, r), (self.b_field)(x0, r))
    }

    /// H at a point of R^{m+1}.
    pub fn value(&self, p: &Paravector) -> Result<Multivector> {
        let r = p.radius();
        let a = self.eval_a(p.x0, r)?;
        let b = self.eval_b(p.x0, r)?;
        assemble_axial(a, b, &self.p_k, p)
    }

    /// Largest Vekua residual recorded by [`AxialFunction::certify`], if any.
    pub fn certified(&self) -> Option<f64> {
        self.certified
    }

    /// Check the Vekua system on a `samples`×`samples` interior grid and flag
    /// the function monogenic-certified when the max residual is below `tol`.
    pub fn certify(&mut self, samples: usize, tol: f64) -> Result<f64> {
        let grid = crate::verify::GridSpec::with_default_step(self.rect, samples, samples)?;
        let (a, b) = (Arc::clone(&self.a_field), Arc::clone(&self.b_field));
        let report = crate::verify::vekua_residual(
            &|x0, r| a(x0, r),
            &|x0, r| b(x0, r),
            self.config.degree(),
            self.config.dim(),
            &grid,
        )?;
        if report.max <= tol {
            self.certified = Some(report.max);
        }
        Ok(report.max)
    }
}

/// K_N = 1/(2N((2N-2)!!)²) with N = k + (m-1)/2.
pub fn compute_kn(k: u32, m: usize) -> Result<Ratio<u128>> {
    if m.is_multiple_of(2) {
        return Err(FueterError::EvenDimension(m));
    }
    let n = k + (m as u32 - 1) / 2;
    if n == 0 {
        return Err(FueterError::InvalidArgument("N = k + (m-1)/2 must be >= 1".into()));
    }
    let df = double_factorial(2 * n - 2)?;
    let overflow = || FueterError::Overflow(format!("K_{n}"));
    let den = df
        .checked_mul(df)
        .and_then(|d| d.checked_mul(2 * n as u128))
        .ok_or_else(overflow)?;
    Ok(Ratio::new(1, den))
}

pub(crate) fn ratio_to_f64(q: &Ratio<u128>) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// I₁ (integrand t(r²-t²)^{N-1}A) or I₂ (r × integrand (r²-t²)^{N-1}B).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadialIntegral {
    First,
    Second,
}

/// I₁ or I₂ at (x0, r) for the field `f` (A for I₁, B for I₂), integrating from c.
pub fn integral_i<F: Fn(f64, f64) -> f64>(
    which: RadialIntegral,
    f: F,
    x0: f64,
    r: f64,
    rect: &Rectangle,
    n: u32,
    quad: &QuadratureConfig,
) -> Result<f64> {
    rect.check(x0, r)?;
    if n == 0 {
        return Err(FueterError::InvalidArgument("N must be >= 1".into()));
    }
    let r2 = r * r;
    let p = n as i32 - 1;
    match which {
        RadialIntegral::First => integrate(|t| t * (r2 - t * t).powi(p) * f(x0, t), rect.c, r, quad),
        RadialIntegral::Second => Ok(r * integrate(|t| (r2 - t * t).powi(p) * f(x0, t), rect.c, r, quad)?),
    }
}

/// Solved α_j(x0), β_j(x0), j = 0..N-1, on [a, b].
#[derive(Clone, Debug)]
pub struct AlphaBeta {
    order: usize,
    solution: DenseSolution,
}

impl AlphaBeta {
    pub fn order(&self) -> usize {
        self.order
    }

    /// (α_0..α_{N-1}, β_0..β_{N-1}) at x0.
    pub fn eval(&self, x0: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let (y, _) = self.solution.eval(x0)?;
        let (alpha, beta) = y.split_at(self.order);
        Ok((alpha.to_vec(), beta.to_vec()))
    }

    /// Values and x0-derivatives of the full state vector.
    pub fn eval_with_derivative(&self, x0: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        self.solution.eval(x0)
    }

    pub fn solution(&self) -> &DenseSolution {
        &self.solution
    }
}

/// Integrate the chain
///
/// α_j′ = (2j+1) β_j + (-1)^{N-j-1} K_N C(N-1,j) c^{2(N-j)-1} B(x0, c),
/// β_j′ = -2(j+1) α_{j+1} + (-1)^{N-j} K_N C(N-1,j) c^{2(N-j-1)} A(x0, c),
///
/// with α_N ≡ 0, from x0 = a. `init` is (α_0(a)..α_{N-1}(a), β_0(a)..β_{N-1}(a)).
pub fn solve_alpha_beta(h: &AxialFunction, init: &[f64], cfg: &OdeConfig) -> Result<AlphaBeta> {
    let n = h.config.order() as usize;
    if init.len() != 2 * n {
        return Err(FueterError::InvalidArgument(format!(
            "expected {} initial values (α then β), got {}",
            2 * n,
            init.len()
        )));
    }
    let kn = ratio_to_f64(&compute_kn(h.config.degree(), h.config.dim())?);
    let c = h.rect.c;
    let mut forcing_b = Vec::with_capacity(n);
    let mut forcing_a = Vec::with_capacity(n);
    let mut binom = 1.0;
    for j in 0..n {
        if j > 0 {
            binom = binom * (n - j) as f64 / j as f64;
        }
        let sign_b = if (n - j - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        forcing_b.push(sign_b * kn * binom * c.powi(2 * (n - j) as i32 - 1));
        forcing_a.push(-sign_b * kn * binom * c.powi(2 * (n - j - 1) as i32));
    }
    let rhs = |x0: f64, y: &[f64]| -> Result<Vec<f64>> {
        let (a_c, b_c) = h.fields_unchecked(x0, c);
        if !(a_c.is_finite() && b_c.is_finite()) {
            return Err(FueterError::Domain(format!("field is not finite at ({x0}, {c})")));
        }
        let (alpha, beta) = y.split_at(n);
        let mut out = vec![0.0; 2 * n];
        for j in 0..n {
            out[j] = (2 * j + 1) as f64 * beta[j] + forcing_b[j] * b_c;
            let next_alpha = if j + 1 < n { alpha[j + 1] } else { 0.0 };
            out[n + j] = -2.0 * (j + 1) as f64 * next_alpha + forcing_a[j] * a_c;
        }
        Ok(out)
    };
    let solution = ode::solve(rhs, h.rect.a, h.rect.b, init, cfg)?;
    Ok(AlphaBeta { order: n, solution })
}

/// A Fueter primitive (u, v) of an axial monogenic function.
#[derive(Clone, Debug)]
pub struct FueterPrimitive {
    field: AxialFunction,
    order: u32,
    kn: Ratio<u128>,
    kn_value: f64,
    quad: QuadratureConfig,
    init: Vec<f64>,
    trajectories: AlphaBeta,
}

/// Build the primitive of `h`. `init` defaults to all zeros (the canonical primitive).
pub fn invert(
    h: &AxialFunction,
    init: Option<&[f64]>,
    quad: &QuadratureConfig,
    ode: &OdeConfig,
) -> Result<FueterPrimitive> {
    let order = h.config.order();
    let init = init.map(<[f64]>::to_vec).unwrap_or_else(|| vec![0.0; 2 * order as usize]);
    let kn = compute_kn(h.config.degree(), h.config.dim())?;
    let trajectories = solve_alpha_beta(h, &init, ode)?;
    Ok(FueterPrimitive {
        field: h.clone(),
        order,
        kn_value: ratio_to_f64(&kn),
        kn,
        quad: *quad,
        init,
        trajectories,
    })
}

impl FueterPrimitive {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn kn(&self) -> Ratio<u128> {
        self.kn
    }

    pub fn rect(&self) -> &Rectangle {
        &self.field.rect
    }

    pub fn field(&self) -> &AxialFunction {
        &self.field
    }

    pub fn init(&self) -> &[f64] {
        &self.init
    }

    pub fn trajectories(&self) -> &AlphaBeta {
        &self.trajectories
    }

    fn integral(&self, which: RadialIntegral, x0: f64, r: f64, n: u32) -> Result<f64> {
        let f = &self.field;
        match which {
            RadialIntegral::First => integral_i(which, |x, t| (f.a_field)(x, t), x0, r, &f.rect, n, &self.quad),
            RadialIntegral::Second => integral_i(which, |x, t| (f.b_field)(x, t), x0, r, &f.rect, n, &self.quad),
        }
    }

    /// (u, v) at (x0, r).
    pub fn eval(&self, x0: f64, r: f64) -> Result<(f64, f64)> {
        self.field.rect.check(x0, r)?;
        let (alpha, beta) = self.trajectories.eval(x0)?;
        let i1 = self.integral(RadialIntegral::First, x0, r, self.order)?;
        let i2 = self.integral(RadialIntegral::Second, x0, r, self.order)?;
        let r2 = r * r;
        let mut u = self.kn_value * i1;
        let mut v = self.kn_value * i2;
        let mut rp = 1.0;
        for j in 0..alpha.len() {
            u += alpha[j] * rp;
            v += beta[j] * rp * r;
            rp *= r2;
        }
        Ok((u, v))
    }

    pub fn eval_complex(&self, x0: f64, r: f64) -> Result<Complex64> {
        let (u, v) = self.eval(x0, r)?;
        Ok(Complex64::new(u, v))
    }

    /// Ft of the computed primitive, (A, B) at (x0, r).
    ///
    /// The first N-1 radial steps are applied in closed form, using
    /// (r⁻¹∂_r) I₁^{(n)} = 2(n-1) I₁^{(n-1)} and (∂_r r⁻¹) I₂^{(n)} = 2(n-1) I₂^{(n-1)}
    /// together with the exact action on the α/β polynomials; the last step is a
    /// fourth-order central difference in r with step `fd_step`.
    pub fn forward_fields(&self, x0: f64, r: f64, fd_step: f64) -> Result<(f64, f64)> {
        let rect = &self.field.rect;
        rect.check(x0, r - 2.0 * fd_step)?;
        rect.check(x0, r + 2.0 * fd_step)?;
        let n = self.order;
        let reduce = double_factorial(2 * n - 2)? as f64;
        let (alpha, beta) = self.trajectories.eval(x0)?;
        let top = n as usize - 1;
        let su = |s: f64| -> Result<f64> {
            Ok(reduce * (self.kn_value * self.integral(RadialIntegral::First, x0, s, 1)? + alpha[top]))
        };
        let sv_over_r = |s: f64| -> Result<f64> {
            Ok(reduce * (self.kn_value * self.integral(RadialIntegral::Second, x0, s, 1)? / s + beta[top]))
        };
        let lead = self.field.config.leading() as f64;
        let a = lead * central_derivative(&su, r, fd_step)? / r;
        let b = lead * central_derivative(&sv_over_r, r, fd_step)?;
        Ok((a, b))
    }

    /// Residuals of the construction identity at (x0, r):
    /// (r⁻¹∂_r)(K_N I₁^{(N)}) - K_N·2(N-1) I₁^{(N-1)} and
    /// (∂_r r⁻¹)(K_N I₂^{(N)}) - K_N·2(N-1) I₂^{(N-1)},
    /// with the convention that the order-0 terms are K_N A and K_N B.
    /// The left-hand sides use a fourth-order central difference in r.
    pub fn construction_identity(&self, x0: f64, r: f64, fd_step: f64) -> Result<(f64, f64)> {
        let rect = &self.field.rect;
        rect.check(x0, r - 2.0 * fd_step)?;
        rect.check(x0, r + 2.0 * fd_step)?;
        let n = self.order;
        let k = self.kn_value;
        let lhs_u = central_derivative(&|s| Ok(k * self.integral(RadialIntegral::First, x0, s, n)?), r, fd_step)? / r;
        let lhs_v = central_derivative(
            &|s| Ok(k * self.integral(RadialIntegral::Second, x0, s, n)? / s),
            r,
            fd_step,
        )?;
        let (rhs_u, rhs_v) = if n == 1 {
            (k * self.field.eval_a(x0, r)?, k * self.field.eval_b(x0, r)?)
        } else {
            let f = 2.0 * (n - 1) as f64 * k;
            (
                f * self.integral(RadialIntegral::First, x0, r, n - 1)?,
                f * self.integral(RadialIntegral::Second, x0, r, n - 1)?,
            )
        };
        Ok((lhs_u - rhs_u, lhs_v - rhs_v))
    }
}
