//! Jacobi theta functions at a real nome and the λ, α functions built from
//! them, giving the closed-form solution of the ₃F₂ case s = 1/2.
//!
//! θ₂⁴ is carried as 16q(Σ_{n≥0} q^{n(n+1)})⁴ so it stays real for q < 0.
//! Derivatives are stored as logarithmic derivatives dᵢ = qθᵢ′/θᵢ.

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::numerics::{pi, PrecisionContext};

/// Largest |q| accepted.
pub const MAX_ABS_Q: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct ThetaValues {
    pub q: Float,
    /// None for q < 0.
    pub theta2: Option<Float>,
    pub theta2_4: Float,
    pub theta3: Float,
    pub theta4: Float,
    /// qθ₂′/θ₂, qθ₃′/θ₃, qθ₄′/θ₄.
    pub d2: Float,
    pub d3: Float,
    pub d4: Float,
    /// Largest summation index used.
    pub n_max: u32,
}

impl ThetaValues {
    pub fn theta3_4(&self) -> Float {
        Float::with_val(self.q.prec(), self.theta3.square_ref()).square()
    }

    pub fn theta4_4(&self) -> Float {
        Float::with_val(self.q.prec(), self.theta4.square_ref()).square()
    }

    /// |θ₃⁴ − θ₂⁴ − θ₄⁴|
    pub fn jacobi_residual(&self) -> Float {
        (self.theta3_4() - &self.theta2_4 - self.theta4_4()).abs()
    }

    /// |4d₃ − 4d₄ − θ₂⁴|
    pub fn derivative_residual_34(&self) -> Float {
        let prec = self.q.prec();
        (Float::with_val(prec, &self.d3 - &self.d4) * 4u32 - &self.theta2_4).abs()
    }

    /// |4d₂ − 4d₃ − θ₄⁴|
    pub fn derivative_residual_23(&self) -> Float {
        let prec = self.q.prec();
        (Float::with_val(prec, &self.d2 - &self.d3) * 4u32 - self.theta4_4()).abs()
    }

    pub fn lambda(&self) -> Float {
        Float::with_val(self.q.prec(), &self.theta2_4 / self.theta3_4())
    }
}

/// Summation bound from |q|^{n²} < 2^{−bits}.
fn n_max(q: &Float, bits: u32) -> u32 {
    let lq = -q.to_f64().abs().ln();
    ((f64::from(bits) * std::f64::consts::LN_2 / lq).sqrt().ceil() as u32) + 2
}

pub fn theta(q: &Float, ctx: &PrecisionContext) -> Result<ThetaValues> {
    let prec = ctx.prec();
    if !q.is_finite() || q.to_f64().abs() > MAX_ABS_Q {
        return Err(Error::OutOfRegion(format!("theta needs |q| <= {MAX_ABS_Q}, got {}", q.to_string_radix(10, Some(8)))));
    }
    let q = ctx.real(q);
    if q.is_zero() {
        let zero = ctx.real(0);
        return Ok(ThetaValues {
            q,
            theta2: Some(zero.clone()),
            theta2_4: zero.clone(),
            theta3: ctx.real(1),
            theta4: ctx.real(1),
            d2: ctx.real(0.25),
            d3: zero.clone(),
            d4: zero,
            n_max: 0,
        });
    }
    let n_top = n_max(&q, prec);
    // θ₃ = 1 + 2Σ q^{n²}, θ₄ = 1 + 2Σ (−1)ⁿ q^{n²}, S = Σ_{n≥0} q^{n(n+1)}
    let (mut t3, mut t4, mut dt3, mut dt4) = (ctx.real(1), ctx.real(1), ctx.real(0), ctx.real(0));
    let (mut s, mut ds) = (ctx.real(0), ctx.real(0));
    for n in 0..=n_top {
        let n = u64::from(n);
        let sq = pow_int(&q, n * n, prec);
        let tri = pow_int(&q, n * (n + 1), prec);
        s += &tri;
        ds += Float::with_val(prec, &tri * (n * (n + 1)));
        if n == 0 {
            continue;
        }
        let term = Float::with_val(prec, &sq * 2u32);
        let dterm = Float::with_val(prec, &term * (n * n));
        t3 += &term;
        dt3 += &dterm;
        if n % 2 == 1 {
            t4 -= &term;
            dt4 -= &dterm;
        } else {
            t4 += &term;
            dt4 += &dterm;
        }
    }
    let s4 = Float::with_val(prec, s.square_ref()).square();
    let theta2_4 = Float::with_val(prec, &q * &s4) * 16u32;
    let theta2 = (q >= 0).then(|| Float::with_val(prec, q.sqrt_ref()).sqrt() * Float::with_val(prec, &s * 2u32));
    let d2 = Float::with_val(prec, &ds / &s) + 0.25f64;
    let d3 = Float::with_val(prec, &dt3 / &t3);
    let d4 = Float::with_val(prec, &dt4 / &t4);
    Ok(ThetaValues { q, theta2, theta2_4, theta3: t3, theta4: t4, d2, d3, d4, n_max: n_top })
}

fn pow_int(q: &Float, e: u64, prec: u32) -> Float {
    use rug::ops::Pow;
    let e = u32::try_from(e).expect("theta exponents stay small");
    Float::with_val(prec, q.pow(e))
}

/// q = e^{−πτ}.
pub fn nome(tau: &Float, ctx: &PrecisionContext) -> Float {
    let prec = ctx.prec();
    (-Float::with_val(prec, pi(ctx) * tau)).exp()
}

/// λ = θ₂⁴/θ₃⁴ and α = (1/θ₃⁴)(1/π − 4τ qθ₄′/θ₄) at q = e^{−πτ}.
pub fn lambda_alpha(tau: &Float, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    if *tau <= 0 {
        return Err(Error::Domain("tau must be positive".into()));
    }
    let prec = ctx.prec();
    let th = theta(&nome(tau, ctx), ctx)?;
    let t34 = th.theta3_4();
    let lambda = Float::with_val(prec, &th.theta2_4 / &t34);
    let inner = Float::with_val(prec, pi(ctx).recip_ref()) - Float::with_val(prec, tau * &th.d4) * 4u32;
    Ok((lambda, inner / t34))
}

/// The λ-form solution at τ = √(k+1).
#[derive(Debug, Clone)]
pub struct ClosedForm3F2 {
    pub tau: Float,
    pub q: Float,
    pub lambda: Float,
    pub alpha: Float,
    /// 4λ(1−λ)
    pub z: Float,
    /// α − √(k+1)λ
    pub a: Float,
    /// √(k+1)(2λ−1)
    pub b: Float,
    /// |(q/(z√(1−z))) dz/dq − θ₃⁴|, with dz/dq from termwise derivatives.
    pub dz_residual: Float,
}

pub fn closed_form_3f2_half(k: &Rational, ctx: &PrecisionContext) -> Result<ClosedForm3F2> {
    let prec = ctx.prec();
    let k1 = Rational::from(k + 1u32);
    if k1 <= 0 {
        return Err(Error::Domain(format!("k + 1 must be positive, got k = {k}")));
    }
    let tau = Float::with_val(prec, &k1).sqrt();
    let q = nome(&tau, ctx);
    let th = theta(&q, ctx)?;
    let (lambda, alpha) = lambda_alpha(&tau, ctx)?;
    let one_minus = Float::with_val(prec, 1 - &lambda);
    let z = Float::with_val(prec, &lambda * &one_minus) * 4u32;
    let a = Float::with_val(prec, &alpha - Float::with_val(prec, &tau * &lambda));
    let b = Float::with_val(prec, Float::with_val(prec, &lambda * 2u32) - 1u32) * &tau;
    // q dλ/dq = λ·4(d₂ − d₃), q dz/dq = 4(1 − 2λ) q dλ/dq
    let q_dlambda = Float::with_val(prec, &lambda * Float::with_val(prec, &th.d2 - &th.d3)) * 4u32;
    let q_dz = Float::with_val(prec, 1 - Float::with_val(prec, &lambda * 2u32)) * q_dlambda * 4u32;
    let lhs = q_dz / Float::with_val(prec, &z * Float::with_val(prec, 1 - &z).sqrt());
    let dz_residual = (lhs - th.theta3_4()).abs();
    Ok(ClosedForm3F2 { tau, q, lambda, alpha, z, a, b, dz_residual })
}

/// ₃F₂(1/2,1/2,1/2; 1,1; z) by plain summation, refused at |z| ≥ `limit`.
pub fn f32_half_scalar(z: &Float, limit: f64, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.prec();
    if z.to_f64().abs() >= limit.min(1.0) {
        return Err(Error::Divergence(format!("series refused at |z| = {}", z.to_string_radix(10, Some(12)))));
    }
    let ratio = (z.to_f64().abs() + 0.1) / 1.1;
    let tail = ratio / (1.0 - ratio);
    let cut = ctx.pow2_neg(prec + 16);
    let mut term = ctx.real(1);
    let mut sum = ctx.real(0);
    let half = Float::with_val(prec, 0.5f64);
    for n in 0u32..50_000_000 {
        sum += &term;
        if n > 20 && Float::with_val(prec, term.abs_ref()) * tail < cut {
            return Ok(sum);
        }
        let f = Float::with_val(prec, &half + n) / (n + 1);
        let f3 = Float::with_val(prec, f.square_ref()) * &f;
        term *= f3;
        term *= z;
    }
    Err(Error::Divergence("term budget exhausted".into()))
}

/// |θ₃⁴(q) − ₃F₂(1/2,1/2,1/2; 1,1; 4θ₂⁴θ₄⁴/θ₃⁸)|, summing up to |z| < `limit`.
pub fn hypergeometric_theta_residual(q: &Float, limit: f64, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.prec();
    let th = theta(q, ctx)?;
    let t34 = th.theta3_4();
    let z = Float::with_val(prec, &th.theta2_4 * th.theta4_4()) * 4u32 / Float::with_val(prec, t34.square_ref());
    let f = f32_half_scalar(&z, limit, ctx)?;
    Ok((f - t34).abs())
}
