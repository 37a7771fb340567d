use rug::ops::Pow;
use rug::{Float, Rational};

use super::SeriesFamily;
use crate::error::{Error, Result};
use crate::jet::{pow_base, Jet, RealJet};
use crate::numerics::PrecisionContext;

/// Evaluation is refused at or beyond this |z|.
pub const MAX_ABS_Z: f64 = 0.95;

/// Terms before the geometric tail bound is trusted.
const BURN_IN: usize = 20;
/// Margin r in the comparison ratio (|z| + r)/(1 + r).
const RATIO_MARGIN: f64 = 0.1;
/// Extra bits demanded of the tail bound beyond the working precision.
pub const TAIL_SLACK_BITS: u32 = 16;
const MAX_TERMS: usize = 2_000_000;

/// Components of A, B, C (and D) at one point z.
#[derive(Debug, Clone)]
pub struct ComponentVector {
    pub family: SeriesFamily,
    pub z: Float,
    pub u: i32,
    /// components[k] is Σ zⁿ Pₙ (nI+X)^k as a real jet.
    pub components: Vec<RealJet>,
    pub tail_bound: Float,
    pub terms_used: usize,
}

impl ComponentVector {
    pub fn a(&self) -> &[Float] {
        self.components[0].coeffs()
    }

    pub fn b(&self) -> &[Float] {
        self.components[1].coeffs()
    }

    pub fn c(&self) -> Option<&[Float]> {
        self.components.get(2).map(|j| j.coeffs())
    }

    pub fn d(&self) -> Option<&[Float]> {
        self.components.get(3).map(|j| j.coeffs())
    }

    pub fn prec(&self) -> u32 {
        self.z.prec()
    }
}

pub fn evaluate_components(family: &SeriesFamily, z: &Float, u: i32, ctx: &PrecisionContext) -> Result<ComponentVector> {
    evaluate_components_within(family, z, u, MAX_ABS_Z, ctx)
}

/// As `evaluate_components` with a caller-chosen refusal radius below 1.
pub fn evaluate_components_within(
    family: &SeriesFamily,
    z: &Float,
    u: i32,
    limit: f64,
    ctx: &PrecisionContext,
) -> Result<ComponentVector> {
    evaluate_components_cut(family, z, u, limit, TAIL_SLACK_BITS, ctx)
}

/// As `evaluate_components_within`, stopping once the tail bound falls below
/// 2^-(prec + slack_bits).
pub fn evaluate_components_cut(
    family: &SeriesFamily,
    z: &Float,
    u: i32,
    limit: f64,
    slack_bits: u32,
    ctx: &PrecisionContext,
) -> Result<ComponentVector> {
    check_point(z, u, limit)?;
    let (components, tail_bound, terms_used) =
        sum_jet_series(&family.params(), family.order(), family.order(), z, family.poly_degree(), slack_bits, ctx)?;
    Ok(ComponentVector { family: family.clone(), z: ctx.real(z), u, components, tail_bound, terms_used })
}

fn check_point(z: &Float, u: i32, limit: f64) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::Domain("z must be finite".into()));
    }
    if u != 1 && u != -1 {
        return Err(Error::Domain(format!("u must be +1 or -1, got {u}")));
    }
    let limit = limit.min(1.0);
    if z.clone().abs() >= limit {
        return Err(Error::Divergence(format!("series refused at |z| = {}", z.to_string_radix(10, Some(12)))));
    }
    if !z.is_zero() && (z.is_sign_negative() != (u < 0)) {
        return Err(Error::Domain(format!("u = {u} disagrees with the sign of z")));
    }
    Ok(())
}

/// Σ zⁿ Π_p (pI+X)ₙ / (I+X)ₙ^d · (nI+X)^k for k = 0..=degree.
fn sum_jet_series(
    params: &[Rational],
    denom_power: usize,
    order: usize,
    z: &Float,
    degree: usize,
    slack_bits: u32,
    ctx: &PrecisionContext,
) -> Result<(Vec<RealJet>, Float, usize)> {
    let prec = ctx.prec();
    let zero = Jet::constant(ctx.real(0), order);
    let mut sums = vec![zero; degree + 1];
    let mut term = Jet::constant(ctx.real(1), order);
    let abs_z = Float::with_val(prec, z.abs_ref());
    let rho = (Float::with_val(prec, &abs_z + RATIO_MARGIN)) / (1.0 + RATIO_MARGIN);
    let tail_factor = Float::with_val(prec, &rho / Float::with_val(prec, 1 - &rho));
    let cut = ctx.pow2_neg(prec + slack_bits);
    let mut tail_bound = ctx.real(0);
    for n in 0..MAX_TERMS {
        let lin = Jet::linear(ctx.real(n as u32), order);
        let mut weighted = term.clone();
        let mut magnitude = ctx.real(0);
        for (k, sum) in sums.iter_mut().enumerate() {
            if k > 0 {
                weighted = &weighted * &lin;
            }
            *sum = &*sum + &weighted;
            for c in weighted.coeffs() {
                let a = Float::with_val(prec, c.abs_ref());
                if a > magnitude {
                    magnitude = a;
                }
            }
        }
        if z.is_zero() {
            return Ok((sums, tail_bound, 1));
        }
        tail_bound = Float::with_val(prec, &magnitude * &tail_factor);
        if n >= BURN_IN && tail_bound < cut {
            return Ok((sums, tail_bound, n + 1));
        }
        let mut ratio = Jet::constant(Float::with_val(prec, z), order);
        for p in params {
            ratio = &ratio * &Jet::linear(Float::with_val(prec, Rational::from(p + n as u32)), order);
        }
        let step = Jet::linear(ctx.real(n as u32 + 1), order).inv()?;
        for _ in 0..denom_power {
            ratio = &ratio * &step;
        }
        term = &term * &ratio;
    }
    Err(Error::Divergence(format!("{} (term budget exhausted)", z.to_string_radix(10, Some(12)))))
}

/// Components (α₀, α₁) of Σ zⁿ ((s/2)I+X)ₙ(((1−s)/2)I+X)ₙ / (I+X)ₙ².
pub fn clausen_alpha(s: &Rational, z: &Float, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    let u = if z.is_sign_negative() { -1 } else { 1 };
    check_point(z, u, MAX_ABS_Z)?;
    let half = Rational::from((1, 2));
    let params = [Rational::from(s * &half), ((Rational::from(1) - s) * &half)];
    let (sums, _, _) = sum_jet_series(&params, 2, 2, z, 0, TAIL_SLACK_BITS, ctx)?;
    let c = sums[0].coeffs();
    Ok((c[0].clone(), c[1].clone()))
}

/// Y = (uz)^X A as a real jet: yₖ = Σᵢ aₖ₋ᵢ lnⁱ(uz)/i!.
pub fn log_ladder(cv: &ComponentVector, ctx: &PrecisionContext) -> Result<RealJet> {
    let w = Float::with_val(ctx.prec(), &cv.z * cv.u);
    let power = pow_base(&w, 1, cv.components[0].order(), ctx)?;
    power.try_mul(&cv.components[0])
}

/// The same ladder written out term by term, e.g.
/// y₄ = a₀L⁴/24 + a₁L³/6 + a₂L²/2 + a₃L + a₄ with L = ln(uz).
pub fn log_ladder_explicit(cv: &ComponentVector, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    let prec = ctx.prec();
    let w = Float::with_val(prec, &cv.z * cv.u);
    if w <= 0 {
        return Err(Error::Domain("ln(uz) needs uz > 0".into()));
    }
    let l = w.ln();
    let a = cv.a();
    let mut out = Vec::with_capacity(a.len());
    for k in 0..a.len() {
        let mut y = ctx.real(0);
        for i in 0..=k {
            let fact = rug::Integer::from(rug::Integer::factorial(i as u32));
            let lp = Float::with_val(prec, l.clone().pow(i as u32));
            y += Float::with_val(prec, &a[k - i] * &lp) / &fact;
        }
        out.push(y);
    }
    Ok(out)
}
