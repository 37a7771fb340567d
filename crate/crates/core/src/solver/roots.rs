use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::PrecisionContext;

/// A scalar equation in t with its derivative.
pub(crate) trait Equation {
    fn value(&self, t: &Float, ctx: &PrecisionContext) -> Result<Float>;
    fn value_and_slope(&self, t: &Float, ctx: &PrecisionContext) -> Result<(Float, Float)>;
}

/// Brackets [lo, hi] in t where the value changes sign, from a uniform scan.
pub(crate) fn scan_brackets<E: Equation>(
    eq: &E,
    lo: f64,
    hi: f64,
    points: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<(Float, Float)>> {
    let prec = ctx.prec();
    let mut out = Vec::new();
    let mut prev: Option<(Float, bool)> = None;
    for i in 0..=points {
        let t = Float::with_val(prec, lo + (hi - lo) * i as f64 / points as f64);
        let v = eq.value(&t, ctx)?;
        let sign = v.is_sign_negative();
        if let Some((pt, ps)) = prev.take() {
            if ps != sign {
                out.push((pt, t.clone()));
            }
        }
        prev = Some((t, sign));
    }
    Ok(out)
}

/// Bisection until the bracket is narrower than 2^-(working bits + 8).
pub(crate) fn bisect<E: Equation>(eq: &E, lo: &Float, hi: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.prec();
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let lo_neg = eq.value(&lo, ctx)?.is_sign_negative();
    let width = ctx.pow2_neg(ctx.working_bits() + 8);
    for _ in 0..(4 * prec) {
        let mid = Float::with_val(prec, &lo + &hi) / 2u32;
        let diff = Float::with_val(prec, &hi - &lo);
        if diff < width {
            return Ok(mid);
        }
        if eq.value(&mid, ctx)?.is_sign_negative() == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Float::with_val(prec, &lo + &hi) / 2u32)
}

/// Newton iteration, optionally confined to [lo, hi].
pub(crate) fn newton<E: Equation>(
    eq: &E,
    start: &Float,
    bounds: Option<(&Float, &Float)>,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let prec = ctx.prec();
    let tol = ctx.pow2_neg(ctx.working_bits() + 4);
    let mut t = start.clone();
    for _ in 0..200 {
        let (v, d) = eq.value_and_slope(&t, ctx)?;
        if d.is_zero() || !d.is_finite() {
            return Err(Error::Divergence("Newton step has zero slope".into()));
        }
        let step = Float::with_val(prec, &v / &d);
        t -= &step;
        if let Some((lo, hi)) = bounds {
            if t < *lo || t > *hi {
                return Err(Error::Divergence("Newton left its bracket".into()));
            }
        }
        if step.abs() < tol {
            return Ok(t);
        }
    }
    Err(Error::Divergence("Newton did not converge".into()))
}
