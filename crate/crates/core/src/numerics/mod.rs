//! Arbitrary-precision scalars, constants, polygamma values and recognition.

mod constants;
mod context;
mod polygamma;
mod recognize;
mod text;

pub use constants::{euler_gamma, fundamental_constants, pi, Constants};
pub use context::{PrecisionContext, DEFAULT_GUARD_BITS, DEFAULT_WORKING_BITS, MIN_GUARD_BITS, MIN_WORKING_BITS};
pub use polygamma::{bernoulli_even, digamma, hurwitz_zeta, polygamma, MAX_POLYGAMMA_ORDER};
pub use recognize::{recognize, rational_candidate, ExactKind, RecognitionMode, RecognizedConstant, MAX_RADICAND};
pub use text::{format_decimal, format_fixed, parse_rational, parse_sign};

use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Exact rational scalar (always in lowest terms with positive denominator).
pub type BigRational = Rational;
/// Real scalar carried at a context's working plus guard precision.
pub type HPReal = Float;

pub fn make_context(bits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(bits)
}

/// cot(πs); exactly 0 at half-integers.
pub fn cot_pi(s: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    if *s.denom() == 1 {
        return Err(Error::Pole(format!("cot(pi*s) has a pole at s = {s}")));
    }
    let frac = s - Rational::from(s.floor_ref());
    if frac == Rational::from((1, 2)) {
        return Ok(ctx.real(0));
    }
    Ok(Float::with_val(ctx.prec(), pi(ctx) * &frac).cot())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cot_values() {
        let ctx = PrecisionContext::default();
        assert!(cot_pi(&Rational::from((1, 2)), &ctx).unwrap().is_zero());
        assert!(cot_pi(&Rational::from((-3, 2)), &ctx).unwrap().is_zero());
        let one = cot_pi(&Rational::from((1, 4)), &ctx).unwrap();
        assert!(Float::with_val(ctx.prec(), &one - 1u32).abs() < 1e-70);
        let third = cot_pi(&Rational::from((1, 3)), &ctx).unwrap();
        let expect = Float::with_val(ctx.prec(), 3).sqrt().recip();
        assert!(Float::with_val(ctx.prec(), &third - &expect).abs() < 1e-70);
        assert!(matches!(cot_pi(&Rational::from(2), &ctx), Err(Error::Pole(_))));
    }

    #[test]
    fn make_context_bounds() {
        assert_eq!(make_context(256).unwrap().working_bits(), 256);
        assert!(make_context(63).is_err());
    }
}
