use rug::float::Constant;
use rug::Float;

use super::PrecisionContext;

/// π, Euler's γ, ln 2 and ζ(3) at the context precision.
#[derive(Debug, Clone)]
pub struct Constants {
    pub pi: Float,
    pub euler: Float,
    pub ln2: Float,
    pub zeta3: Float,
}

impl Constants {
    pub fn new(ctx: &PrecisionContext) -> Self {
        let prec = ctx.prec();
        Self {
            pi: pi(ctx),
            euler: Float::with_val(prec, Constant::Euler),
            ln2: Float::with_val(prec, Constant::Log2),
            zeta3: Float::with_val(prec, 3).zeta(),
        }
    }
}

pub fn fundamental_constants(ctx: &PrecisionContext) -> Constants {
    Constants::new(ctx)
}

pub fn pi(ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.prec(), Constant::Pi)
}

pub fn euler_gamma(ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.prec(), Constant::Euler)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn digits(x: &Float, n: usize) -> String {
        x.to_string_radix(10, Some(n))
    }

    #[test]
    fn leading_digits() {
        let c = fundamental_constants(&PrecisionContext::default());
        assert!(digits(&c.pi, 22).starts_with("3.14159265358979323846"));
        assert!(digits(&c.euler, 22).starts_with("5.77215664901532860606"));
        assert!(digits(&c.zeta3, 22).starts_with("1.2020569031595942854"));
        assert!(digits(&c.ln2, 22).starts_with("6.93147180559945309417"));
    }

    /// ζ(3) by direct summation of n^-3 to N with an Euler–Maclaurin tail,
    /// carried out at 128 bits.
    #[test]
    fn zeta3_against_direct_summation() {
        let prec = 128;
        let n_max = 2000u32;
        let mut sum = Float::with_val(prec, 0);
        for n in 1..n_max {
            let n = Float::with_val(prec, n);
            sum += Float::with_val(prec, n.pow(3)).recip();
        }
        let big_n = Float::with_val(prec, n_max);
        // sum_{n>=N} n^-3 = N^-2/2 + N^-3/2 + N^-4/4 - N^-6/12 + ...
        let inv = Float::with_val(prec, big_n.recip_ref());
        let tail = Float::with_val(prec, inv.clone().pow(2)) / 2u32
            + Float::with_val(prec, inv.clone().pow(3)) / 2u32
            + Float::with_val(prec, inv.clone().pow(4)) / 4u32
            - Float::with_val(prec, inv.pow(6)) / 12u32;
        let oracle = sum + tail;
        let c = fundamental_constants(&PrecisionContext::default());
        let diff = Float::with_val(prec, &c.zeta3 - &oracle).abs();
        assert!(diff < 1e-25, "diff = {diff}");
    }
}
