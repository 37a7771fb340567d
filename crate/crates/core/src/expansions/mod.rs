//! The matrix-form expansions: Σ zⁿ Pₙ(X)·(a + b(nI+X) + …) checked against
//! (uz)^{−X} P_X(0)⁻¹ · target, and signatures (k, j, l) read back from a
//! computed left-hand side.

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::hyperseries::{evaluate_components_cut, FamilyKind, SeriesFamily, MAX_ABS_Z, TAIL_SLACK_BITS};
use crate::jet::{pow_base, Jet, RealJet};
use crate::numerics::{recognize, Constants, PrecisionContext, RecognitionMode, RecognizedConstant};
use crate::solver::p_at_zero;

/// Scalar identity tolerance required before a signature is extracted.
const SCALAR_GATE_EXP: u32 = 60;

/// Left-hand data of one expansion: the family, the point and the
/// polynomial coefficients (a, b, c, d up to the family's degree).
#[derive(Debug, Clone)]
pub struct ExpansionData {
    pub family: SeriesFamily,
    pub z: Float,
    pub u: i32,
    pub coeffs: Vec<Float>,
}

impl ExpansionData {
    pub fn new(family: SeriesFamily, z: Float, u: i32, coeffs: Vec<Float>) -> Result<Self> {
        if coeffs.len() != family.poly_degree() + 1 {
            return Err(Error::Config(format!(
                "{family} takes {} polynomial coefficients, got {}",
                family.poly_degree() + 1,
                coeffs.len()
            )));
        }
        Ok(Self { family, z, u, coeffs })
    }

    /// Data from exact rationals.
    pub fn exact(family: SeriesFamily, z: &Rational, coeffs: &[Rational], ctx: &PrecisionContext) -> Result<Self> {
        let u = if *z < 0 { -1 } else { 1 };
        Self::new(family, ctx.real(z), u, coeffs.iter().map(|c| ctx.real(c)).collect())
    }
}

/// Σ zⁿ Pₙ(X)·Σ_k coeff_k (nI+X)^k as a real jet.
pub fn lhs_jet(data: &ExpansionData, slack_bits: u32, ctx: &PrecisionContext) -> Result<RealJet> {
    let cv = evaluate_components_cut(&data.family, &data.z, data.u, MAX_ABS_Z, slack_bits, ctx)?;
    let order = data.family.order();
    let mut acc = Jet::constant(ctx.real(0), order);
    for (comp, c) in cv.components.iter().zip(&data.coeffs) {
        acc = &acc + &comp.scale(c);
    }
    Ok(acc)
}

/// Target components for the family: ₃F₂ (1/π, 0, −kπ/2); ₅F₄
/// (1/π², 0, −k/2, 0, jπ²/24); ₇F₆ (1/π³, 0, −k/(2π), 0, jπ/24, 0, −lπ³/720).
pub fn target(family: &SeriesFamily, sig: &[Float], ctx: &PrecisionContext) -> Result<RealJet> {
    let prec = ctx.prec();
    let c = Constants::new(ctx);
    let pi = |e: u32| -> Float {
        use rug::ops::Pow;
        Float::with_val(prec, c.pi.clone().pow(e))
    };
    let need = family.order() / 2;
    if sig.len() != need {
        return Err(Error::Config(format!("{family} has {need} signature values, got {}", sig.len())));
    }
    let zero = ctx.real(0);
    let coeffs = match family.kind() {
        FamilyKind::F32 => vec![pi(1).recip(), zero, -Float::with_val(prec, &sig[0] * pi(1)) / 2u32],
        FamilyKind::F54 => vec![
            pi(2).recip(),
            zero.clone(),
            -Float::with_val(prec, &sig[0] / 2u32),
            zero,
            Float::with_val(prec, &sig[1] * pi(2)) / 24u32,
        ],
        FamilyKind::F76 => vec![
            pi(3).recip(),
            zero.clone(),
            -Float::with_val(prec, &sig[0] / pi(1)) / 2u32,
            zero.clone(),
            Float::with_val(prec, &sig[1] * pi(1)) / 24u32,
            zero,
            -Float::with_val(prec, &sig[2] * pi(3)) / 720u32,
        ],
    };
    Ok(Jet::new(coeffs))
}

/// |LHS − RHS| per jet component, with RHS = (uz)^{−X} P_X(0)⁻¹ · target.
pub fn verify_expansion(data: &ExpansionData, sig: &[Rational], ctx: &PrecisionContext) -> Result<Vec<Float>> {
    let sig: Vec<Float> = sig.iter().map(|x| ctx.real(x)).collect();
    verify_expansion_real(data, &sig, ctx)
}

pub fn verify_expansion_real(data: &ExpansionData, sig: &[Float], ctx: &PrecisionContext) -> Result<Vec<Float>> {
    let prec = ctx.prec();
    let order = data.family.order();
    let lhs = lhs_jet(data, TAIL_SLACK_BITS, ctx)?;
    let w = Float::with_val(prec, &data.z * data.u);
    let rhs = pow_base(&w, -1, order, ctx)?.try_mul(&p_at_zero(&data.family, order, ctx)?.inv()?)?.try_mul(&target(
        &data.family,
        sig,
        ctx,
    )?)?;
    Ok(lhs.coeffs().iter().zip(rhs.coeffs()).map(|(l, r)| Float::with_val(prec, l - r).abs()).collect())
}

#[derive(Debug, Clone)]
pub struct SignatureValue {
    pub name: &'static str,
    pub value: Float,
    pub exact: RecognizedConstant,
}

#[derive(Debug, Clone)]
pub struct ExpansionSignature {
    pub family: SeriesFamily,
    pub order: usize,
    /// S = P_X(0)·(uz)^X·LHS.
    pub normalized: RealJet,
    /// k, then j, then l as the order allows.
    pub values: Vec<SignatureValue>,
    /// |S₁|, |S₃|, |S₅| as the order allows.
    pub odd_residuals: Vec<Float>,
    /// |S₀ − 1/π^m|
    pub scalar_residual: Float,
}

impl ExpansionSignature {
    pub fn get(&self, name: &str) -> Option<&SignatureValue> {
        self.values.iter().find(|v| v.name == name)
    }
}

pub fn extract_signature(data: &ExpansionData, denominator_bound: u64, ctx: &PrecisionContext) -> Result<ExpansionSignature> {
    extract_signature_cut(data, denominator_bound, TAIL_SLACK_BITS, ctx)
}

/// As `extract_signature` with a chosen tail-cut slack.
pub fn extract_signature_cut(
    data: &ExpansionData,
    denominator_bound: u64,
    slack_bits: u32,
    ctx: &PrecisionContext,
) -> Result<ExpansionSignature> {
    let prec = ctx.prec();
    let order = data.family.order();
    let c = Constants::new(ctx);
    let pi_pow = |e: u32| -> Float {
        use rug::ops::Pow;
        Float::with_val(prec, c.pi.clone().pow(e))
    };
    let lhs = lhs_jet(data, slack_bits, ctx)?;
    let w = Float::with_val(prec, &data.z * data.u);
    let s = pow_base(&w, 1, order, ctx)?.try_mul(&p_at_zero(&data.family, order, ctx)?)?.try_mul(&lhs)?;
    let sv = s.coeffs();
    let m = data.family.pi_power();
    let scalar_residual = Float::with_val(prec, &sv[0] - pi_pow(m).recip()).abs();
    if scalar_residual > ctx.pow2_neg(SCALAR_GATE_EXP.min(ctx.working_bits() / 2)) {
        return Err(Error::Inconsistent(format!(
            "scalar series misses 1/pi^{m} by {}",
            scalar_residual.to_string_radix(10, Some(6))
        )));
    }
    let raw: Vec<(&'static str, Float)> = match data.family.kind() {
        FamilyKind::F32 => vec![("k", -Float::with_val(prec, &sv[2] * 2u32) / pi_pow(1))],
        FamilyKind::F54 => {
            vec![("k", -Float::with_val(prec, &sv[2] * 2u32)), ("j", Float::with_val(prec, &sv[4] * 24u32) / pi_pow(2))]
        }
        FamilyKind::F76 => vec![
            ("k", -Float::with_val(prec, &sv[2] * 2u32) * pi_pow(1)),
            ("j", Float::with_val(prec, &sv[4] * 24u32) / pi_pow(1)),
            ("l", -Float::with_val(prec, &sv[6] * 720u32) / pi_pow(3)),
        ],
    };
    let values = raw
        .into_iter()
        .map(|(name, value)| {
            let exact = recognize(&value, denominator_bound, RecognitionMode::Rational, ctx);
            SignatureValue { name, value, exact }
        })
        .collect();
    let odd_residuals = (1..order).step_by(2).map(|i| Float::with_val(prec, sv[i].abs_ref())).collect();
    Ok(ExpansionSignature { family: data.family.clone(), order, normalized: s, values, odd_residuals, scalar_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::from((p, q))
    }

    #[test]
    fn half_half_k1_expansion() {
        let ctx = PrecisionContext::default();
        let family = SeriesFamily::f54(r(1, 2), r(1, 2)).unwrap();
        let data = ExpansionData::exact(family, &r(-1, 4), &[r(1, 8), r(1, 1), r(5, 2)], &ctx).unwrap();
        let res = verify_expansion(&data, &[r(1, 1), r(25, 1)], &ctx).unwrap();
        assert_eq!(res.len(), 5);
        assert!(res.iter().all(|x| *x < 1e-50), "{res:?}");
        let sig = extract_signature(&data, 1_000_000, &ctx).unwrap();
        assert_eq!(sig.get("k").unwrap().exact.as_rational(), Some(&r(1, 1)));
        assert_eq!(sig.get("j").unwrap().exact.as_rational(), Some(&r(25, 1)));
    }

    #[test]
    fn seventh_order_signature() {
        let ctx = PrecisionContext::default();
        let data = ExpansionData::exact(
            SeriesFamily::f76(),
            &r(1, 64),
            &[r(1, 32), r(14, 32), r(76, 32), r(168, 32)],
            &ctx,
        )
        .unwrap();
        let sig = extract_signature(&data, 1_000_000, &ctx).unwrap();
        for (name, want) in [("k", 2i32), ("j", 32), ("l", 4112)] {
            let v = &sig.get(name).unwrap().value;
            assert!(Float::with_val(v.prec(), v - want).abs() < 1e-20, "{name} = {v}");
        }
        assert_eq!(sig.odd_residuals.len(), 3);
    }

    #[test]
    fn wrong_data_is_refused() {
        let ctx = PrecisionContext::default();
        let family = SeriesFamily::f32(r(1, 2)).unwrap();
        let data = ExpansionData::exact(family, &r(1, 4), &[r(1, 4), r(1, 1)], &ctx).unwrap();
        assert!(matches!(extract_signature(&data, 1000, &ctx), Err(Error::Inconsistent(_))));
    }
}
