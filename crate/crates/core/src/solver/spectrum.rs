use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::hyperseries::{FamilyKind, SeriesFamily};
use crate::jet::{pochhammer_frac, Jet, RealJet};
use crate::numerics::{cot_pi, polygamma, Constants, PrecisionContext};

/// Right-hand side of the system at ln(uz) = 0, i.e. m = P_X(0)⁻¹ · target,
/// with the derived ν-values and τ².
#[derive(Debug, Clone)]
pub struct MSpectrum {
    pub family: SeriesFamily,
    pub k: Rational,
    pub j: Option<Rational>,
    /// m₀..m_{n−1}; for ₅F₄ with unknown j these are taken at j = 0.
    pub m: Vec<Float>,
    /// ∂m/∂j (all zero outside ₅F₄).
    pub m_per_j: Vec<Float>,
    pub nu0: Float,
    pub nu1: Option<Float>,
    pub nu2: Option<Float>,
    /// τ² at the stated j (or j = 0 when unknown).
    pub tau2: Float,
    /// ∂τ²/∂j, which is 1/12 for ₅F₄.
    pub tau2_per_j: Float,
    pub closed: ClosedForms,
}

/// The same quantities from the printed closed forms. ν₀ and ν₂ are
/// compared only up to sign.
#[derive(Debug, Clone)]
pub struct ClosedForms {
    pub nu0: Float,
    pub nu1: Option<Float>,
    pub nu2: Option<Float>,
    pub tau2: Float,
    /// τ² as an exact rational when every cot² term is rational.
    pub tau2_exact: Option<Rational>,
}

impl MSpectrum {
    /// m at a given j (ignored outside ₅F₄).
    pub fn m_at(&self, j: &Float) -> Vec<Float> {
        self.m.iter().zip(&self.m_per_j).map(|(m, d)| Float::with_val(m.prec(), m + Float::with_val(m.prec(), d * j))).collect()
    }

    pub fn tau2_at(&self, j: &Float) -> Float {
        Float::with_val(self.tau2.prec(), &self.tau2 + Float::with_val(self.tau2.prec(), &self.tau2_per_j * j))
    }

    /// j solving τ²(j) = tau2.
    pub fn j_for_tau2(&self, tau2: &Float) -> Float {
        let prec = self.tau2.prec();
        Float::with_val(prec, tau2 - &self.tau2) / &self.tau2_per_j
    }
}

/// P_X(0) = Π_p (p)_X / (1)_X^d at the family order.
pub fn p_at_zero(family: &SeriesFamily, order: usize, ctx: &PrecisionContext) -> Result<RealJet> {
    let mut num = Jet::constant(ctx.real(1), order);
    for p in family.params() {
        num = &num * &pochhammer_frac(&p, order, ctx)?;
    }
    let one = pochhammer_frac(&Rational::from(1), order, ctx)?;
    let mut den = Jet::constant(ctx.real(1), order);
    for _ in 0..family.order() {
        den = &den * &one;
    }
    num.try_div(&den)
}

/// Target jet: 1/π − (kπ/2)X² for ₃F₂; 1/π² − (k/2)X² + (jπ²/24)X⁴ for ₅F₄.
pub fn target_jet(family: &SeriesFamily, k: &Rational, j: &Float, c: &Constants, ctx: &PrecisionContext) -> Result<RealJet> {
    let prec = ctx.prec();
    let pi = &c.pi;
    let pi2 = Float::with_val(prec, pi.square_ref());
    let kf = Float::with_val(prec, k);
    let coeffs = match family.kind() {
        FamilyKind::F32 => vec![
            Float::with_val(prec, pi.recip_ref()),
            ctx.real(0),
            -(Float::with_val(prec, &kf * pi) / 2u32),
        ],
        FamilyKind::F54 => vec![
            Float::with_val(prec, pi2.recip_ref()),
            ctx.real(0),
            -(kf / 2u32),
            ctx.real(0),
            Float::with_val(prec, j * &pi2) / 24u32,
        ],
        FamilyKind::F76 => return Err(Error::Unsupported("the 7F6 case has no solver".into())),
    };
    Ok(Jet::new(coeffs))
}

pub fn m_spectrum(family: &SeriesFamily, k: &Rational, j: Option<&Rational>, ctx: &PrecisionContext) -> Result<MSpectrum> {
    let prec = ctx.prec();
    let c = Constants::new(ctx);
    let order = family.order();
    let p_inv = p_at_zero(family, order, ctx)?.inv()?;
    let j0 = j.map_or_else(|| ctx.real(0), |j| Float::with_val(prec, j));
    let m = (&p_inv * &target_jet(family, k, &j0, &c, ctx)?).into_coeffs();
    let unit = (&p_inv * &target_jet(family, k, &ctx.real(1), &c, ctx)?).into_coeffs();
    let at_zero = (&p_inv * &target_jet(family, k, &ctx.real(0), &c, ctx)?).into_coeffs();
    let m_per_j: Vec<Float> = unit.iter().zip(&at_zero).map(|(a, b)| Float::with_val(prec, a - b)).collect();

    let f = |x: &Float, y: &Float| Float::with_val(prec, x * y);
    let nu0 = Float::with_val(prec, &m[1] / &m[0]);
    let (nu1, nu2, tau2, tau2_unit) = match family.kind() {
        FamilyKind::F32 => {
            let tau2 = |m: &[Float]| f(&m[1], &m[1]) - f(&m[0], &m[2]) * 2u32;
            (None, None, tau2(&m), tau2(&unit))
        }
        _ => {
            let r1 = Float::with_val(prec, &m[1] / &m[0]);
            let r2 = Float::with_val(prec, &m[2] / &m[0]);
            let r3 = Float::with_val(prec, &m[3] / &m[0]);
            let nu1 = f(&r1, &r1) / 2u32 - &r2;
            let nu2 = Float::with_val(prec, r1.clone().square() * &r1) / 3u32 - f(&r1, &r2) + &r3;
            let tau2 = |m: &[Float]| f(&m[0], &m[4]) * 2u32 - f(&m[1], &m[3]) * 2u32 + f(&m[2], &m[2]);
            (Some(nu1), Some(nu2), tau2(&m), tau2(&unit))
        }
    };
    let tau2_per_j = match family.kind() {
        FamilyKind::F54 => {
            let t2_zero = {
                let m = &at_zero;
                f(&m[0], &m[4]) * 2u32 - f(&m[1], &m[3]) * 2u32 + f(&m[2], &m[2])
            };
            Float::with_val(prec, &tau2_unit - &t2_zero)
        }
        _ => ctx.real(0),
    };
    let closed = closed_forms(family, k, j, &c, ctx)?;
    Ok(MSpectrum { family: family.clone(), k: k.clone(), j: j.cloned(), m, m_per_j, nu0, nu1, nu2, tau2, tau2_per_j, closed })
}

/// cot²(πs) exactly for s with denominator 2, 3, 4 or 6.
pub fn cot_sq_exact(s: &Rational) -> Option<Rational> {
    let d = s.denom().to_u32()?;
    let value = match d {
        2 => Rational::new(),
        3 => Rational::from((1, 3)),
        4 => Rational::from(1),
        6 => Rational::from(3),
        _ => return None,
    };
    Some(value)
}

fn closed_forms(family: &SeriesFamily, k: &Rational, j: Option<&Rational>, c: &Constants, ctx: &PrecisionContext) -> Result<ClosedForms> {
    let prec = ctx.prec();
    let one = Rational::from(1);
    let psi = |x: &Rational, m: u32| polygamma(m, x, ctx);
    let cot2 = |x: &Rational| -> Result<Float> { Ok(Float::with_val(prec, cot_pi(x, ctx)?.square_ref())) };
    let gamma2 = Float::with_val(prec, &c.euler * 2u32);
    // (ψ(x) + ψ(1−x) + 2γ − ln 2)
    let pair = |x: &Rational| -> Result<Float> {
        let y = Rational::from(&one - x);
        Ok(psi(x, 0)? + psi(&y, 0)? + &gamma2 - &c.ln2)
    };
    let kf = Float::with_val(prec, k);
    match family.kind() {
        FamilyKind::F32 => {
            let s = family.s();
            let tau2 = Float::with_val(prec, &kf + 1u32) + cot2(s)?;
            // (γ+ψ(s)−ln2) + (γ+ψ(1−s)−ln2) = pair(s) − ln 2
            let nu0 = pair(s)? - &c.ln2;
            let tau2_exact = cot_sq_exact(s).map(|c2| Rational::from(k + 1u32) + c2);
            Ok(ClosedForms { nu0, nu1: None, nu2: None, tau2, tau2_exact })
        }
        FamilyKind::F54 => {
            let (s, t) = (family.s(), family.t());
            let (cs, ct) = (cot2(s)?, cot2(t)?);
            let pi2 = Float::with_val(prec, c.pi.square_ref());
            let nu0 = pair(s)? + pair(t)?;
            let five_thirds = Float::with_val(prec, 5) / 3u32;
            let nu1 = Float::with_val(prec, &pi2 / 2u32) * (Float::with_val(prec, &kf + &five_thirds) + &cs + &ct);
            let mut psi2 = ctx.real(0);
            for x in [s.clone(), Rational::from(&one - s), t.clone(), Rational::from(&one - t)] {
                psi2 += psi(&x, 2)?;
            }
            let nu2 = (Float::with_val(prec, &c.zeta3 * 4u32) - psi2) / 6u32;
            let jf = j.map_or_else(|| ctx.real(0), |j| Float::with_val(prec, j));
            let k2 = Float::with_val(prec, kf.square_ref()) / 4u32;
            let tau2 = jf / 12u32 + k2 + Float::with_val(prec, &kf * &five_thirds) + 1u32
                + Float::with_val(prec, &cs * &ct)
                + Float::with_val(prec, &kf + 1u32) * Float::with_val(prec, &cs + &ct);
            let tau2_exact = match (cot_sq_exact(s), cot_sq_exact(t)) {
                (Some(a), Some(b)) => {
                    let jr = j.cloned().unwrap_or_default();
                    let k2 = Rational::from(k.square_ref()) / 4u32;
                    Some(
                        jr / 12u32 + k2 + Rational::from(k * 5u32) / 3u32 + 1u32
                            + Rational::from(&a * &b)
                            + Rational::from(k + 1u32) * Rational::from(&a + &b),
                    )
                }
                _ => None,
            };
            Ok(ClosedForms { nu0, nu1: Some(nu1), nu2: Some(nu2), tau2, tau2_exact })
        }
        FamilyKind::F76 => Err(Error::Unsupported("the 7F6 case has no closed forms".into())),
    }
}
