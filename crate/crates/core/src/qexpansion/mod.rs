//! q-parametrization: H-functions, the mirror map z(q), and T, U, K.
//!
//! With uq̃ = uz·e^H (H = H₁ for ₃F₂, H₂ for ₅F₄) the true variable is
//! q = e^{−ν₀} q̃, where ν₀ = m₁/m₀ at ln(uz) = 0 depends only on the family.
//! Everything here is exact over the rationals; only e^{ν₀} is identified
//! numerically, and when it is not rational the q-objects stay in q̃.

mod ops;

use rug::{Float, Integer, Rational};

pub use ops::{
    add, compose, constant, div, exp, from_ints, invert, mul, pow, q_derivative, rescale_variable, revert, scale, sub,
    variable, zeros, RationalSeries,
};

use crate::error::{Error, Result};
use crate::hyperseries::{component_series, FamilyKind, SeriesFamily, ZPowerSeries};
use crate::jet::{pochhammer_frac, Jet};
use crate::numerics::{rational_candidate, PrecisionContext};

/// Largest denominator accepted when identifying e^{ν₀}.
const SCALE_DENOMINATOR_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum Scale {
    Rational(Rational),
    Numeric(Float),
}

impl Scale {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scale::Rational(r) => Some(r),
            Scale::Numeric(_) => None,
        }
    }

    pub fn to_float(&self, prec: u32) -> Float {
        match self {
            Scale::Rational(r) => Float::with_val(prec, r),
            Scale::Numeric(x) => Float::with_val(prec, x),
        }
    }
}

/// H-series in z. ₃F₂: H₁ = a₁/a₀ and H₀ = M₀/M₂. ₅F₄: H₂ = u₂/u₁,
/// H₁ = u₃/u₁, H₀ = u₄/u₁ and J = (a₁b₂ − a₂b₁)/u₁ with uⱼ = a₀bⱼ − aⱼb₀.
#[derive(Debug, Clone, PartialEq)]
pub struct HSeries {
    pub family: SeriesFamily,
    pub h0: RationalSeries,
    pub h1: RationalSeries,
    pub h2: Option<RationalSeries>,
    pub j: Option<RationalSeries>,
}

impl HSeries {
    /// The H entering the q-map.
    pub fn lead(&self) -> &RationalSeries {
        self.h2.as_ref().unwrap_or(&self.h1)
    }
}

pub fn h_functions(family: &SeriesFamily, truncation: usize) -> Result<HSeries> {
    if truncation < 3 {
        return Err(Error::Config("H-functions need truncation N >= 3".into()));
    }
    let cs = component_series(family, truncation)?;
    let a = |i| cs.component(0, i);
    let b = |i| cs.component(1, i);
    // x_i y_j − x_j y_i
    let minor = |i: usize, j: usize| -> Result<RationalSeries> { sub(&mul(&a(i), &b(j))?, &mul(&a(j), &b(i))?) };
    match family.kind() {
        FamilyKind::F32 => {
            let h1 = div(&a(1), &a(0))?;
            let h0 = div(&minor(1, 2)?, &minor(0, 1)?)?;
            Ok(HSeries { family: family.clone(), h0, h1, h2: None, j: None })
        }
        FamilyKind::F54 => {
            let u1 = minor(0, 1)?;
            let h2 = div(&minor(0, 2)?, &u1)?;
            let h1 = div(&minor(0, 3)?, &u1)?;
            let h0 = div(&minor(0, 4)?, &u1)?;
            let j = div(&minor(1, 2)?, &u1)?;
            Ok(HSeries { family: family.clone(), h0, h1, h2: Some(h2), j: Some(j) })
        }
        FamilyKind::F76 => Err(Error::Unsupported("the 7F6 case has no H-functions".into())),
    }
}

/// ν₀ = m₁/m₀ from P_X(0)⁻¹ = (1)_X^d / Π_p (p)_X.
pub fn nu0(family: &SeriesFamily, ctx: &PrecisionContext) -> Result<Float> {
    let order = 2;
    let mut p0 = Jet::constant(ctx.real(1), order);
    for p in family.params() {
        p0 = &p0 * &pochhammer_frac(&p, order, ctx)?;
    }
    let one = pochhammer_frac(&Rational::from(1), order, ctx)?;
    let mut den = Jet::constant(ctx.real(1), order);
    for _ in 0..family.order() {
        den = &den * &one;
    }
    let inv = den.try_div(&p0)?;
    Ok(Float::with_val(ctx.prec(), inv.coeff(1) / inv.coeff(0)))
}

/// e^{ν₀}, as an exact rational when one matches within the context tolerance.
pub fn exp_nu0(family: &SeriesFamily, ctx: &PrecisionContext) -> Result<Scale> {
    let value = nu0(family, ctx)?.exp();
    let bound = Integer::from(SCALE_DENOMINATOR_BOUND);
    let tol = Float::with_val(ctx.prec(), ctx.recognition_tolerance() * Float::with_val(ctx.prec(), value.abs_ref()));
    Ok(match rational_candidate(&value, &bound, &tol) {
        Some(r) => Scale::Rational(r),
        None => Scale::Numeric(value),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MirrorMap {
    pub family: SeriesFamily,
    pub scale: Scale,
    /// e^H as a series in z.
    pub exp_h: RationalSeries,
    /// q̃ = z e^H.
    pub q_tilde_of_z: RationalSeries,
    /// z as a series in q̃.
    pub z_of_q_tilde: RationalSeries,
    /// z as a series in the true q, when the scale is rational.
    pub z_of_q: Option<RationalSeries>,
}

impl MirrorMap {
    /// z(q) when available, else z(q̃).
    pub fn z_series(&self) -> &RationalSeries {
        self.z_of_q.as_ref().unwrap_or(&self.z_of_q_tilde)
    }
}

pub fn mirror_map(family: &SeriesFamily, truncation: usize, ctx: &PrecisionContext) -> Result<MirrorMap> {
    if truncation < 2 {
        return Err(Error::Config("mirror map needs truncation N >= 2".into()));
    }
    let h = h_functions(family, truncation.max(3))?;
    let exp_h = exp(h.lead())?.truncate(truncation)?;
    let q_tilde_of_z = mul(&variable(truncation), &exp_h)?;
    let z_of_q_tilde = revert(&q_tilde_of_z)?;
    let scale = exp_nu0(family, ctx)?;
    let z_of_q = scale.as_rational().map(|c| rescale_variable(&z_of_q_tilde, c));
    Ok(MirrorMap { family: family.clone(), scale, exp_h, q_tilde_of_z, z_of_q_tilde, z_of_q })
}

/// T = H₂³/6 − H₀, U = q dT/dq, K = −1 + (q d/dq)²U, all composed with z(q).
/// `u_direct` is (H₁ − J)∘z(q), computed independently of T.
#[derive(Debug, Clone, PartialEq)]
pub struct TukSeries {
    pub mirror: MirrorMap,
    pub t: RationalSeries,
    pub u: RationalSeries,
    pub u_direct: RationalSeries,
    pub k: RationalSeries,
}

pub fn t_u_k_series(family: &SeriesFamily, truncation: usize, ctx: &PrecisionContext) -> Result<TukSeries> {
    if family.kind() != FamilyKind::F54 {
        return Err(Error::Unsupported(format!("T, U, K are defined for 5F4 families, not {family}")));
    }
    let n = truncation.max(3);
    let h = h_functions(family, n)?;
    let mirror = mirror_map(family, n, ctx)?;
    let h2 = h.h2.as_ref().expect("5F4 has H2");
    let t_z = sub(&scale(&pow(h2, 3)?, &Rational::from((1, 6))), &h.h0)?;
    let u_z = sub(&h.h1, h.j.as_ref().expect("5F4 has J"))?;
    let z_q = mirror.z_series().clone();
    let t = compose(&t_z, &z_q)?.truncate(truncation)?;
    let u_direct = compose(&u_z, &z_q)?.truncate(truncation)?;
    let u = q_derivative(&t);
    let k = add(&constant(Rational::from(-1), truncation), &q_derivative(&q_derivative(&u)))?;
    let mirror = MirrorMap {
        exp_h: mirror.exp_h.truncate(truncation)?,
        q_tilde_of_z: mirror.q_tilde_of_z.truncate(truncation)?,
        z_of_q_tilde: mirror.z_of_q_tilde.truncate(truncation)?,
        z_of_q: mirror.z_of_q.map(|s| s.truncate(truncation)).transpose()?,
        ..mirror
    };
    Ok(TukSeries { mirror, t, u, u_direct, k })
}

/// Everything above for one family at one truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct QExpansion {
    pub h: HSeries,
    pub mirror: MirrorMap,
    pub tuk: Option<TukSeries>,
}

pub fn q_expansion(family: &SeriesFamily, truncation: usize, ctx: &PrecisionContext) -> Result<QExpansion> {
    let h = h_functions(family, truncation.max(3))?;
    let mirror = mirror_map(family, truncation, ctx)?;
    let tuk = match family.kind() {
        FamilyKind::F54 => Some(t_u_k_series(family, truncation, ctx)?),
        _ => None,
    };
    Ok(QExpansion { h, mirror, tuk })
}

/// Evaluates Σ cₙ xⁿ at a real point.
pub fn eval_series(f: &ZPowerSeries<Rational>, x: &Float) -> Float {
    let prec = x.prec();
    let mut acc = Float::new(prec);
    for c in f.coeffs().iter().rev() {
        acc = Float::with_val(prec, &acc * x) + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::from((p, q))
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| Rational::from(c)).collect()
    }

    fn half_half() -> SeriesFamily {
        SeriesFamily::f54(r(1, 2), r(1, 2)).unwrap()
    }

    #[test]
    fn exp_h2_in_powers_of_z_over_1024() {
        let h = h_functions(&half_half(), 5).unwrap();
        let e = exp(h.h2.as_ref().unwrap()).unwrap();
        let normalized = rescale_variable(&e, &Rational::from(1024));
        assert_eq!(
            normalized.coeffs(),
            &ints(&[1, 320, 170400, 110694400, 79952188880, 61683799041024])[..]
        );
    }

    #[test]
    fn quadratic_h_relations() {
        for family in SeriesFamily::all_f54() {
            let h = h_functions(&family, 8).unwrap();
            let h2 = h.h2.as_ref().unwrap();
            assert_eq!(scale(&h.h1, &Rational::from(2)), mul(h2, h2).unwrap(), "{family}");
        }
        for family in SeriesFamily::all_f32() {
            let h = h_functions(&family, 8).unwrap();
            assert_eq!(*h.h1.coeff(0), 0);
            assert_eq!(scale(&h.h0, &Rational::from(2)), mul(&h.h1, &h.h1).unwrap(), "{family}");
        }
    }

    #[test]
    fn scales_are_rational() {
        let ctx = PrecisionContext::default();
        let expect = [(r(1, 2), 64), (r(1, 3), 108), (r(1, 4), 256), (r(1, 6), 1728)];
        for (s, e) in expect {
            let family = SeriesFamily::f32(s).unwrap();
            assert_eq!(exp_nu0(&family, &ctx).unwrap(), Scale::Rational(Rational::from(e)));
        }
        assert_eq!(exp_nu0(&half_half(), &ctx).unwrap(), Scale::Rational(Rational::from(1024)));
        for family in SeriesFamily::all_f54() {
            assert!(exp_nu0(&family, &ctx).unwrap().as_rational().is_some(), "{family}");
        }
    }

    #[test]
    fn mirror_map_half_half() {
        let ctx = PrecisionContext::default();
        let m = mirror_map(&half_half(), 5, &ctx).unwrap();
        let expect: Vec<Rational> =
            [0i64, 1, -320, 34400, -1894400, 62019120].iter().map(|&c| Rational::from(c * 1024)).collect();
        assert_eq!(m.z_of_q.as_ref().unwrap().coeffs(), &expect[..]);
        assert_eq!(*m.z_series().coeff(0), 0);
    }

    #[test]
    fn t_series_and_proposition() {
        let ctx = PrecisionContext::default();
        let tuk = t_u_k_series(&half_half(), 8, &ctx).unwrap();
        let expect = [r(1, 1), r(347, 8), r(91072, 27), r(21827771, 64), r(5002311376, 125)];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(*tuk.t.coeff(n + 1), Rational::from(e * 160u32), "q^{}", n + 1);
        }
        assert_eq!(tuk.u, tuk.u_direct);
        assert_eq!(*tuk.u.coeff(1), 160);
        assert_eq!(*tuk.k.coeff(0), -1);
        assert!(t_u_k_series(&SeriesFamily::f32(r(1, 2)).unwrap(), 5, &ctx).is_err());
    }

    #[test]
    fn reversion_roundtrip_per_family() {
        let ctx = PrecisionContext::default();
        for family in SeriesFamily::all_f32().into_iter().chain(SeriesFamily::all_f54()) {
            let m = mirror_map(&family, 7, &ctx).unwrap();
            assert_eq!(compose(&m.z_of_q_tilde, &m.q_tilde_of_z).unwrap(), variable(7), "{family}");
        }
    }
}
