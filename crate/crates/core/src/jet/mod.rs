//! Truncated polynomials c₀ + c₁X + … + c_{n−1}X^{n−1} in a nilpotent X of
//! order n.
//!
//! A function of an upper-shift nilpotent matrix is determined by its first
//! row, so a jet stores exactly that row. Every binary operation checks that
//! both operands share one order.

mod scalar;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Float, Rational};

pub use scalar::Scalar;

use crate::error::{Error, Result};
use crate::numerics::{format_decimal, polygamma, PrecisionContext};

/// Polygamma orders are capped at 6, so (s)_X is available up to order 7.
pub const MAX_FRAC_POCHHAMMER_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet<S: Scalar> {
    coeffs: Vec<S>,
}

pub type RationalJet = Jet<Rational>;
pub type RealJet = Jet<Float>;

impl<S: Scalar> Jet<S> {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a jet has order at least 1");
        Self { coeffs }
    }

    /// c·I at the given order, with c's precision.
    pub fn constant(c: S, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order.max(1)];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// c·I + X.
    pub fn linear(c: S, order: usize) -> Self {
        let mut jet = Self::constant(c, order);
        if order > 1 {
            jet.coeffs[1] = jet.coeffs[0].one_like();
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &S {
        &self.coeffs[i]
    }

    pub fn identity_like(&self) -> Self {
        Self::constant(self.coeffs[0].one_like(), self.order())
    }

    pub fn zero_like(&self) -> Self {
        Self::constant(self.coeffs[0].zero_like(), self.order())
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.order() == rhs.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch { lhs: self.order(), rhs: rhs.order() })
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    /// Cauchy product truncated at X^order.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let n = self.order();
        let coeffs = (0..n)
            .map(|k| {
                (0..=k).fold(self.coeffs[0].zero_like(), |acc, i| acc.add(&self.coeffs[i].mul(&rhs.coeffs[k - i])))
            })
            .collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(Scalar::neg).collect() }
    }

    /// b₀ = 1/a₀, b_k = −(1/a₀) Σ_{j=1..k} a_j b_{k−j}.
    pub fn inv(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let mut out: Vec<S> = Vec::with_capacity(n);
        out.push(a0.one_like().div(a0).ok_or(Error::NotInvertible)?);
        for k in 1..n {
            let acc = (1..=k).fold(a0.zero_like(), |acc, j| acc.add(&self.coeffs[j].mul(&out[k - j])));
            out.push(acc.div(a0).ok_or(Error::NotInvertible)?.neg());
        }
        Ok(Self { coeffs: out })
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(&rhs.inv()?)
    }

    /// From f′ = g′f: k f_k = Σ_{j=1..k} j g_j f_{k−j}.
    pub fn exp(&self) -> Result<Self> {
        let g = &self.coeffs;
        let head = g[0]
            .exp()
            .ok_or_else(|| Error::Domain("exponential of a rational jet needs a zero head".into()))?;
        let mut f: Vec<S> = Vec::with_capacity(g.len());
        f.push(head);
        for k in 1..g.len() {
            let acc = (1..=k).fold(g[0].zero_like(), |acc, j| acc.add(&g[j].mul_i64(j as i64).mul(&f[k - j])));
            f.push(acc.div_i64(k as i64));
        }
        Ok(Self { coeffs: f })
    }

    /// From f g′ = f′: k f₀ g_k = k f_k − Σ_{j=1..k−1} j g_j f_{k−j}.
    pub fn log(&self) -> Result<Self> {
        let f = &self.coeffs;
        let head = f[0].ln().ok_or_else(|| Error::Domain(format!("logarithm of jet with head {:?}", f[0])))?;
        let mut g: Vec<S> = Vec::with_capacity(f.len());
        g.push(head);
        for k in 1..f.len() {
            let mut acc = f[k].mul_i64(k as i64);
            for j in 1..k {
                acc = acc.sub(&g[j].mul_i64(j as i64).mul(&f[k - j]));
            }
            let denom = f[0].mul_i64(k as i64);
            g.push(acc.div(&denom).ok_or(Error::NotInvertible)?);
        }
        Ok(Self { coeffs: g })
    }

    /// (A)_n = Π_{j<n} (A + jI).
    pub fn pochhammer_int(&self, n: u32) -> Self {
        let mut acc = self.identity_like();
        let mut shifted = self.clone();
        for _ in 0..n {
            acc = &acc * &shifted;
            shifted.coeffs[0] = shifted.coeffs[0].add(&shifted.coeffs[0].one_like());
        }
        acc
    }

    /// Lower order by dropping the highest coefficients.
    pub fn truncate(&self, order: usize) -> Self {
        Self { coeffs: self.coeffs[..order.clamp(1, self.order())].to_vec() }
    }
}

impl Jet<Rational> {
    pub fn one(order: usize) -> Self {
        Self::constant(Rational::from(1), order)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn to_real(&self, prec: u32) -> RealJet {
        Jet::new(self.coeffs.iter().map(|c| Float::with_val(prec, c)).collect())
    }
}

impl Jet<Float> {
    /// Decimal text form with `digits` significant digits per coefficient.
    pub fn to_text(&self, digits: usize) -> String {
        render(self.coeffs.iter().map(|c| format_decimal(c, digits)))
    }
}

/// (w)^{σX} = exp(σ X ln w): the X^k coefficient is (σ ln w)^k / k!.
pub fn pow_base(w: &Float, sign: i32, order: usize, ctx: &PrecisionContext) -> Result<RealJet> {
    if *w <= 0 {
        return Err(Error::Domain(format!("power base must be positive, got {w}")));
    }
    let prec = ctx.prec();
    let l = Float::with_val(prec, w.ln_ref()) * sign;
    let mut coeffs = Vec::with_capacity(order.max(1));
    let mut term = ctx.real(1);
    for k in 0..order.max(1) {
        if k > 0 {
            term = Float::with_val(prec, &term * &l) / k as u32;
        }
        coeffs.push(term.clone());
    }
    Ok(Jet::new(coeffs))
}

/// (s)_X = Γ(s+X)/Γ(s) = exp(Σ_{k≥1} ψ^{(k−1)}(s) X^k / k!).
pub fn pochhammer_frac(s: &Rational, order: usize, ctx: &PrecisionContext) -> Result<RealJet> {
    if order > MAX_FRAC_POCHHAMMER_ORDER {
        return Err(Error::Unsupported(format!(
            "(s)_X needs polygamma up to order {}, above the cap of {}",
            order - 1,
            MAX_FRAC_POCHHAMMER_ORDER - 1
        )));
    }
    if *s <= 0 {
        return Err(Error::Domain(format!("(s)_X requires s > 0, got {s}")));
    }
    let prec = ctx.prec();
    let mut g = vec![ctx.real(0); order.max(1)];
    let mut fact = rug::Integer::from(1);
    for (k, gk) in g.iter_mut().enumerate().skip(1) {
        fact *= k as u32;
        *gk = Float::with_val(prec, polygamma((k - 1) as u32, s, ctx)? / &fact);
    }
    Jet::new(g).exp()
}

fn render(coeffs: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.enumerate() {
        let (neg, body) = match c.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, c),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
        match i {
            0 => {}
            1 => out.push_str("*X"),
            _ => out.push_str(&format!("*X^{i}")),
        }
    }
    out
}

impl fmt::Display for Jet<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.coeffs.iter().map(|c| c.to_string())))
    }
}

/// Parses "c0 + c1*X + c2*X^2 …" with rational coefficients; missing powers are 0.
pub fn parse_rational_jet(text: &str, order: usize) -> Result<RationalJet> {
    let mut coeffs = vec![Rational::new(); order.max(1)];
    let normalized = text.replace(" - ", " + -").replace(' ', "");
    for term in normalized.split('+').filter(|t| !t.is_empty()) {
        let (c, power) = match term.split_once('*') {
            Some((c, x)) => {
                let p = match x.strip_prefix("X") {
                    Some("") => 1,
                    Some(rest) => rest
                        .strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad power in {term:?}")))?,
                    None => return Err(Error::Parse(format!("bad jet term {term:?}"))),
                };
                (c, p)
            }
            None => (term, 0),
        };
        let c = crate::numerics::parse_rational(c)?;
        if power < coeffs.len() {
            coeffs[power] += c;
        }
    }
    Ok(Jet::new(coeffs))
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        /// Panics on order mismatch; use the `try_` form for checked use.
        impl<S: Scalar> $tr<&Jet<S>> for &Jet<S> {
            type Output = Jet<S>;
            fn $m(self, rhs: &Jet<S>) -> Jet<S> {
                self.$imp(rhs).expect("jet orders must match")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<S: Scalar> Neg for &Jet<S> {
    type Output = Jet<S>;
    fn neg(self) -> Jet<S> {
        Jet::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fundamental_constants;

    fn r(p: i64, q: i64) -> Rational {
        Rational::from((p, q))
    }

    fn jr(c: &[(i64, i64)]) -> RationalJet {
        Jet::new(c.iter().map(|&(p, q)| r(p, q)).collect())
    }

    #[test]
    fn products_truncate() {
        let a = Jet::from_ints(&[1, 1]);
        let b = Jet::from_ints(&[1, -1]);
        assert_eq!(&a * &b, Jet::from_ints(&[1, 0]));
        let a = Jet::from_ints(&[1, 1, 0]);
        let b = Jet::from_ints(&[1, -1, 0]);
        assert_eq!(&a * &b, Jet::from_ints(&[1, 0, -1]));
        assert_eq!(&Jet::from_ints(&[2, 3]) + &Jet::from_ints(&[-2, 1]), Jet::from_ints(&[0, 4]));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let e = Jet::from_ints(&[1, 2]).try_mul(&Jet::from_ints(&[1, 2, 3])).unwrap_err();
        assert_eq!(e, Error::OrderMismatch { lhs: 2, rhs: 3 });
    }

    #[test]
    fn inverses() {
        assert_eq!(Jet::from_ints(&[1, 1, 0]).inv().unwrap(), Jet::from_ints(&[1, -1, 1]));
        assert_eq!(Jet::from_ints(&[2, 0]).inv().unwrap(), jr(&[(1, 2), (0, 1)]));
        assert_eq!(Jet::from_ints(&[0, 1]).inv().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn exp_and_log() {
        assert_eq!(Jet::from_ints(&[0, 1, 0]).exp().unwrap(), jr(&[(1, 1), (1, 1), (1, 2)]));
        assert_eq!(Jet::from_ints(&[1, 1, 0, 0]).log().unwrap(), jr(&[(0, 1), (1, 1), (-1, 2), (1, 3)]));
        let ctx = PrecisionContext::default();
        let a = Jet::from_ints(&[1, 2, 3]).to_real(ctx.prec());
        let back = a.log().unwrap().exp().unwrap();
        for (x, y) in back.coeffs().iter().zip(a.coeffs()) {
            assert!(Float::with_val(ctx.prec(), x - y).abs() < 1e-70);
        }
        assert!(matches!(Jet::from_ints(&[2, 1]).log(), Err(Error::Domain(_))));
        let neg = Jet::new(vec![ctx.real(-1), ctx.real(0)]);
        assert!(matches!(neg.log(), Err(Error::Domain(_))));
    }

    #[test]
    fn pow_base_values() {
        let ctx = PrecisionContext::default();
        let one = pow_base(&ctx.real(1), 1, 4, &ctx).unwrap();
        assert_eq!(one, Jet::one(4).to_real(ctx.prec()));
        let e = ctx.real(1).exp();
        let j = pow_base(&e, 1, 3, &ctx).unwrap();
        assert!(Float::with_val(ctx.prec(), j.coeff(2) - 0.5f64).abs() < 1e-70);
        let j = pow_base(&ctx.real(0.25), -1, 2, &ctx).unwrap();
        let ln2x2 = Float::with_val(ctx.prec(), fundamental_constants(&ctx).ln2 * 2u32);
        assert!(Float::with_val(ctx.prec(), j.coeff(1) - &ln2x2).abs() < 1e-70);
        assert!(pow_base(&ctx.real(0), 1, 2, &ctx).is_err());
    }

    #[test]
    fn integer_pochhammer() {
        let a = jr(&[(1, 2), (1, 1)]);
        assert_eq!(a.pochhammer_int(1), a);
        assert_eq!(a.pochhammer_int(2), jr(&[(3, 4), (2, 1)]));
        assert_eq!(a.pochhammer_int(0), Jet::one(2));
    }

    #[test]
    fn fractional_pochhammer_at_one() {
        let ctx = PrecisionContext::default();
        let c = fundamental_constants(&ctx);
        let prec = ctx.prec();
        let j = pochhammer_frac(&r(1, 1), 3, &ctx).unwrap();
        assert!(Float::with_val(prec, j.coeff(0) - 1u32).abs() < 1e-70);
        assert!(Float::with_val(prec, j.coeff(1) + &c.euler).abs() < 1e-70);
        let pi2_6 = Float::with_val(prec, c.pi.square_ref()) / 6u32;
        let expect = (Float::with_val(prec, c.euler.square_ref()) + pi2_6) / 2u32;
        assert!(Float::with_val(prec, j.coeff(2) - &expect).abs() < 1e-70);
        assert!(matches!(pochhammer_frac(&r(1, 1), 8, &ctx), Err(Error::Unsupported(_))));
    }

    #[test]
    fn text_roundtrip() {
        let a = jr(&[(1, 2), (-3, 1), (0, 1), (5, 7)]);
        let s = a.to_string();
        assert_eq!(s, "1/2 - 3*X + 0*X^2 + 5/7*X^3");
        assert_eq!(parse_rational_jet(&s, 4).unwrap(), a);
    }
}
