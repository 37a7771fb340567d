//! Truncated power series over exact rationals.

use rug::Rational;

use crate::error::{Error, Result};
use crate::hyperseries::ZPowerSeries;

pub type RationalSeries = ZPowerSeries<Rational>;

pub fn zeros(order: usize) -> RationalSeries {
    ZPowerSeries::new(vec![Rational::new(); order + 1])
}

/// c + 0·z + … at the given truncation.
pub fn constant(c: Rational, order: usize) -> RationalSeries {
    let mut v = vec![Rational::new(); order + 1];
    v[0] = c;
    ZPowerSeries::new(v)
}

/// The variable z itself.
pub fn variable(order: usize) -> RationalSeries {
    let mut v = vec![Rational::new(); order + 1];
    if order >= 1 {
        v[1] = Rational::from(1);
    }
    ZPowerSeries::new(v)
}

pub fn from_ints(coeffs: &[i64]) -> RationalSeries {
    ZPowerSeries::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
}

pub fn add(f: &RationalSeries, g: &RationalSeries) -> Result<RationalSeries> {
    f.check_same(g)?;
    Ok(ZPowerSeries::new(f.coeffs().iter().zip(g.coeffs()).map(|(a, b)| Rational::from(a + b)).collect()))
}

pub fn sub(f: &RationalSeries, g: &RationalSeries) -> Result<RationalSeries> {
    f.check_same(g)?;
    Ok(ZPowerSeries::new(f.coeffs().iter().zip(g.coeffs()).map(|(a, b)| Rational::from(a - b)).collect()))
}

pub fn scale(f: &RationalSeries, c: &Rational) -> RationalSeries {
    f.map(|a| Rational::from(a * c))
}

pub fn mul(f: &RationalSeries, g: &RationalSeries) -> Result<RationalSeries> {
    f.check_same(g)?;
    let n = f.coeffs().len();
    let (a, b) = (f.coeffs(), g.coeffs());
    let coeffs = (0..n)
        .map(|k| (0..=k).fold(Rational::new(), |acc, i| acc + Rational::from(&a[i] * &b[k - i])))
        .collect();
    Ok(ZPowerSeries::new(coeffs))
}

/// 1/f; needs f(0) ≠ 0.
pub fn invert(f: &RationalSeries) -> Result<RationalSeries> {
    let a = f.coeffs();
    if a[0] == 0 {
        return Err(Error::NotInvertible);
    }
    let mut out: Vec<Rational> = Vec::with_capacity(a.len());
    out.push(Rational::from(a[0].recip_ref()));
    for k in 1..a.len() {
        let acc = (1..=k).fold(Rational::new(), |acc, j| acc + Rational::from(&a[j] * &out[k - j]));
        out.push(-acc / &a[0]);
    }
    Ok(ZPowerSeries::new(out))
}

pub fn div(f: &RationalSeries, g: &RationalSeries) -> Result<RationalSeries> {
    mul(f, &invert(g)?)
}

/// f(g(z)); needs g(0) = 0.
pub fn compose(f: &RationalSeries, g: &RationalSeries) -> Result<RationalSeries> {
    f.check_same(g)?;
    if *g.coeff(0) != 0 {
        return Err(Error::Domain("inner series of a composition must vanish at 0".into()));
    }
    let order = f.truncation_order();
    let mut acc = zeros(order);
    for c in f.coeffs().iter().rev() {
        acc = mul(&acc, g)?;
        acc = add(&acc, &constant(c.clone(), order))?;
    }
    Ok(acc)
}

/// Compositional inverse g with f(g(q)) = q; needs f(0) = 0, f′(0) ≠ 0.
pub fn revert(f: &RationalSeries) -> Result<RationalSeries> {
    let order = f.truncation_order();
    if *f.coeff(0) != 0 {
        return Err(Error::Domain("reversion needs a zero constant term".into()));
    }
    if order == 0 || *f.coeff(1) == 0 {
        return Err(Error::NotInvertible);
    }
    let f1 = f.coeff(1).clone();
    let mut g = zeros(order);
    let mut coeffs = g.clone().into_coeffs();
    coeffs[1] = Rational::from(f1.recip_ref());
    g = ZPowerSeries::new(coeffs);
    for k in 2..=order {
        let err = compose(f, &g)?.coeff(k).clone();
        let mut coeffs = g.into_coeffs();
        coeffs[k] -= err / &f1;
        g = ZPowerSeries::new(coeffs);
    }
    Ok(g)
}

/// q d/dq: coefficient n is multiplied by n.
pub fn q_derivative(f: &RationalSeries) -> RationalSeries {
    ZPowerSeries::new(f.coeffs().iter().enumerate().map(|(n, c)| Rational::from(c * n as u64)).collect())
}

/// exp f; needs f(0) = 0 to stay rational.
pub fn exp(f: &RationalSeries) -> Result<RationalSeries> {
    if *f.coeff(0) != 0 {
        return Err(Error::Domain("rational exp needs a zero constant term".into()));
    }
    let a = f.coeffs();
    let mut out: Vec<Rational> = vec![Rational::from(1)];
    for k in 1..a.len() {
        let acc = (1..=k).fold(Rational::new(), |acc, j| acc + Rational::from(&a[j] * &out[k - j]) * j as u64);
        out.push(acc / k as u64);
    }
    Ok(ZPowerSeries::new(out))
}

/// Coefficient n multiplied by cⁿ, i.e. f(c·z).
pub fn rescale_variable(f: &RationalSeries, c: &Rational) -> RationalSeries {
    let mut power = Rational::from(1);
    let mut out = Vec::with_capacity(f.coeffs().len());
    for a in f.coeffs() {
        out.push(Rational::from(a * &power));
        power *= c;
    }
    ZPowerSeries::new(out)
}

pub fn pow(f: &RationalSeries, e: u32) -> Result<RationalSeries> {
    let mut acc = constant(Rational::from(1), f.truncation_order());
    for _ in 0..e {
        acc = mul(&acc, f)?;
    }
    Ok(acc)
}
