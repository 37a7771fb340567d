//! The component matrices A, B, C of each family, exactly as z-series of
//! rational jets and numerically at a point, with the component relations.
//!
//! With Pₙ = Π_p (pI+X)ₙ / (I+X)ₙ^d the series are A = Σ zⁿPₙ,
//! B = Σ zⁿPₙ(nI+X), C = Σ zⁿPₙ(nI+X)² and, for the ₇F₆ case,
//! D = Σ zⁿPₙ(nI+X)³.

mod family;
mod numeric;
mod relations;
mod series;

use rug::Rational;

pub use family::{FamilyKind, SeriesFamily, F32_VALUES, F54_PAIRS};
pub use numeric::{
    clausen_alpha, evaluate_components, evaluate_components_cut, evaluate_components_within, log_ladder, log_ladder_explicit, ComponentVector,
    MAX_ABS_Z, TAIL_SLACK_BITS,
};
pub use relations::{relation_residuals, RelationReport, RelationResidual};
pub use series::ZPowerSeries;

use crate::error::{Error, Result};
use crate::jet::{Jet, RationalJet};

/// Pₙ(X) at the given jet order, from the Pochhammer products directly.
pub fn p_jet(family: &SeriesFamily, n: u32, order: usize) -> RationalJet {
    let mut num = Jet::one(order);
    for p in family.params() {
        num = &num * &Jet::linear(p, order).pochhammer_int(n);
    }
    let den = Jet::linear(Rational::from(1), order).pochhammer_int(n);
    let mut den_pow = Jet::one(order);
    for _ in 0..family.order() {
        den_pow = &den_pow * &den;
    }
    num.try_div(&den_pow).expect("(I+X)ₙ has head n! ≠ 0")
}

/// Σ zⁿ Pₙ (nI+X)^k for k = 0..=degree, exact to z^N.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSeries {
    pub family: SeriesFamily,
    series: Vec<ZPowerSeries<RationalJet>>,
}

impl ComponentSeries {
    pub fn a(&self) -> &ZPowerSeries<RationalJet> {
        &self.series[0]
    }

    pub fn b(&self) -> &ZPowerSeries<RationalJet> {
        &self.series[1]
    }

    pub fn c(&self) -> Option<&ZPowerSeries<RationalJet>> {
        self.series.get(2)
    }

    pub fn d(&self) -> Option<&ZPowerSeries<RationalJet>> {
        self.series.get(3)
    }

    pub fn all(&self) -> &[ZPowerSeries<RationalJet>] {
        &self.series
    }

    /// Scalar series of one jet component of the k-th matrix.
    pub fn component(&self, k: usize, i: usize) -> ZPowerSeries<Rational> {
        self.series[k].map(|j| j.coeff(i).clone())
    }
}

/// Builds A, B, (C, D) through the term recurrence
/// Pₙ₊₁ = Pₙ · Π_p((n+p)I+X) / ((n+1)I+X)^d.
pub fn component_series(family: &SeriesFamily, truncation: usize) -> Result<ComponentSeries> {
    if truncation < 1 {
        return Err(Error::Config("series truncation must be at least 1".into()));
    }
    let order = family.order();
    let params = family.params();
    let mut terms: Vec<RationalJet> = Vec::with_capacity(truncation + 1);
    terms.push(Jet::one(order));
    for n in 0..truncation {
        let nr = Rational::from(n as u64);
        let mut ratio = Jet::one(order);
        for p in &params {
            ratio = &ratio * &Jet::linear(Rational::from(&nr + p), order);
        }
        let step = Jet::linear(Rational::from(n as u64 + 1), order).inv()?;
        for _ in 0..order {
            ratio = &ratio * &step;
        }
        let next = terms.last().expect("non-empty") * &ratio;
        terms.push(next);
    }
    let mut series = Vec::with_capacity(family.poly_degree() + 1);
    let mut weighted = terms.clone();
    for k in 0..=family.poly_degree() {
        if k > 0 {
            for (n, w) in weighted.iter_mut().enumerate() {
                *w = &*w * &Jet::linear(Rational::from(n as u64), order);
            }
        }
        series.push(ZPowerSeries::new(weighted.clone()));
    }
    Ok(ComponentSeries { family: family.clone(), series })
}

/// Largest |component| of ((n+1)I+X)^d Aₙ₊₁ − Π_p((n+p)I+X) Aₙ over
/// n < N, with Aₙ taken from the Pochhammer definition.
pub fn picard_fuchs_residual(family: &SeriesFamily, truncation: usize) -> Result<Rational> {
    if truncation < 2 {
        return Err(Error::Config("Picard-Fuchs check needs N >= 2".into()));
    }
    let order = family.order();
    let coeffs: Vec<RationalJet> = (0..=truncation as u32).map(|n| p_jet(family, n, order)).collect();
    let mut worst = Rational::new();
    for n in 0..truncation {
        let mut lhs = coeffs[n + 1].clone();
        let up = Jet::linear(Rational::from(n as u64 + 1), order);
        for _ in 0..order {
            lhs = &lhs * &up;
        }
        let mut rhs = coeffs[n].clone();
        for p in family.params() {
            rhs = &rhs * &Jet::linear(p + n as u64, order);
        }
        for c in (&lhs - &rhs).coeffs() {
            let c = Rational::from(c.abs_ref());
            if c > worst {
                worst = c;
            }
        }
    }
    Ok(worst)
}

/// z d/dz of a jet-valued series: coefficient n is multiplied by n.
pub fn z_derivative(series: &ZPowerSeries<RationalJet>) -> ZPowerSeries<RationalJet> {
    let coeffs = series.coeffs().iter().enumerate().map(|(n, c)| c.scale(&Rational::from(n as u64))).collect();
    ZPowerSeries::new(coeffs)
}

/// The ladder B = zA′ + XA (and C = zB′ + XB), checked coefficientwise.
pub fn ladder_holds(lower: &ZPowerSeries<RationalJet>, upper: &ZPowerSeries<RationalJet>) -> bool {
    if lower.check_same(upper).is_err() {
        return false;
    }
    let order = lower.coeff(0).order();
    let x = Jet::linear(Rational::new(), order);
    z_derivative(lower).coeffs().iter().zip(lower.coeffs()).zip(upper.coeffs()).all(|((d, l), u)| &(d + &(&x * l)) == u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::from((p, q))
    }

    #[test]
    fn p_jet_examples() {
        let f32 = SeriesFamily::f32(r(1, 2)).unwrap();
        assert_eq!(p_jet(&f32, 0, 3), Jet::one(3));
        assert_eq!(p_jet(&f32, 1, 1), Jet::new(vec![r(1, 8)]));
        let f54 = SeriesFamily::f54(r(1, 2), r(1, 2)).unwrap();
        assert_eq!(p_jet(&f54, 1, 1), Jet::new(vec![r(1, 32)]));
    }

    #[test]
    fn component_series_heads() {
        let f32 = SeriesFamily::f32(r(1, 2)).unwrap();
        let cs = component_series(&f32, 6).unwrap();
        assert_eq!(*cs.a().coeff(1).coeff(0), r(1, 8));
        assert!(cs.c().is_none());
        let f54 = SeriesFamily::f54(r(1, 2), r(1, 2)).unwrap();
        let cs = component_series(&f54, 6).unwrap();
        assert_eq!(*cs.b().coeff(1).coeff(0), r(1, 32));
        assert!(cs.c().is_some());
    }

    #[test]
    fn recurrence_matches_definition() {
        for family in SeriesFamily::all_f54().into_iter().chain(SeriesFamily::all_f32()) {
            let cs = component_series(&family, 8).unwrap();
            for n in 0..=8u32 {
                assert_eq!(*cs.a().coeff(n as usize), p_jet(&family, n, family.order()), "{family} n={n}");
            }
        }
    }

    #[test]
    fn picard_fuchs_zero() {
        for f in ["3F2:1/2", "5F4:1/2,1/3", "3F2:1/3"] {
            let family = SeriesFamily::parse(f).unwrap();
            assert_eq!(picard_fuchs_residual(&family, 10).unwrap(), 0);
        }
        assert!(picard_fuchs_residual(&SeriesFamily::f76(), 1).is_err());
    }

    #[test]
    fn differential_ladders() {
        let f32 = SeriesFamily::f32(r(1, 2)).unwrap();
        let cs = component_series(&f32, 10).unwrap();
        assert!(ladder_holds(cs.a(), cs.b()));
        // b₀ = z a₀′, b₁ = a₀ + z a₁′, b₂ = a₁ + z a₂′
        let a0 = cs.component(0, 0);
        let b1 = cs.component(1, 1);
        let a1 = cs.component(0, 1);
        for n in 0..=10 {
            assert_eq!(*b1.coeff(n), (a0.coeff(n) + a1.coeff(n) * Rational::from(n as u64)));
        }
        let f54 = SeriesFamily::f54(r(1, 4), r(1, 6)).unwrap();
        let cs = component_series(&f54, 10).unwrap();
        assert!(ladder_holds(cs.a(), cs.b()));
        assert!(ladder_holds(cs.b(), cs.c().unwrap()));
    }

    #[test]
    fn prefix_stability() {
        let family = SeriesFamily::f54(r(1, 5), r(2, 5)).unwrap();
        let short = component_series(&family, 5).unwrap();
        let long = component_series(&family, 9).unwrap();
        for k in 0..3 {
            assert_eq!(long.all()[k].truncate(5).unwrap(), short.all()[k]);
        }
    }
}
