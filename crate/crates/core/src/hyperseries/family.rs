use std::fmt;

use rug::Rational;

use crate::error::{Error, Result};
use crate::numerics::parse_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    F32,
    F54,
    F76,
}

/// One hypergeometric family: the upper parameters and the power of (I+X)ₙ
/// in the denominator, which is also the jet order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesFamily {
    kind: FamilyKind,
    s: Rational,
    t: Rational,
}

pub const F32_VALUES: [(i64, i64); 4] = [(1, 2), (1, 3), (1, 4), (1, 6)];

/// Unordered (s, t) pairs; the first ten combine two ₃F₂ values.
pub const F54_PAIRS: [((i64, i64), (i64, i64)); 14] = [
    ((1, 2), (1, 2)),
    ((1, 2), (1, 3)),
    ((1, 2), (1, 4)),
    ((1, 2), (1, 6)),
    ((1, 3), (1, 3)),
    ((1, 3), (1, 4)),
    ((1, 3), (1, 6)),
    ((1, 4), (1, 4)),
    ((1, 4), (1, 6)),
    ((1, 6), (1, 6)),
    ((1, 5), (2, 5)),
    ((1, 8), (3, 8)),
    ((1, 10), (3, 10)),
    ((1, 12), (5, 12)),
];

fn half() -> Rational {
    Rational::from((1, 2))
}

impl SeriesFamily {
    pub fn f32(s: Rational) -> Result<Self> {
        if !F32_VALUES.iter().any(|&v| Rational::from(v) == s) {
            return Err(Error::Config(format!("3F2 parameter s = {s} is not one of 1/2, 1/3, 1/4, 1/6")));
        }
        Ok(Self { kind: FamilyKind::F32, s, t: half() })
    }

    pub fn f54(s: Rational, t: Rational) -> Result<Self> {
        let ok = F54_PAIRS.iter().any(|&(a, b)| {
            let (a, b) = (Rational::from(a), Rational::from(b));
            (a == s && b == t) || (a == t && b == s)
        });
        if !ok {
            return Err(Error::Config(format!("5F4 pair ({s}, {t}) is not admissible")));
        }
        Ok(Self { kind: FamilyKind::F54, s, t })
    }

    pub fn f76() -> Self {
        Self { kind: FamilyKind::F76, s: half(), t: half() }
    }

    pub fn all_f32() -> Vec<Self> {
        F32_VALUES.iter().map(|&s| Self::f32(Rational::from(s)).expect("listed value")).collect()
    }

    pub fn all_f54() -> Vec<Self> {
        F54_PAIRS
            .iter()
            .map(|&(s, t)| Self::f54(Rational::from(s), Rational::from(t)).expect("listed pair"))
            .collect()
    }

    /// Parses "3F2:s", "5F4:s,t" or "7F6".
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, rest) = text.split_once(':').unwrap_or((text, ""));
        match head.to_ascii_uppercase().as_str() {
            "3F2" => Self::f32(parse_rational(rest)?),
            "5F4" => {
                let (s, t) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("5F4 needs two parameters: {text:?}")))?;
                Self::f54(parse_rational(s)?, parse_rational(t)?)
            }
            "7F6" if rest.is_empty() => Ok(Self::f76()),
            _ => Err(Error::Parse(format!("unknown family {text:?}"))),
        }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    /// Second parameter; 1/2 outside the ₅F₄ case.
    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// Jet order, equal to the power of (I+X)ₙ in the denominator.
    pub fn order(&self) -> usize {
        match self.kind {
            FamilyKind::F32 => 3,
            FamilyKind::F54 => 5,
            FamilyKind::F76 => 7,
        }
    }

    /// Upper parameters p with factors (pI+X)ₙ.
    pub fn params(&self) -> Vec<Rational> {
        let one = Rational::from(1);
        match self.kind {
            FamilyKind::F32 => vec![half(), self.s.clone(), Rational::from(&one - &self.s)],
            FamilyKind::F54 => vec![
                half(),
                self.s.clone(),
                Rational::from(&one - &self.s),
                self.t.clone(),
                Rational::from(&one - &self.t),
            ],
            FamilyKind::F76 => vec![half(); 7],
        }
    }

    /// Degree of the polynomial in n multiplying the terms.
    pub fn poly_degree(&self) -> usize {
        match self.kind {
            FamilyKind::F32 => 1,
            FamilyKind::F54 => 2,
            FamilyKind::F76 => 3,
        }
    }

    /// m with right-hand side 1/π^m.
    pub fn pi_power(&self) -> u32 {
        match self.kind {
            FamilyKind::F32 => 1,
            FamilyKind::F54 => 2,
            FamilyKind::F76 => 3,
        }
    }
}

impl fmt::Display for SeriesFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::F32 => write!(f, "3F2:{}", self.s),
            FamilyKind::F54 => write!(f, "5F4:{},{}", self.s, self.t),
            FamilyKind::F76 => write!(f, "7F6"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let f = SeriesFamily::parse("5F4:1/2,1/3").unwrap();
        assert_eq!(f.to_string(), "5F4:1/2,1/3");
        assert_eq!(SeriesFamily::parse("5F4:3/8,1/8").unwrap().kind(), FamilyKind::F54);
        assert_eq!(SeriesFamily::parse("3F2:1/6").unwrap().order(), 3);
        assert_eq!(SeriesFamily::parse("7F6").unwrap().params().len(), 7);
        assert!(SeriesFamily::parse("3F2:1/5").is_err());
        assert!(SeriesFamily::parse("5F4:1/5,1/5").is_err());
        assert!(SeriesFamily::parse("4F3:1/2").is_err());
    }

    #[test]
    fn catalogue_sizes() {
        assert_eq!(SeriesFamily::all_f32().len(), 4);
        assert_eq!(SeriesFamily::all_f54().len(), 14);
    }
}
