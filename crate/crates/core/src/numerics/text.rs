//! Decimal and rational literals.

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Parses "p/q", an integer, or a finite decimal such as "-0.05" or "1e-3"
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational literal: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: Integer = p.trim().trim_start_matches('+').parse().map_err(|_| bad())?;
        let q: Integer = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::from((p, q)));
    }
    let s = s.trim_start_matches('+');
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: Integer = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let mut r = Rational::from(digits);
    let power = Integer::from(Integer::u_pow_u(10, scale.unsigned_abs()));
    if scale >= 0 {
        r *= power;
    } else {
        r /= power;
    }
    Ok(if neg { -r } else { r })
}

/// Parses a sign literal: "+1", "1", "-1", "+" or "-".
pub fn parse_sign(text: &str) -> Result<i32> {
    match text.trim() {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        other => Err(Error::Parse(format!("sign must be +1 or -1, got {other:?}"))),
    }
}

/// Scientific decimal with `digits` significant digits, e.g. "-2.5e-1".
pub fn format_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix(10, Some(digits.max(1)));
    s.replace('@', "")
}

/// Fixed-point decimal with `places` digits after the point.
pub fn format_fixed(x: &Float, places: usize) -> String {
    let prec = x.prec().max(64);
    let scale = Integer::from(Integer::u_pow_u(10, places as u32));
    let scaled = Float::with_val(prec, x * &scale).round();
    let n = scaled.to_integer().unwrap_or_default();
    let neg = n < 0;
    let digits = n.abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rational("-1/4").unwrap(), Rational::from((-1, 4)));
        assert_eq!(parse_rational("6/8").unwrap(), Rational::from((3, 4)));
        assert_eq!(parse_rational("305").unwrap(), Rational::from(305));
        assert_eq!(parse_rational("0.05").unwrap(), Rational::from((1, 20)));
        assert_eq!(parse_rational("-2.5e-1").unwrap(), Rational::from((-1, 4)));
        assert_eq!(parse_rational("1e3").unwrap(), Rational::from(1000));
        assert_eq!(parse_rational("+3/2").unwrap(), Rational::from((3, 2)));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "abc", "1/2/3", "--1", ".", "1.2.3"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn signs() {
        assert_eq!(parse_sign("-1").unwrap(), -1);
        assert_eq!(parse_sign("+1").unwrap(), 1);
        assert!(parse_sign("0").is_err());
    }

    #[test]
    fn fixed_formatting() {
        let x = Float::with_val(128, -0.125);
        assert_eq!(format_fixed(&x, 4), "-0.1250");
        assert_eq!(format_fixed(&Float::with_val(128, 3.5), 0), "4");
        assert_eq!(format_decimal(&Float::with_val(128, 0.25), 3), "2.50e-1");
    }
}
