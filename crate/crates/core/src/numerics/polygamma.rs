//! Polygamma values ψ⁽ᵐ⁾(s) at positive rationals.
//!
//! `m = 0` uses Gauss's digamma theorem on the fractional part and the
//! recurrence ψ(s+1) = ψ(s) + 1/s for the integer part. `m ≥ 1` uses
//! ψ⁽ᵐ⁾(s) = (−1)^{m+1} m! ζ(m+1, s), with the Hurwitz zeta summed directly to
//! an index N and closed by an Euler–Maclaurin tail.

use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::constants::{euler_gamma, pi};
use super::PrecisionContext;
use crate::error::{Error, Result};

pub const MAX_POLYGAMMA_ORDER: u32 = 6;

/// Denominators above this use the asymptotic digamma route.
const GAUSS_MAX_DENOMINATOR: u32 = 4096;
/// Integer parts above this use the asymptotic digamma route.
const RECURRENCE_MAX_SHIFT: u32 = 4096;

pub fn polygamma(m: u32, s: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    if m > MAX_POLYGAMMA_ORDER {
        return Err(Error::Unsupported(format!(
            "polygamma order {m} exceeds the supported maximum {MAX_POLYGAMMA_ORDER}"
        )));
    }
    if *s <= 0 {
        return Err(Error::Domain(format!("polygamma requires s > 0, got {s}")));
    }
    if m == 0 {
        return Ok(digamma(s, ctx));
    }
    let prec = ctx.prec();
    let zeta = hurwitz_zeta(m + 1, s, ctx);
    let fact = Integer::from(Integer::factorial(m));
    let mut out = Float::with_val(prec, &zeta * &fact);
    if m.is_multiple_of(2) {
        out = -out;
    }
    Ok(out)
}

pub fn digamma(s: &Rational, ctx: &PrecisionContext) -> Float {
    let denom_small = s.denom().to_u32().is_some_and(|d| d <= GAUSS_MAX_DENOMINATOR);
    let shift = Rational::from(s.ceil_ref()) - 1u32;
    let shift_small = shift.numer().to_u32().map_or(shift < 0, |n| n <= RECURRENCE_MAX_SHIFT);
    if denom_small && shift_small {
        digamma_gauss(s, ctx)
    } else {
        digamma_asymptotic(s, ctx)
    }
}

/// Gauss's theorem for 0 < p/q ≤ 1, then the upward recurrence.
fn digamma_gauss(s: &Rational, ctx: &PrecisionContext) -> Float {
    let prec = ctx.prec();
    // s = n + r with r in (0, 1]
    let n = Rational::from(s.ceil_ref()) - 1u32;
    let r = Rational::from(s - &n);
    let n = n.numer().to_u32().expect("shift is bounded by the caller");

    let mut psi = if r == 1 {
        -euler_gamma(ctx)
    } else {
        let p = r.numer().to_u32().expect("numerator below denominator");
        let q = r.denom().to_u32().expect("denominator bounded by the caller");
        let pi = pi(ctx);
        let mut acc = -euler_gamma(ctx) - Float::with_val(prec, 2 * q).ln();
        let cot = Float::with_val(prec, &pi * Float::with_val(prec, p) / q).cot();
        acc -= Float::with_val(prec, &pi * &cot) / 2u32;
        for k in 1..=(q - 1) / 2 {
            let kp = (u64::from(k) * u64::from(p)) % u64::from(q);
            let angle = Float::with_val(prec, &pi * Float::with_val(prec, 2 * kp)) / q;
            let sin = Float::with_val(prec, &pi * Float::with_val(prec, k)) / q;
            let term = angle.cos() * sin.sin().ln();
            acc += term * 2u32;
        }
        acc
    };
    for i in 0..n {
        let x = &r + Rational::from(i);
        psi += Float::with_val(prec, &x).recip();
    }
    psi
}

/// ψ(s) = ψ(s + K) − Σ_{k<K} 1/(s+k) with the Stirling-type expansion
/// ψ(x) ~ ln x − 1/(2x) − Σ B₂ⱼ/(2j x^{2j}) at x = s + K.
pub(crate) fn digamma_asymptotic(s: &Rational, ctx: &PrecisionContext) -> Float {
    let prec = ctx.prec();
    let shift = prec / 2 + 10;
    let mut sum = Float::with_val(prec, 0);
    let mut x = s.clone();
    if x < shift {
        for _ in 0..shift {
            sum += Float::with_val(prec, &x).recip();
            x += 1;
        }
    }
    let xf = Float::with_val(prec, &x);
    let mut psi = Float::with_val(prec, xf.ln_ref()) - Float::with_val(prec, xf.recip_ref()) / 2u32;
    let inv2 = Float::with_val(prec, xf.clone().pow(2)).recip();
    let mut pow = inv2.clone();
    let cut = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 8));
    let bern = bernoulli_even(prec as usize / 2 + 20);
    let mut prev = Float::with_val(prec, f64::INFINITY);
    for (j, b) in bern.iter().enumerate().skip(1) {
        let term = Float::with_val(prec, &pow * b) / (2 * j as u32);
        let mag = Float::with_val(prec, term.abs_ref());
        if mag < cut || mag > prev {
            break;
        }
        psi -= term;
        prev = mag;
        pow *= &inv2;
    }
    psi - sum
}

/// ζ(σ, a) = Σ_{k≥0} (k+a)^{−σ} for integer σ ≥ 2 and rational a > 0.
pub fn hurwitz_zeta(sigma: u32, a: &Rational, ctx: &PrecisionContext) -> Float {
    assert!(sigma >= 2, "Hurwitz zeta needs sigma >= 2");
    let prec = ctx.prec();
    let cut = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 8));
    let mut n_terms = prec / 2 + 10;
    loop {
        if let Some(v) = hurwitz_zeta_em(sigma, a, n_terms, &cut, prec) {
            return v;
        }
        n_terms *= 2;
    }
}

fn hurwitz_zeta_em(sigma: u32, a: &Rational, n_terms: u32, cut: &Float, prec: u32) -> Option<Float> {
    let mut sum = Float::with_val(prec, 0);
    let a_f = Float::with_val(prec, a);
    for k in 0..n_terms {
        let base = Float::with_val(prec, &a_f + k);
        sum += base.pow(sigma).recip();
    }
    let x = Float::with_val(prec, &a_f + n_terms);
    let x_pow = Float::with_val(prec, x.clone().pow(sigma));
    // integral and half-endpoint terms
    sum += Float::with_val(prec, &x / &x_pow) / (sigma - 1);
    sum += Float::with_val(prec, x_pow.recip_ref()) / 2u32;

    let inv_x2 = Float::with_val(prec, x.clone().pow(2)).recip();
    // running (σ)_{2j-1} · x^{-σ-2j+1}, starting at j = 1: σ · x^{-σ-1}
    let mut running = Float::with_val(prec, &x_pow * &x).recip() * sigma;
    let max_j = (prec as usize) / 2 + 20;
    let bern = bernoulli_even(max_j + 1);
    let mut fact = Integer::from(2); // (2j)!
    let mut prev = Float::with_val(prec, f64::INFINITY);
    for j in 1..=max_j {
        let term = Float::with_val(prec, &running * &bern[j]) / &fact;
        let mag = Float::with_val(prec, term.abs_ref());
        if mag > prev {
            return None;
        }
        sum += &term;
        if mag < *cut {
            return Some(sum);
        }
        prev = mag;
        let jj = j as u32;
        // (σ)_{2j+1} = (σ)_{2j-1} (σ+2j-1)(σ+2j)
        running *= Float::with_val(prec, (sigma + 2 * jj - 1) as u64 * (sigma + 2 * jj) as u64);
        running *= &inv_x2;
        fact *= (2 * jj + 1) * (2 * jj + 2);
    }
    None
}

/// B₀, B₂, B₄, …, B₂ₖ (index j holds B₂ⱼ), from a process-wide cache.
pub fn bernoulli_even(count: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let mut b = CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)])).lock().expect("cache lock");
    let max = 2 * count;
    // B_m = -1/(m+1) Σ_{k<m} C(m+1, k) B_k
    for m in b.len()..=max {
        if m > 1 && m % 2 == 1 {
            b.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, bk) in b.iter().enumerate() {
            if !(bk.numer().is_zero()) {
                acc += Rational::from(bk * &binom);
            }
            // C(m+1, k+1) = C(m+1, k) (m+1-k)/(k+1)
            binom *= (m + 1 - k) as u64;
            binom /= (k + 1) as u64;
        }
        b.push(-acc / Rational::from(m as u64 + 1));
    }
    b.iter().step_by(2).take(count + 1).cloned().collect()
}
