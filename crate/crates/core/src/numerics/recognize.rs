//! Recognition of high-precision reals as rationals or quadratic surds.
//!
//! Rational candidates come from continued-fraction convergents. Quadratic
//! candidates come from x² as a rational, then from an integer relation
//! A + Bx + Cx² = 0 found by LLL reduction of a three-vector lattice. Every
//! candidate is rebuilt at full precision and compared against the input.

use std::fmt;

use rug::{Float, Integer, Rational};

use super::PrecisionContext;

/// Largest square-free radicand accepted in affine form.
pub const MAX_RADICAND: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecognitionMode {
    Rational,
    Quadratic,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExactKind {
    Rational(Rational),
    /// √r with r > 0 rational.
    Sqrt(Rational),
    /// p + q·√d with d > 1 square-free.
    Affine { p: Rational, q: Rational, d: u32 },
    Unrecognized,
}

#[derive(Debug, Clone)]
pub struct RecognizedConstant {
    pub kind: ExactKind,
    /// |exact − input| at full precision; the input magnitude when unrecognized.
    pub certificate_residual: Float,
}

impl RecognizedConstant {
    pub fn is_recognized(&self) -> bool {
        !matches!(self.kind, ExactKind::Unrecognized)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.kind {
            ExactKind::Rational(r) => Some(r),
            _ => None,
        }
    }
}

impl ExactKind {
    pub fn to_float(&self, prec: u32) -> Option<Float> {
        match self {
            ExactKind::Rational(r) => Some(Float::with_val(prec, r)),
            ExactKind::Sqrt(r) => Some(Float::with_val(prec, r).sqrt()),
            ExactKind::Affine { p, q, d } => {
                let root = Float::with_val(prec, *d).sqrt();
                Some(Float::with_val(prec, p) + root * q)
            }
            ExactKind::Unrecognized => None,
        }
    }

    /// Exact square when it is rational (rational or √r kinds).
    pub fn square(&self) -> Option<Rational> {
        match self {
            ExactKind::Rational(r) => Some(Rational::from(r.square_ref())),
            ExactKind::Sqrt(r) => Some(r.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for ExactKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactKind::Rational(r) => write!(f, "{r}"),
            ExactKind::Sqrt(r) => write!(f, "sqrt({r})"),
            ExactKind::Affine { p, q, d } => {
                if *p == 0 {
                    write!(f, "{q}*sqrt({d})")
                } else if *q < 0 {
                    write!(f, "{p} - {}*sqrt({d})", Rational::from(-q))
                } else {
                    write!(f, "{p} + {q}*sqrt({d})")
                }
            }
            ExactKind::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

pub fn recognize(
    x: &Float,
    denominator_bound: u64,
    mode: RecognitionMode,
    ctx: &PrecisionContext,
) -> RecognizedConstant {
    let bound = Integer::from(denominator_bound.max(1));
    let tol = ctx.recognition_tolerance();
    if let Some(r) = rational_candidate(x, &bound, tol) {
        return certify(ExactKind::Rational(r), x, ctx);
    }
    if mode == RecognitionMode::Quadratic {
        if let Some(kind) = sqrt_candidate(x, &bound, ctx) {
            return certify(kind, x, ctx);
        }
        if let Some(kind) = affine_candidate(x, &bound, ctx) {
            return certify(kind, x, ctx);
        }
    }
    unrecognized(x)
}

fn unrecognized(x: &Float) -> RecognizedConstant {
    RecognizedConstant { kind: ExactKind::Unrecognized, certificate_residual: Float::with_val(x.prec(), x.abs_ref()) }
}

fn certify(kind: ExactKind, x: &Float, ctx: &PrecisionContext) -> RecognizedConstant {
    let exact = kind.to_float(ctx.prec()).expect("recognized kinds evaluate");
    let residual = Float::with_val(ctx.prec(), &exact - x).abs();
    if residual <= *ctx.recognition_tolerance() {
        RecognizedConstant { kind, certificate_residual: residual }
    } else {
        unrecognized(x)
    }
}

/// First continued-fraction convergent with denominator ≤ bound within tol.
pub fn rational_candidate(x: &Float, bound: &Integer, tol: &Float) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let prec = x.prec();
    let (mut h_prev, mut h) = (Integer::from(0), Integer::from(1));
    let (mut k_prev, mut k) = (Integer::from(1), Integer::from(0));
    let mut rem = x.clone();
    for _ in 0..(2 * prec) {
        let a = rem.clone().floor().to_integer().expect("finite remainder");
        let h_next = Integer::from(&a * &h) + &h_prev;
        let k_next = Integer::from(&a * &k) + &k_prev;
        if k_next > *bound {
            return None;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
        let cand = Rational::from((h.clone(), k.clone()));
        let err = Float::with_val(prec, x - &cand).abs();
        if err <= *tol {
            return Some(cand);
        }
        let frac = Float::with_val(prec, &rem - &a);
        if frac.is_zero() {
            return None;
        }
        rem = frac.recip();
    }
    None
}

fn sqrt_candidate(x: &Float, bound: &Integer, ctx: &PrecisionContext) -> Option<ExactKind> {
    let prec = ctx.prec();
    let x2 = Float::with_val(prec, x.square_ref());
    let scale = Float::with_val(prec, x.abs_ref()) * 2u32 + 1u32;
    let tol = Float::with_val(prec, ctx.recognition_tolerance() * &scale);
    let r = rational_candidate(&x2, bound, &tol)?;
    if r <= 0 {
        return None;
    }
    if *x < 0 {
        // −√r = −f·√d
        let (f, d) = split_radical(&r)?;
        return Some(ExactKind::Affine { p: Rational::new(), q: -f, d });
    }
    Some(ExactKind::Sqrt(r))
}

/// √r = f·√d with d square-free, or None when r is a perfect square or d is
/// too large to be trusted.
fn split_radical(r: &Rational) -> Option<(Rational, u32)> {
    // √(a/b) = √(ab)/b
    let ab = Integer::from(r.numer() * r.denom());
    let (square, free) = square_free_split(&ab)?;
    if free == 1 {
        return None;
    }
    Some((Rational::from((square, r.denom().clone())), free))
}

/// n = s²·d with d square-free and d ≤ MAX_RADICAND; None when d exceeds it.
fn square_free_split(n: &Integer) -> Option<(Integer, u32)> {
    // d must divide n and n/d must be a perfect square
    for d in 1..=MAX_RADICAND {
        if !is_square_free(d) || !n.is_divisible_u(d) {
            continue;
        }
        let rest = Integer::from(n / d);
        if rest.is_perfect_square() {
            return Some((rest.sqrt(), d));
        }
    }
    None
}

fn is_square_free(d: u32) -> bool {
    let mut p = 2u32;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

fn affine_candidate(x: &Float, bound: &Integer, ctx: &PrecisionContext) -> Option<ExactKind> {
    let prec = ctx.prec();
    let [a, b, c] = quadratic_relation(x, ctx)?;
    if c == 0 || Integer::from(c.abs_ref()) > *bound {
        return None;
    }
    // residual of the relation must sit at the noise floor
    let xf = x.clone();
    let val = Float::with_val(prec, &c * Float::with_val(prec, xf.square_ref())) + Float::with_val(prec, &b * &xf) + &a;
    let scale = Float::with_val(prec, Integer::from(a.abs_ref()) + Integer::from(b.abs_ref()) + Integer::from(c.abs_ref()));
    if Float::with_val(prec, val.abs_ref()) > Float::with_val(prec, ctx.recognition_tolerance() * &scale) {
        return None;
    }
    let disc = Integer::from(b.square_ref()) - Integer::from(&a * &c) * 4u32;
    if disc <= 0 {
        return None;
    }
    let (f, d) = square_free_split(&disc)?;
    if d == 1 {
        return None;
    }
    // x = (−B ± f√d)/(2C); pick the sign nearest x
    let two_c = Integer::from(&c * 2u32);
    let p = Rational::from((Integer::from(-&b), two_c.clone()));
    let q_abs = Rational::from((f, two_c));
    let mut best = None;
    for q in [q_abs.clone(), -q_abs] {
        let kind = ExactKind::Affine { p: p.clone(), q, d };
        let err = Float::with_val(prec, kind.to_float(prec)? - x).abs();
        if best.as_ref().is_none_or(|(e, _): &(Float, ExactKind)| err < *e) {
            best = Some((err, kind));
        }
    }
    let (_, kind) = best?;
    if let ExactKind::Affine { p, q, .. } = &kind {
        if *p.denom() > *bound || *q.denom() > *bound {
            return None;
        }
    }
    Some(kind)
}

/// Short integer vector (A, B, C) with A + Bx + Cx² ≈ 0.
fn quadratic_relation(x: &Float, ctx: &PrecisionContext) -> Option<[Integer; 3]> {
    let prec = ctx.prec();
    let weight_bits = (ctx.working_bits() * 3 / 4) as i32;
    let w = Float::with_val(prec, Float::i_exp(1, weight_bits));
    let x2 = Float::with_val(prec, x.square_ref());
    let col = |v: Float| -> Option<Integer> { Float::with_val(prec, v * &w).round().to_integer() };
    let mut basis = vec![
        vec![Integer::from(1), Integer::new(), Integer::new(), col(Float::with_val(prec, 1))?],
        vec![Integer::new(), Integer::from(1), Integer::new(), col(x.clone())?],
        vec![Integer::new(), Integer::new(), Integer::from(1), col(x2)?],
    ];
    lll_reduce(&mut basis, 2 * prec);
    let v = basis.into_iter().next()?;
    Some([v[0].clone(), v[1].clone(), v[2].clone()])
}

/// In-place LLL reduction (δ = 3/4) of integer row vectors.
fn lll_reduce(basis: &mut [Vec<Integer>], prec: u32) {
    let n = basis.len();
    let gram_schmidt = |basis: &[Vec<Integer>]| -> (Vec<Vec<Float>>, Vec<Float>) {
        let mut star: Vec<Vec<Float>> = Vec::with_capacity(n);
        let mut mu = vec![vec![Float::new(prec); n]; n];
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<Float> = basis[i].iter().map(|c| Float::with_val(prec, c)).collect();
            for j in 0..i {
                let num: Float = basis[i]
                    .iter()
                    .zip(&star[j])
                    .map(|(a, b)| Float::with_val(prec, a * b))
                    .fold(Float::new(prec), |acc, t| acc + t);
                mu[i][j] = Float::with_val(prec, &num / &norms[j]);
                for (vk, sk) in v.iter_mut().zip(&star[j]) {
                    *vk -= Float::with_val(prec, &mu[i][j] * sk);
                }
            }
            let norm = v.iter().fold(Float::new(prec), |acc, t| acc + Float::with_val(prec, t.square_ref()));
            norms.push(norm);
            star.push(v);
        }
        (mu, norms)
    };
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 10_000 {
        guard += 1;
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(basis);
            let r = mu[k][j].clone().round().to_integer().unwrap_or_default();
            if r != 0 {
                let row_j = basis[j].clone();
                for (a, b) in basis[k].iter_mut().zip(&row_j) {
                    *a -= Integer::from(&r * b);
                }
            }
        }
        let (mu, norms) = gram_schmidt(basis);
        let lhs = Float::with_val(prec, &norms[k]);
        let rhs = Float::with_val(prec, Float::with_val(prec, 0.75) - Float::with_val(prec, mu[k][k - 1].square_ref())) * &norms[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}
