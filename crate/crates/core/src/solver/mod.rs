//! Solving the ₃F₂ and ₅F₄ systems for (q, z, a, b, c, τ, j).
//!
//! Roots are located in t = ln(uz), where every component is summed
//! numerically at full precision. A coarse scan brackets sign changes,
//! bisection and Newton refine them independently, and the two results are
//! compared.

mod probe;
mod roots;
mod spectrum;

use rug::ops::Pow;
use rug::{Float, Rational};

pub use probe::{corollary_check, probe_conjectures, CorollaryReport, ProbeReport, ProbeRow};
pub use spectrum::{cot_sq_exact, m_spectrum, p_at_zero, target_jet, ClosedForms, MSpectrum};

use crate::error::{Error, Result};
use crate::hyperseries::{evaluate_components, ComponentVector, FamilyKind, SeriesFamily};
use crate::jet::{pow_base, Jet};
use crate::numerics::{recognize, Constants, PrecisionContext, RecognitionMode, RecognizedConstant};
use crate::qexpansion::{eval_series, mirror_map, Scale};
use roots::{bisect, newton, scan_brackets, Equation};

/// Largest |uq| searched.
pub const RHO_MAX: f64 = 0.05;
/// Smallest |uq| searched below 512 working bits.
pub const RHO_MIN: f64 = 1e-8;
/// Smallest |uq| searched at 512 working bits and above.
pub const RHO_MIN_HIGH: f64 = 1e-12;
/// Largest |z| reached by the scan.
const SCAN_ABS_Z: f64 = 0.94;
const SCAN_POINTS: usize = 96;
const SCAN_BITS: u32 = 64;
const SEED_TRUNCATION: usize = 12;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub denominator_bound: u64,
    /// Run bisection alongside Newton and report their gap.
    pub cross_check: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { denominator_bound: 1_000_000, cross_check: true }
    }
}

/// A numeric value with its recognition outcome.
#[derive(Debug, Clone)]
pub struct Solved {
    pub value: Float,
    pub exact: RecognizedConstant,
}

impl Solved {
    fn new(value: Float, mode: RecognitionMode, bound: u64, ctx: &PrecisionContext) -> Self {
        let exact = recognize(&value, bound, mode, ctx);
        Self { value, exact }
    }
}

#[derive(Debug, Clone)]
pub struct RamanujanSolution {
    pub family: SeriesFamily,
    pub u: i32,
    pub k: Rational,
    /// ₅F₄ only.
    pub j: Option<Solved>,
    pub tau: Solved,
    pub tau2: Solved,
    pub q: Float,
    pub z: Solved,
    pub a: Solved,
    pub b: Solved,
    /// ₅F₄ only.
    pub c: Option<Solved>,
    pub residuals: Vec<(String, Float)>,
    /// |Σ zⁿ Pₙ(0)(a + bn + cn²) − 1/π^m| by plain scalar summation.
    pub series_check: Float,
    /// Sign changes found in the searched region.
    pub bracket_count: usize,
    /// |t_Newton − t_bisection| when both ran.
    pub newton_bisection_gap: Option<Float>,
    pub spectrum: MSpectrum,
}

impl RamanujanSolution {
    pub fn residual(&self, name: &str) -> Option<&Float> {
        self.residuals.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn max_residual(&self) -> Float {
        let prec = self.z.value.prec();
        self.residuals.iter().fold(Float::new(prec), |acc, (_, r)| if *r > acc { r.clone() } else { acc })
    }

    /// True when z, a, b, τ (and c, j for ₅F₄) all recognized.
    pub fn fully_recognized(&self) -> bool {
        let base = [&self.z, &self.a, &self.b, &self.tau].iter().all(|s| s.exact.is_recognized());
        base && self.c.as_ref().is_none_or(|c| c.exact.is_recognized())
            && self.j.as_ref().is_none_or(|j| j.exact.is_recognized())
    }
}

pub fn solve(family: &SeriesFamily, k: &Rational, u: i32, ctx: &PrecisionContext) -> Result<RamanujanSolution> {
    solve_with(family, k, u, &SolveOptions::default(), ctx)
}

pub fn solve_with(
    family: &SeriesFamily,
    k: &Rational,
    u: i32,
    opts: &SolveOptions,
    ctx: &PrecisionContext,
) -> Result<RamanujanSolution> {
    if u != 1 && u != -1 {
        return Err(Error::Domain(format!("u must be +1 or -1, got {u}")));
    }
    match family.kind() {
        FamilyKind::F32 => solve_f32(family, k, u, opts, ctx),
        FamilyKind::F54 => solve_f54(family, k, u, opts, ctx),
        FamilyKind::F76 => Err(Error::Unsupported("the 7F6 case has no solver".into())),
    }
}

pub fn solve_3f2(s: &Rational, k: &Rational, u: i32, ctx: &PrecisionContext) -> Result<RamanujanSolution> {
    solve(&SeriesFamily::f32(s.clone())?, k, u, ctx)
}

pub fn solve_5f4(s: &Rational, t: &Rational, k: &Rational, u: i32, ctx: &PrecisionContext) -> Result<RamanujanSolution> {
    solve(&SeriesFamily::f54(s.clone(), t.clone())?, k, u, ctx)
}

fn z_of_t(t: &Float, u: i32, prec: u32) -> Float {
    Float::with_val(prec, t.exp_ref()) * u
}

/// ₃F₂: t + H₁(z) − ν₀ − ln(uq) with ln(uq) = −πτ fixed.
struct F32Equation<'a> {
    family: &'a SeriesFamily,
    u: i32,
    nu0: Float,
    log_rho: Float,
}

impl F32Equation<'_> {
    fn eval(&self, t: &Float, ctx: &PrecisionContext, slope: bool) -> Result<(Float, Float)> {
        let prec = ctx.prec();
        let cv = evaluate_components(self.family, &z_of_t(t, self.u, prec), self.u, ctx)?;
        let (a, b) = (cv.a(), cv.b());
        let h1 = Float::with_val(prec, &a[1] / &a[0]);
        let value = Float::with_val(prec, t + &h1) - &self.nu0 - &self.log_rho;
        let d = if slope {
            let det = Float::with_val(prec, &a[0] * &b[1]) - Float::with_val(prec, &a[1] * &b[0]);
            det / Float::with_val(prec, a[0].square_ref())
        } else {
            ctx.real(0)
        };
        Ok((value, d))
    }
}

impl Equation for F32Equation<'_> {
    fn value(&self, t: &Float, ctx: &PrecisionContext) -> Result<Float> {
        Ok(self.eval(t, ctx, false)?.0)
    }

    fn value_and_slope(&self, t: &Float, ctx: &PrecisionContext) -> Result<(Float, Float)> {
        self.eval(t, ctx, true)
    }
}

/// Derived ₅F₄ quantities at one z, with uⱼ = a₀bⱼ − aⱼb₀, vⱼ = a₀cⱼ − aⱼc₀.
struct F54Point {
    cv: ComponentVector,
    h2: Float,
    h1: Float,
    j: Float,
    /// ln(uq)
    l: Float,
    /// T = H₂³/6 − H₀
    t_val: Float,
    /// z dH₂/dz and z dH₀/dz
    zh2: Float,
    zh0: Float,
}

fn f54_point(family: &SeriesFamily, t: &Float, u: i32, nu0: &Float, ctx: &PrecisionContext) -> Result<F54Point> {
    let prec = ctx.prec();
    let cv = evaluate_components(family, &z_of_t(t, u, prec), u, ctx)?;
    let (a, b, c) = (cv.a(), cv.b(), cv.c().expect("5F4 carries C"));
    let mul = |x: &Float, y: &Float| Float::with_val(prec, x * y);
    let uu: Vec<Float> = (0..5).map(|j| mul(&a[0], &b[j]) - mul(&a[j], &b[0])).collect();
    let vv: Vec<Float> = (0..5).map(|j| mul(&a[0], &c[j]) - mul(&a[j], &c[0])).collect();
    let u1 = &uu[1];
    let h2 = Float::with_val(prec, &uu[2] / u1);
    let h1 = Float::with_val(prec, &uu[3] / u1);
    let h0 = Float::with_val(prec, &uu[4] / u1);
    let j = (mul(&a[1], &b[2]) - mul(&a[2], &b[1])) / u1;
    let l = Float::with_val(prec, t + &h2) - nu0;
    let h2_cubed = Float::with_val(prec, h2.square_ref()) * &h2;
    let t_val = h2_cubed / 6u32 - &h0;
    // z uⱼ′ = vⱼ − uⱼ₋₁
    let u1_sq = mul(u1, u1);
    let zh2 = ((Float::with_val(prec, &vv[2] - u1) * u1) - mul(&uu[2], &vv[1])) / &u1_sq;
    let zh0 = ((Float::with_val(prec, &vv[4] - &uu[3]) * u1) - mul(&uu[4], &vv[1])) / &u1_sq;
    Ok(F54Point { cv, h2, h1, j, l, t_val, zh2, zh0 })
}

impl F54Point {
    fn dl_dt(&self) -> Float {
        Float::with_val(self.l.prec(), &self.zh2 + 1u32)
    }

    fn dt_dt(&self) -> Float {
        let prec = self.l.prec();
        Float::with_val(prec, self.h2.square_ref()) / 2u32 * &self.zh2 - &self.zh0
    }
}

/// ₅F₄: L³/6 − ν₁L − ν₂ − T.
struct F54Equation<'a> {
    family: &'a SeriesFamily,
    u: i32,
    nu: [Float; 3],
}

impl F54Equation<'_> {
    fn eval(&self, t: &Float, ctx: &PrecisionContext) -> Result<(F54Point, Float, Float)> {
        let prec = ctx.prec();
        let nu: Vec<Float> = self.nu.iter().map(|x| ctx.real(x)).collect();
        let p = f54_point(self.family, t, self.u, &nu[0], ctx)?;
        let l2 = Float::with_val(prec, p.l.square_ref());
        let l3 = Float::with_val(prec, &l2 * &p.l);
        let value = l3 / 6u32 - Float::with_val(prec, &nu[1] * &p.l) - &nu[2] - &p.t_val;
        let slope = (l2 / 2u32 - &nu[1]) * p.dl_dt() - p.dt_dt();
        Ok((p, value, slope))
    }
}

impl Equation for F54Equation<'_> {
    fn value(&self, t: &Float, ctx: &PrecisionContext) -> Result<Float> {
        Ok(self.eval(t, ctx)?.1)
    }

    fn value_and_slope(&self, t: &Float, ctx: &PrecisionContext) -> Result<(Float, Float)> {
        let (_, v, d) = self.eval(t, ctx)?;
        Ok((v, d))
    }
}

fn scan_context() -> PrecisionContext {
    PrecisionContext::new(SCAN_BITS).expect("scan precision is valid")
}

pub fn rho_min(ctx: &PrecisionContext) -> f64 {
    if ctx.working_bits() >= 512 {
        RHO_MIN_HIGH
    } else {
        RHO_MIN
    }
}

/// t-range whose |uq| covers [RHO_MIN, RHO_MAX] and whose |z| stays below 0.94.
fn scan_range(nu0: &Float, rho_min: f64) -> (f64, f64) {
    let lo = rho_min.ln() + nu0.to_f64() - 2.0;
    (lo, SCAN_ABS_Z.ln())
}

/// Root t from a bracket, refined by bisection and Newton from `seed`.
fn refine<E: Equation>(
    eq: &E,
    bracket: &(Float, Float),
    seed: Option<Float>,
    opts: &SolveOptions,
    ctx: &PrecisionContext,
) -> Result<(Float, Option<Float>)> {
    let prec = ctx.prec();
    let lo = ctx.real(&bracket.0);
    let hi = ctx.real(&bracket.1);
    let mid = Float::with_val(prec, &lo + &hi) / 2u32;
    let seed = seed.unwrap_or(mid);
    let via_newton = newton(eq, &seed, None, ctx);
    if !opts.cross_check {
        return match via_newton {
            Ok(t) => Ok((t, None)),
            Err(_) => Ok((bisect(eq, &lo, &hi, ctx)?, None)),
        };
    }
    let via_bisection = bisect(eq, &lo, &hi, ctx)?;
    match via_newton {
        Ok(t) => {
            let gap = Float::with_val(prec, &t - &via_bisection).abs();
            Ok((t, Some(gap)))
        }
        Err(_) => Ok((via_bisection, None)),
    }
}

fn solve_f32(
    family: &SeriesFamily,
    k: &Rational,
    u: i32,
    opts: &SolveOptions,
    ctx: &PrecisionContext,
) -> Result<RamanujanSolution> {
    let prec = ctx.prec();
    let consts = Constants::new(ctx);
    let spectrum = m_spectrum(family, k, None, ctx)?;
    if spectrum.tau2 <= 0 {
        return Err(Error::Domain(format!("k + 1 + cot^2(pi s) must be positive, k = {k}")));
    }
    let tau = Float::with_val(prec, spectrum.tau2.sqrt_ref());
    let log_rho = -Float::with_val(prec, &consts.pi * &tau);
    let rho = Float::with_val(prec, log_rho.exp_ref());
    check_rho(&rho)?;
    let q = Float::with_val(prec, &rho * u);

    let eq = F32Equation { family, u, nu0: spectrum.nu0.clone(), log_rho: log_rho.clone() };
    // t ≈ ln(uq) + ν₀ − H₁ with |H₁| small
    let lo = log_rho.to_f64() + spectrum.nu0.to_f64() - 3.0;
    let hi = SCAN_ABS_Z.ln();
    let brackets = scan_brackets(&eq, lo, hi, SCAN_POINTS, &scan_context())?;
    let Some(bracket) = brackets.first() else {
        return Err(Error::Divergence(format!(
            "the root for q = {} lies beyond the evaluation radius |z| < {SCAN_ABS_Z}",
            q.to_string_radix(10, Some(12))
        )));
    };
    let seed = mirror_seed(family, &q, u, ctx);
    let (t, gap) = refine(&eq, bracket, seed, opts, ctx)?;
    let z = z_of_t(&t, u, prec);
    let cv = evaluate_components(family, &z, u, ctx)?;
    let (av, bv) = (cv.a(), cv.b());

    let sqrt_1mz = Float::with_val(prec, 1 - &z).sqrt();
    let b = Float::with_val(prec, &tau * &sqrt_1mz);
    let pi_inv = Float::with_val(prec, consts.pi.recip_ref());
    let a = (pi_inv - Float::with_val(prec, &b * &bv[0])) / &av[0];

    let m = actual_m(&spectrum, &ctx.real(0), &z, u, ctx)?;
    let mut residuals = rows(&cv, &[&a, &b], &m, prec);
    let b_identity = Float::with_val(prec, b.square_ref()) / Float::with_val(prec, 1 - &z) - &spectrum.tau2;
    residuals.push(("b-identity".into(), b_identity.abs()));
    let series_check = scalar_series_check(family, &z, &[&a, &b], &consts, ctx)?;

    let bound = opts.denominator_bound;
    let quad = RecognitionMode::Quadratic;
    Ok(RamanujanSolution {
        family: family.clone(),
        u,
        k: k.clone(),
        j: None,
        tau: Solved::new(tau, quad, bound, ctx),
        tau2: Solved::new(spectrum.tau2.clone(), RecognitionMode::Rational, bound, ctx),
        q,
        z: Solved::new(z, quad, bound, ctx),
        a: Solved::new(a, quad, bound, ctx),
        b: Solved::new(b, quad, bound, ctx),
        c: None,
        residuals,
        series_check,
        bracket_count: brackets.len(),
        newton_bisection_gap: gap,
        spectrum,
    })
}

fn check_rho(rho: &Float) -> Result<()> {
    if *rho > RHO_MAX {
        return Err(Error::OutOfRegion(format!("|q| = {} exceeds {RHO_MAX}", rho.to_string_radix(10, Some(8)))));
    }
    Ok(())
}

/// z(q) from the truncated reversion, as a Newton seed in t.
fn mirror_seed(family: &SeriesFamily, q: &Float, u: i32, ctx: &PrecisionContext) -> Option<Float> {
    let map = mirror_map(family, SEED_TRUNCATION, ctx).ok()?;
    let z = match &map.scale {
        Scale::Rational(_) => eval_series(map.z_series(), q),
        Scale::Numeric(c) => eval_series(&map.z_of_q_tilde, &Float::with_val(ctx.prec(), q * c)),
    };
    let w = Float::with_val(ctx.prec(), &z * u);
    (w > 0 && w < SCAN_ABS_Z).then(|| w.ln())
}

/// (uz)^{−X} · m̂ at the given j.
fn actual_m(spectrum: &MSpectrum, j: &Float, z: &Float, u: i32, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    let w = Float::with_val(ctx.prec(), z * u);
    let power = pow_base(&w, -1, spectrum.m.len(), ctx)?;
    Ok(power.try_mul(&Jet::new(spectrum.m_at(j)))?.into_coeffs())
}

/// |Σ_k (component k)ᵢ · coefficient_k − mᵢ| for every row i.
fn rows(cv: &ComponentVector, coeffs: &[&Float], m: &[Float], prec: u32) -> Vec<(String, Float)> {
    (0..m.len())
        .map(|i| {
            let mut lhs = Float::new(prec);
            for (comp, x) in cv.components.iter().zip(coeffs) {
                lhs += Float::with_val(prec, comp.coeff(i) * *x);
            }
            (format!("row{i}"), Float::with_val(prec, &lhs - &m[i]).abs())
        })
        .collect()
}

/// Plain scalar sum Σ zⁿ Π(p)ₙ/n!^d (a + bn + cn²) against 1/π^m.
fn scalar_series_check(
    family: &SeriesFamily,
    z: &Float,
    coeffs: &[&Float],
    consts: &Constants,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let prec = ctx.prec();
    let params = family.params();
    let cut = ctx.pow2_neg(prec + 8);
    let mut term = ctx.real(1);
    let mut sum = ctx.real(0);
    for n in 0..1_000_000u32 {
        let mut poly = ctx.real(0);
        for c in coeffs.iter().rev() {
            poly = poly * n + *c;
        }
        let contribution = Float::with_val(prec, &term * &poly);
        sum += &contribution;
        if n > 20 && contribution.abs() < cut {
            let target = Float::with_val(prec, consts.pi.clone().pow(family.pi_power())).recip();
            return Ok(Float::with_val(prec, &sum - &target).abs());
        }
        for p in &params {
            term *= Float::with_val(prec, Rational::from(p + n));
        }
        term /= Float::with_val(prec, n + 1).pow(family.order() as u32);
        term *= z;
    }
    Err(Error::Divergence("scalar series did not settle".into()))
}

fn solve_f54(
    family: &SeriesFamily,
    k: &Rational,
    u: i32,
    opts: &SolveOptions,
    ctx: &PrecisionContext,
) -> Result<RamanujanSolution> {
    let prec = ctx.prec();
    let consts = Constants::new(ctx);
    let spectrum = m_spectrum(family, k, None, ctx)?;
    let nu1 = spectrum.nu1.clone().expect("5F4 has nu1");
    let nu2 = spectrum.nu2.clone().expect("5F4 has nu2");
    let eq = F54Equation { family, u, nu: [spectrum.nu0.clone(), nu1.clone(), nu2] };

    let (lo, hi) = scan_range(&spectrum.nu0, rho_min(ctx));
    let scan_ctx = scan_context();
    let in_region = |t: &Float| -> Result<bool> {
        let p = f54_point(family, t, u, &scan_ctx.real(&spectrum.nu0), &scan_ctx)?;
        let rho = p.l.to_f64().exp();
        Ok((rho_min(ctx)..=RHO_MAX).contains(&rho))
    };
    let mut brackets = Vec::new();
    for br in scan_brackets(&eq, lo, hi, SCAN_POINTS, &scan_ctx)? {
        if in_region(&br.0)? || in_region(&br.1)? {
            brackets.push(br);
        }
    }
    let Some(bracket) = brackets.first() else {
        return Err(Error::NoSolution(format!(
            "no root of the q-equation for {family}, k = {k}, u = {u} with |q| in [{}, {RHO_MAX}]", rho_min(ctx)
        )));
    };
    let (t, gap) = refine(&eq, bracket, None, opts, ctx)?;
    let (p, _, _) = eq.eval(&t, ctx)?;
    let rho = Float::with_val(prec, p.l.exp_ref());
    check_rho(&rho)?;
    let q = Float::with_val(prec, &rho * u);
    let z = p.cv.z.clone();

    // π²τ + ν₁ = L²/2 − U with U = H₁ − J
    let pi2 = Float::with_val(prec, consts.pi.square_ref());
    let u_val = Float::with_val(prec, &p.h1 - &p.j);
    let tau = (Float::with_val(prec, p.l.square_ref()) / 2u32 - &u_val - &nu1) / &pi2;
    let tau2 = Float::with_val(prec, tau.square_ref());
    let j = spectrum.j_for_tau2(&tau2);
    let j_closed = Float::with_val(prec, &tau2 - &spectrum.closed.tau2) * 12u32;

    let sqrt_1mz = Float::with_val(prec, 1 - &z).sqrt();
    let c = Float::with_val(prec, &tau * &sqrt_1mz);
    let m = actual_m(&spectrum, &j, &z, u, ctx)?;
    let (av, bv, cvv) = (p.cv.a(), p.cv.b(), p.cv.c().expect("5F4 carries C"));
    let r0 = Float::with_val(prec, &m[0] - Float::with_val(prec, &cvv[0] * &c));
    let r1 = Float::with_val(prec, &m[1] - Float::with_val(prec, &cvv[1] * &c));
    let det = Float::with_val(prec, &av[0] * &bv[1]) - Float::with_val(prec, &av[1] * &bv[0]);
    let a = (Float::with_val(prec, &r0 * &bv[1]) - Float::with_val(prec, &r1 * &bv[0])) / &det;
    let b = (Float::with_val(prec, &av[0] * &r1) - Float::with_val(prec, &av[1] * &r0)) / &det;

    let mut residuals = rows(&p.cv, &[&a, &b, &c], &m, prec);
    let u_from_t = p.dt_dt() / p.dl_dt();
    residuals.push(("U-consistency".into(), Float::with_val(prec, &u_from_t - &u_val).abs()));
    residuals.push(("j-closed-form".into(), Float::with_val(prec, &j - &j_closed).abs()));
    let threshold = ctx.recognition_tolerance();
    for (name, r) in &residuals[2..5] {
        if r > threshold {
            return Err(Error::Inconsistent(format!("{name} residual {} exceeds the threshold", r.to_string_radix(10, Some(6)))));
        }
    }
    let series_check = scalar_series_check(family, &z, &[&a, &b, &c], &consts, ctx)?;

    let bound = opts.denominator_bound;
    let quad = RecognitionMode::Quadratic;
    let rat = RecognitionMode::Rational;
    Ok(RamanujanSolution {
        family: family.clone(),
        u,
        k: k.clone(),
        j: Some(Solved::new(j, rat, bound, ctx)),
        tau: Solved::new(tau, quad, bound, ctx),
        tau2: Solved::new(tau2, rat, bound, ctx),
        q,
        z: Solved::new(z, quad, bound, ctx),
        a: Solved::new(a, quad, bound, ctx),
        b: Solved::new(b, quad, bound, ctx),
        c: Some(Solved::new(c, quad, bound, ctx)),
        residuals,
        series_check,
        bracket_count: brackets.len(),
        newton_bisection_gap: gap,
        spectrum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ExactKind;

    fn r(p: i64, q: i64) -> Rational {
        Rational::from((p, q))
    }

    #[test]
    fn f32_half_k2() {
        let ctx = PrecisionContext::default();
        let sol = solve_3f2(&r(1, 2), &r(2, 1), 1, &ctx).unwrap();
        assert_eq!(sol.z.exact.kind, ExactKind::Rational(r(1, 4)));
        assert_eq!(sol.a.exact.kind, ExactKind::Rational(r(1, 4)));
        assert_eq!(sol.b.exact.kind, ExactKind::Rational(r(3, 2)));
        assert_eq!(sol.tau.exact.kind, ExactKind::Sqrt(r(3, 1)));
        assert!(sol.series_check < 1e-60);
        assert!(sol.max_residual() < 1e-60, "{:?}", sol.residuals);
    }

    #[test]
    fn f54_half_half_k1() {
        let ctx = PrecisionContext::default();
        let sol = solve_5f4(&r(1, 2), &r(1, 2), &r(1, 1), -1, &ctx).unwrap();
        assert_eq!(sol.z.exact.kind, ExactKind::Rational(r(-1, 4)));
        assert_eq!(sol.a.exact.kind, ExactKind::Rational(r(1, 8)));
        assert_eq!(sol.b.exact.kind, ExactKind::Rational(r(1, 1)));
        assert_eq!(sol.c.as_ref().unwrap().exact.kind, ExactKind::Rational(r(5, 2)));
        assert_eq!(sol.j.as_ref().unwrap().exact.kind, ExactKind::Rational(r(25, 1)));
        assert_eq!(sol.tau.exact.kind, ExactKind::Sqrt(r(5, 1)));
        assert!(sol.series_check < 1e-60);
        assert!(sol.max_residual() < 1e-60, "{:?}", sol.residuals);
        assert!(sol.newton_bisection_gap.unwrap() < 1e-60);
    }

    #[test]
    fn f54_half_half_k5() {
        let ctx = PrecisionContext::default();
        let sol = solve_5f4(&r(1, 2), &r(1, 2), &r(5, 1), -1, &ctx).unwrap();
        assert_eq!(sol.z.exact.kind, ExactKind::Rational(r(-1, 1024)));
        assert_eq!(sol.a.exact.kind, ExactKind::Rational(r(13, 128)));
        assert_eq!(sol.b.exact.kind, ExactKind::Rational(r(45, 32)));
        assert_eq!(sol.c.as_ref().unwrap().exact.kind, ExactKind::Rational(r(205, 32)));
        assert_eq!(sol.j.as_ref().unwrap().exact.kind, ExactKind::Rational(r(305, 1)));
        assert_eq!(sol.tau.exact.kind, ExactKind::Sqrt(r(41, 1)));
    }

    /// The positive branch at k = 1 has a root that satisfies every row but
    /// does not recognize.
    #[test]
    fn f54_positive_branch_is_consistent_but_unrecognized() {
        let ctx = PrecisionContext::default();
        let sol = solve_5f4(&r(1, 2), &r(1, 2), &r(1, 1), 1, &ctx).unwrap();
        assert!(sol.max_residual() < 1e-60);
        assert!(!sol.z.exact.is_recognized());
        assert_eq!(sol.bracket_count, 1);
    }

    #[test]
    fn out_of_region_and_refusal() {
        let ctx = PrecisionContext::default();
        // τ = 1 gives |q| = e^{−π} inside the q-region but z = 1 outside the z-disc
        let err = solve_3f2(&r(1, 2), &r(0, 1), 1, &ctx).unwrap_err();
        assert!(matches!(err, Error::Divergence(_)), "{err:?}");
        // k = −1 + small makes |q| > 0.05
        let err = solve_3f2(&r(1, 2), &r(-9, 10), 1, &ctx).unwrap_err();
        assert!(matches!(err, Error::OutOfRegion(_)), "{err:?}");
    }
}
