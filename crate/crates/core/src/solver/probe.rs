use std::thread;

use rug::{Float, Rational};

use super::{solve, solve_with, SolveOptions};
use crate::error::{Error, Result};
use crate::hyperseries::{FamilyKind, SeriesFamily};
use crate::numerics::{ExactKind, PrecisionContext};

/// Recognition outcomes of one grid point.
#[derive(Debug, Clone)]
pub struct ProbeRow {
    pub k: Rational,
    pub u: i32,
    /// (name, recognized form) per solved quantity, or the solve error.
    pub outcome: std::result::Result<Vec<(&'static str, ExactKind)>, Error>,
}

impl ProbeRow {
    pub fn fully_recognized(&self) -> bool {
        matches!(&self.outcome, Ok(v) if v.iter().all(|(_, k)| *k != ExactKind::Unrecognized))
    }
}

#[derive(Debug, Clone, Default)]
pub struct ProbeReport {
    pub family: Option<SeriesFamily>,
    pub rows: Vec<ProbeRow>,
}

/// Solves every grid point concurrently and records what recognizes.
/// Observational only: failures land in the rows, never in the result.
pub fn probe_conjectures(family: &SeriesFamily, ks: &[Rational], u: i32, ctx: &PrecisionContext) -> ProbeReport {
    let rows = thread::scope(|scope| {
        let handles: Vec<_> = ks
            .iter()
            .map(|k| {
                scope.spawn(move || {
                    let outcome = solve(family, k, u, ctx).map(|sol| {
                        let mut v = vec![
                            ("z", sol.z.exact.kind.clone()),
                            ("a", sol.a.exact.kind.clone()),
                            ("b", sol.b.exact.kind.clone()),
                            ("tau", sol.tau.exact.kind.clone()),
                        ];
                        if let Some(c) = &sol.c {
                            v.push(("c", c.exact.kind.clone()));
                        }
                        if let Some(j) = &sol.j {
                            v.push(("j", j.exact.kind.clone()));
                        }
                        v
                    });
                    ProbeRow { k: k.clone(), u, outcome }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("probe worker panicked")).collect()
    });
    ProbeReport { family: Some(family.clone()), rows }
}

/// τ against (q ln(uq)/2)·dk/dq, with dq/dk from a five-point stencil in k.
#[derive(Debug, Clone)]
pub struct CorollaryReport {
    pub tau: Float,
    pub dq_dk: Float,
    pub rhs: Float,
    pub residual: Float,
}

pub fn corollary_check(
    family: &SeriesFamily,
    k: &Rational,
    u: i32,
    h: &Rational,
    ctx: &PrecisionContext,
) -> Result<CorollaryReport> {
    if family.kind() != FamilyKind::F54 {
        return Err(Error::Unsupported("the k-derivative identity is stated for 5F4 families".into()));
    }
    let prec = ctx.prec();
    let base = solve(family, k, u, ctx)?;
    let opts = SolveOptions { cross_check: false, ..SolveOptions::default() };
    let q_at = |steps: i32| -> Result<Float> {
        let kk = k + Rational::from(h * steps) ;
        Ok(solve_with(family, &kk, u, &opts, ctx)?.q)
    };
    let (m2, m1, p1, p2) = (q_at(-2)?, q_at(-1)?, q_at(1)?, q_at(2)?);
    // (f(−2h) − 8f(−h) + 8f(h) − f(2h)) / 12h
    let num = Float::with_val(prec, &m2 - &p2) + Float::with_val(prec, &p1 - &m1) * 8u32;
    let dq_dk = num / Float::with_val(prec, Rational::from(h * 12u32));
    let q = &base.q;
    let log_rho = Float::with_val(prec, q * u).ln();
    let rhs = Float::with_val(prec, q * &log_rho) / 2u32 / &dq_dk;
    let residual = Float::with_val(prec, &base.tau.value - &rhs).abs();
    Ok(CorollaryReport { tau: base.tau.value, dq_dk, rhs, residual })
}
