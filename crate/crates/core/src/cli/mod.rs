//! Command-line front end. `run` parses arguments, dispatches, writes text
//! or JSON to `out` and diagnostics to `err`, and returns the exit code.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage, 3 no solution in
//! the searched region.

mod render;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Float, Rational};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expansions::{extract_signature, ExpansionData};
use crate::hyperseries::{evaluate_components, relation_residuals, FamilyKind, SeriesFamily};
use crate::modular::theta;
use crate::numerics::{format_decimal, parse_rational, parse_sign, PrecisionContext};
use crate::qexpansion::{q_expansion, Scale};
use crate::solver::{probe_conjectures, solve_with, RamanujanSolution, SolveOptions};

pub use render::{DECIMAL_DIGITS, RESIDUAL_DIGITS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_SOLUTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ramanujan-jet", version, about = "Solve and recognize hypergeometric series for 1/pi and 1/pi^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Working precision in bits.
    #[arg(long, default_value_t = 256)]
    bits: u32,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Largest denominator accepted when recognizing values.
    #[arg(long, default_value_t = 1_000_000)]
    denominator_bound: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Residuals of the named component relations.
    Relations {
        #[arg(long)]
        family: String,
        /// Evaluation point; random points are drawn when absent.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Number of random points.
        #[arg(long, default_value_t = 5)]
        samples: usize,
        /// Seed for the random points.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Exact q-expansion coefficients.
    Mirror {
        #[arg(long)]
        family: String,
        /// Series truncation N.
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Solve for (q, z, a, b, c, tau, j) at a given k.
    Solve {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Branch sign; both are tried when absent.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Read (k, j, l) back from series data.
    Signature {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Comma-separated polynomial coefficients a, b, c, d.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Theta values and identity residuals at a nome q.
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[command(flatten)]
        common: Common,
    },
    /// Recognition outcomes over a grid of k.
    Probe {
        #[arg(long)]
        family: String,
        /// Comma-separated k values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        k: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

/// Exit code of a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Parse(_) | Error::Domain(_) | Error::Unsupported(_) | Error::Pole(_) => EXIT_USAGE,
        Error::NoSolution(_) | Error::OutOfRegion(_) => EXIT_NO_SOLUTION,
        _ => EXIT_NUMERIC,
    }
}

/// Outcome of a command: the record and whether its checks passed.
struct Report {
    value: Value,
    ok: bool,
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let json = match &cli.command {
        Command::Relations { common, .. }
        | Command::Mirror { common, .. }
        | Command::Solve { common, .. }
        | Command::Signature { common, .. }
        | Command::Theta { common, .. }
        | Command::Probe { common, .. } => common.json,
    };
    match dispatch(cli.command) {
        Ok(report) => {
            emit(&report.value, json, out);
            if report.ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: residual above threshold");
                EXIT_NUMERIC
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(v: &Value, json: bool, out: &mut dyn Write) {
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
    } else {
        let mut lines = Vec::new();
        render::lines(v, "", &mut lines);
        for l in lines {
            let _ = writeln!(out, "{l}");
        }
    }
}

fn context(common: &Common) -> Result<PrecisionContext> {
    PrecisionContext::new(common.bits)
}

/// Acceptance threshold for residuals: 2^-(working bits / 2).
fn threshold(ctx: &PrecisionContext) -> Float {
    ctx.recognition_tolerance().clone()
}

fn dispatch(command: Command) -> Result<Report> {
    match command {
        Command::Relations { family, z, samples, seed, common } => cmd_relations(&family, z.as_deref(), samples, seed, &common),
        Command::Mirror { family, order, common } => cmd_mirror(&family, order, &common),
        Command::Solve { family, k, u, common } => cmd_solve(&family, &k, u.as_deref(), &common),
        Command::Signature { family, z, poly, common } => cmd_signature(&family, &z, &poly, &common),
        Command::Theta { q, common } => cmd_theta(&q, &common),
        Command::Probe { family, k, u, common } => cmd_probe(&family, &k, u.as_deref(), &common),
    }
}

fn sign_of(z: &Rational) -> i32 {
    if *z < 0 {
        -1
    } else {
        1
    }
}

fn cmd_relations(family: &str, z: Option<&str>, samples: usize, seed: u64, common: &Common) -> Result<Report> {
    let ctx = context(common)?;
    let family = SeriesFamily::parse(family)?;
    if family.kind() == FamilyKind::F76 {
        return Err(Error::Unsupported("the 7F6 case has no component relations".into()));
    }
    let points: Vec<Rational> = match z {
        Some(text) => {
            let z = parse_rational(text)?;
            if Rational::from(z.abs_ref()) >= 1 {
                return Err(Error::Domain(format!("relations need |z| < 1, got {z}")));
            }
            vec![z]
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| {
                    let n: i64 = rng.gen_range(1..=900);
                    let sign = if rng.gen::<bool>() { 1 } else { -1 };
                    Rational::from((sign * n, 1000))
                })
                .collect()
        }
    };
    let limit = threshold(&ctx);
    let mut ok = true;
    let mut rows = Vec::new();
    for z in &points {
        let cv = evaluate_components(&family, &ctx.real(z), sign_of(z), &ctx)?;
        let report = relation_residuals(&cv);
        let failures = report.failures(&limit);
        ok &= failures.is_empty();
        let entries: Vec<(&str, Value)> = report
            .entries
            .iter()
            .map(|e| {
                let mut v = json!({ "residual": render::residual(&e.residual) });
                if let Some(s) = e.sign {
                    v["sign"] = json!(s);
                }
                (e.name, v)
            })
            .collect();
        rows.push(json!({
            "z": render::rational(z),
            "residuals": render::object(entries),
            "failures": failures,
        }));
    }
    let value = json!({
        "family": family.to_string(),
        "bits": common.bits,
        "threshold": render::residual(&limit),
        "points": rows,
    });
    Ok(Report { value, ok })
}

fn cmd_mirror(family: &str, order: usize, common: &Common) -> Result<Report> {
    let ctx = context(common)?;
    let family = SeriesFamily::parse(family)?;
    if order < 2 {
        return Err(Error::Config(format!("--order must be at least 2, got {order}")));
    }
    let qe = q_expansion(&family, order, &ctx)?;
    let scale = match &qe.mirror.scale {
        Scale::Rational(r) => render::rational(r),
        Scale::Numeric(x) => render::decimal(x, DECIMAL_DIGITS),
    };
    let h_name = if family.kind() == FamilyKind::F54 { "exp_h2" } else { "exp_h1" };
    let mut value = json!({
        "family": family.to_string(),
        "order": order,
        "exp_nu0": scale,
        h_name: render::series(&qe.mirror.exp_h),
        "q_tilde_of_z": render::series(&qe.mirror.q_tilde_of_z),
        "z_of_q_tilde": render::series(&qe.mirror.z_of_q_tilde),
    });
    if let Some(zq) = &qe.mirror.z_of_q {
        value["z_of_q"] = render::series(zq);
    }
    if let Some(tuk) = &qe.tuk {
        value["t"] = render::series(&tuk.t);
        value["u"] = render::series(&tuk.u);
        value["u_direct"] = render::series(&tuk.u_direct);
        value["k"] = render::series(&tuk.k);
    }
    Ok(Report { value, ok: true })
}

fn solution_json(sol: &RamanujanSolution, ctx: &PrecisionContext) -> Value {
    let sp = &sol.spectrum;
    let same_sign = |a: &Float, b: &Float| if (a.is_sign_negative()) == (b.is_sign_negative()) { 1 } else { -1 };
    let mut v = json!({
        "family": sol.family.to_string(),
        "u": sol.u,
        "k": render::rational(&sol.k),
        "tau2": render::recognized(&sol.tau2.exact, &sol.tau2.value),
        "tau": render::recognized(&sol.tau.exact, &sol.tau.value),
        "q": render::decimal(&sol.q, DECIMAL_DIGITS),
        "z": render::recognized(&sol.z.exact, &sol.z.value),
        "a": render::recognized(&sol.a.exact, &sol.a.value),
        "b": render::recognized(&sol.b.exact, &sol.b.value),
        "series_check": render::residual(&sol.series_check),
        "max_residual": render::residual(&sol.max_residual()),
        "bracket_count": sol.bracket_count,
        "nu0": render::decimal(&sp.nu0, DECIMAL_DIGITS),
        "nu0_closed_form_sign": same_sign(&sp.nu0, &sp.closed.nu0),
    });
    if let Some(c) = &sol.c {
        v["c"] = render::recognized(&c.exact, &c.value);
    }
    if let Some(j) = &sol.j {
        v["j"] = render::recognized(&j.exact, &j.value);
    }
    if let (Some(n2), Some(n2c)) = (&sp.nu2, &sp.closed.nu2) {
        v["nu2_closed_form_sign"] = json!(same_sign(n2, n2c));
    }
    if let Some(gap) = &sol.newton_bisection_gap {
        v["newton_bisection_gap"] = render::residual(gap);
    }
    let residuals: Vec<(&str, Value)> = sol.residuals.iter().map(|(n, r)| (n.as_str(), render::residual(r))).collect();
    v["residuals"] = render::object(residuals);
    v["bits"] = json!(ctx.working_bits());
    v
}

fn cmd_solve(family: &str, k: &str, u: Option<&str>, common: &Common) -> Result<Report> {
    let ctx = context(common)?;
    let family = SeriesFamily::parse(family)?;
    let k = parse_rational(k)?;
    let branches = match u {
        Some(text) => vec![parse_sign(text)?],
        None if family.kind() == FamilyKind::F54 => vec![-1, 1],
        None => vec![1, -1],
    };
    let opts = SolveOptions { denominator_bound: common.denominator_bound, ..SolveOptions::default() };
    let mut last = None;
    for u in branches {
        match solve_with(&family, &k, u, &opts, &ctx) {
            Ok(sol) => {
                let limit = threshold(&ctx);
                let ok = sol.max_residual() < limit && sol.series_check < limit;
                return Ok(Report { value: solution_json(&sol, &ctx), ok });
            }
            Err(e @ (Error::NoSolution(_) | Error::OutOfRegion(_))) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one branch was tried"))
}

fn cmd_signature(family: &str, z: &str, poly: &str, common: &Common) -> Result<Report> {
    let ctx = context(common)?;
    let family = SeriesFamily::parse(family)?;
    let z = parse_rational(z)?;
    let coeffs: Vec<Rational> = poly.split(',').map(|s| parse_rational(s.trim())).collect::<Result<_>>()?;
    let data = ExpansionData::exact(family.clone(), &z, &coeffs, &ctx)?;
    let sig = extract_signature(&data, common.denominator_bound, &ctx)?;
    let values: Vec<(&str, Value)> = sig
        .values
        .iter()
        .map(|v| (v.name, json!({ "exact": render::recognized(&v.exact, &v.value), "value": render::decimal(&v.value, DECIMAL_DIGITS) })))
        .collect();
    let value = json!({
        "family": family.to_string(),
        "z": render::rational(&z),
        "poly": coeffs.iter().map(render::rational).collect::<Vec<_>>(),
        "signature": render::object(values),
        "odd_residuals": sig.odd_residuals.iter().map(render::residual).collect::<Vec<_>>(),
        "scalar_residual": render::residual(&sig.scalar_residual),
    });
    Ok(Report { value, ok: true })
}

fn cmd_theta(q: &str, common: &Common) -> Result<Report> {
    let ctx = context(common)?;
    let q = ctx.real(&parse_rational(q)?);
    let th = theta(&q, &ctx)?;
    let limit = threshold(&ctx);
    let residuals = [
        ("jacobi", th.jacobi_residual()),
        ("derivative_34", th.derivative_residual_34()),
        ("derivative_23", th.derivative_residual_23()),
    ];
    let ok = residuals.iter().all(|(_, r)| *r < limit);
    let dec = |x: &Float| render::decimal(x, DECIMAL_DIGITS);
    let mut value = json!({
        "q": format_decimal(&q, DECIMAL_DIGITS),
        "theta2_4": dec(&th.theta2_4),
        "theta3": dec(&th.theta3),
        "theta4": dec(&th.theta4),
        "lambda": dec(&th.lambda()),
        "n_max": th.n_max,
        "residuals": render::object(residuals.iter().map(|(n, r)| (*n, render::residual(r))).collect()),
    });
    if let Some(t2) = &th.theta2 {
        value["theta2"] = dec(t2);
    }
    Ok(Report { value, ok })
}

fn cmd_probe(family: &str, ks: &[String], u: Option<&str>, common: &Common) -> Result<Report> {
    let ctx = context(common)?;
    let family = SeriesFamily::parse(family)?;
    let ks: Vec<Rational> = ks.iter().map(|k| parse_rational(k)).collect::<Result<_>>()?;
    let u = match u {
        Some(text) => parse_sign(text)?,
        None if family.kind() == FamilyKind::F54 => -1,
        None => 1,
    };
    let report = probe_conjectures(&family, &ks, u, &ctx);
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            let outcome = match &row.outcome {
                Ok(items) => {
                    let fields: Vec<(&str, Value)> =
                        items.iter().map(|(n, kind)| (*n, Value::String(kind.to_string()))).collect();
                    json!({ "recognized": render::object(fields), "fully_recognized": row.fully_recognized() })
                }
                Err(e) => json!({ "error": e.to_string() }),
            };
            json!({ "k": render::rational(&row.k), "u": row.u, "outcome": outcome })
        })
        .collect();
    Ok(Report { value: json!({ "family": family.to_string(), "rows": rows }), ok: true })
}
