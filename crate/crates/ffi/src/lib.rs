//! C ABI over the solver and signature extraction.
//!
//! Handles are opaque and owned by the caller once returned; each has a
//! matching `_free`. Every entry point returns an `RjStatus`. On failure the
//! message of the most recent error on the calling thread is available from
//! `rj_last_error_message` until the next failing call on that thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ramanujan_jet::expansions::{extract_signature, ExpansionData};
use ramanujan_jet::hyperseries::SeriesFamily;
use ramanujan_jet::numerics::{format_decimal, parse_rational, ExactKind, HPReal, PrecisionContext};
use ramanujan_jet::solver::{solve, RamanujanSolution, Solved};
use ramanujan_jet::Error;

/// Result of every call. The first variants mirror the library's error
/// classes; the rest are ABI-level failures.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RjStatus {
    Ok = 0,
    Config = 1,
    Domain = 2,
    Unsupported = 3,
    OrderMismatch = 4,
    TruncationMismatch = 5,
    NotInvertible = 6,
    Pole = 7,
    Divergence = 8,
    OutOfRegion = 9,
    NoSolution = 10,
    Inconsistent = 11,
    Parse = 12,
    NullArgument = 100,
    InvalidUtf8 = 101,
    BufferTooSmall = 102,
    Missing = 103,
    Panic = 199,
}

impl From<&Error> for RjStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Config(_) => RjStatus::Config,
            Error::Domain(_) => RjStatus::Domain,
            Error::Unsupported(_) => RjStatus::Unsupported,
            Error::OrderMismatch { .. } => RjStatus::OrderMismatch,
            Error::TruncationMismatch { .. } => RjStatus::TruncationMismatch,
            Error::NotInvertible => RjStatus::NotInvertible,
            Error::Pole(_) => RjStatus::Pole,
            Error::Divergence(_) => RjStatus::Divergence,
            Error::OutOfRegion(_) => RjStatus::OutOfRegion,
            Error::NoSolution(_) => RjStatus::NoSolution,
            Error::Inconsistent(_) => RjStatus::Inconsistent,
            Error::Parse(_) => RjStatus::Parse,
        }
    }
}

/// Solution fields readable through `rj_solution_value` and
/// `rj_solution_exact`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RjField {
    Z = 0,
    A = 1,
    B = 2,
    C = 3,
    Tau = 4,
    Tau2 = 5,
    J = 6,
    Q = 7,
    MaxResidual = 8,
    SeriesCheck = 9,
}

/// Working precision and recognition tolerance.
pub struct RjContext {
    inner: PrecisionContext,
}

/// One solved system.
pub struct RjSolution {
    inner: RamanujanSolution,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: RjStatus, msg: impl Into<String>) -> RjStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> RjStatus {
    let status = RjStatus::from(&e);
    fail(status, e.to_string())
}

/// Runs `body`, turning a panic into `RjStatus::Panic`.
fn guarded(body: impl FnOnce() -> RjStatus) -> RjStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(RjStatus::Panic, "internal panic"),
    }
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, RjStatus> {
    if s.is_null() {
        return Err(fail(RjStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(RjStatus::InvalidUtf8, "argument is not UTF-8"))
}

/// Copies `s` with a trailing NUL into `buf` of `len` bytes. `*needed`, when
/// non-null, receives the byte count including the NUL.
///
/// # Safety
/// `buf` is null or writable for `len` bytes; `needed` is null or writable.
unsafe fn write_out(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> RjStatus {
    let bytes = s.as_bytes();
    if !needed.is_null() {
        *needed = bytes.len() + 1;
    }
    if buf.is_null() || len < bytes.len() + 1 {
        return fail(RjStatus::BufferTooSmall, format!("{} bytes needed", bytes.len() + 1));
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), bytes.len());
    *buf.add(bytes.len()) = 0;
    RjStatus::Ok
}

/// Message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rj_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rj_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a context with `working_bits` of working precision (at least 64).
///
/// # Safety
/// `out` is a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn rj_context_new(working_bits: u32, out: *mut *mut RjContext) -> RjStatus {
    guarded(|| {
        if out.is_null() {
            return fail(RjStatus::NullArgument, "null output handle");
        }
        match PrecisionContext::new(working_bits) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(RjContext { inner }));
                RjStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `ctx` is null or a handle from `rj_context_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rj_context_free(ctx: *mut RjContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Solves the system for `family` (e.g. "5F4:1/2,1/2") at rational `k`
/// ("1", "3/2") with `u` = +1 or −1.
///
/// # Safety
/// `ctx` is a live context; `family` and `k` are NUL-terminated strings;
/// `out` is writable for one handle.
#[no_mangle]
pub unsafe extern "C" fn rj_solve(
    ctx: *const RjContext,
    family: *const c_char,
    k: *const c_char,
    u: c_int,
    out: *mut *mut RjSolution,
) -> RjStatus {
    guarded(|| {
        if ctx.is_null() || out.is_null() {
            return fail(RjStatus::NullArgument, "null context or output handle");
        }
        let (family, k) = match (text(family), text(k)) {
            (Ok(f), Ok(k)) => (f, k),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let result = SeriesFamily::parse(family)
            .and_then(|f| Ok((f, parse_rational(k)?)))
            .and_then(|(f, k)| solve(&f, &k, u, &(*ctx).inner));
        match result {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(RjSolution { inner }));
                RjStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `sol` is null or a handle from `rj_solve` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rj_solution_free(sol: *mut RjSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

fn solved_field(sol: &RamanujanSolution, field: RjField) -> Option<&Solved> {
    match field {
        RjField::Z => Some(&sol.z),
        RjField::A => Some(&sol.a),
        RjField::B => Some(&sol.b),
        RjField::C => sol.c.as_ref(),
        RjField::Tau => Some(&sol.tau),
        RjField::Tau2 => Some(&sol.tau2),
        RjField::J => sol.j.as_ref(),
        RjField::Q | RjField::MaxResidual | RjField::SeriesCheck => None,
    }
}

fn field_float(sol: &RamanujanSolution, field: RjField) -> Option<HPReal> {
    match field {
        RjField::Q => Some(sol.q.clone()),
        RjField::MaxResidual => Some(sol.max_residual()),
        RjField::SeriesCheck => Some(sol.series_check.clone()),
        _ => solved_field(sol, field).map(|s| s.value.clone()),
    }
}

/// A field rounded to double precision. c and j are Missing for ₃F₂.
///
/// # Safety
/// `sol` is a live solution; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rj_solution_value(sol: *const RjSolution, field: RjField, out: *mut f64) -> RjStatus {
    guarded(|| {
        if sol.is_null() || out.is_null() {
            return fail(RjStatus::NullArgument, "null solution or output");
        }
        match field_float(&(*sol).inner, field) {
            Some(x) => {
                *out = x.to_f64();
                RjStatus::Ok
            }
            None => fail(RjStatus::Missing, format!("{field:?} is not defined for this family")),
        }
    })
}

/// The recognized form of a field ("1/4", "sqrt(5)", "p + q*sqrt(d)"), or
/// its value to `digits` significant digits when unrecognized. Residual
/// fields are always written as decimals.
///
/// # Safety
/// `sol` is a live solution; `buf` is null or writable for `len` bytes;
/// `needed` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn rj_solution_exact(
    sol: *const RjSolution,
    field: RjField,
    digits: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> RjStatus {
    guarded(|| {
        if sol.is_null() {
            return fail(RjStatus::NullArgument, "null solution");
        }
        let sol = &(*sol).inner;
        let s = match (solved_field(sol, field), field_float(sol, field)) {
            (Some(v), _) if v.exact.kind != ExactKind::Unrecognized => v.exact.kind.to_string(),
            (_, Some(x)) => format_decimal(&x, digits.max(1)),
            _ => return fail(RjStatus::Missing, format!("{field:?} is not defined for this family")),
        };
        write_out(&s, buf, len, needed)
    })
}

/// 1 when every solved quantity was recognized exactly, else 0; −1 on a
/// null handle.
///
/// # Safety
/// `sol` is null or a live solution.
#[no_mangle]
pub unsafe extern "C" fn rj_solution_fully_recognized(sol: *const RjSolution) -> c_int {
    if sol.is_null() {
        return -1;
    }
    c_int::from((*sol).inner.fully_recognized())
}

/// Reads (k, j, l) back from Σ zⁿ Pₙ(X)(c₀ + c₁(nI+X) + …) for rational
/// `z` and comma-separated rational coefficients `poly`. `out` receives one
/// value per signature entry of the family (1, 2 or 3) and `*count` the
/// number written.
///
/// # Safety
/// `ctx` is live; `family`, `z`, `poly` are NUL-terminated; `out` is
/// writable for `cap` doubles; `count` is writable.
#[no_mangle]
pub unsafe extern "C" fn rj_signature(
    ctx: *const RjContext,
    family: *const c_char,
    z: *const c_char,
    poly: *const c_char,
    out: *mut f64,
    cap: usize,
    count: *mut usize,
) -> RjStatus {
    guarded(|| {
        if ctx.is_null() || out.is_null() || count.is_null() {
            return fail(RjStatus::NullArgument, "null context or output");
        }
        let ctx = &(*ctx).inner;
        let (family, z, poly) = match (text(family), text(z), text(poly)) {
            (Ok(f), Ok(z), Ok(p)) => (f, z, p),
            (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
        };
        let result = (|| {
            let family = SeriesFamily::parse(family)?;
            let z = parse_rational(z)?;
            let coeffs = poly.split(',').map(|c| parse_rational(c.trim())).collect::<Result<Vec<_>, _>>()?;
            let data = ExpansionData::exact(family, &z, &coeffs, ctx)?;
            extract_signature(&data, 1_000_000, ctx)
        })();
        match result {
            Ok(sig) => {
                if cap < sig.values.len() {
                    *count = sig.values.len();
                    return fail(RjStatus::BufferTooSmall, format!("{} values needed", sig.values.len()));
                }
                for (i, v) in sig.values.iter().enumerate() {
                    *out.add(i) = v.value.to_f64();
                }
                *count = sig.values.len();
                RjStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
