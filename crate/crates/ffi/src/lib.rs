//! C ABI over `exptail`.
//!
//! Handles are opaque and owned by the caller once returned; each has a
//! matching `_free`. Every entry point returns an [`ExptailStatus`]. On any
//! status other than `EXPTAIL_OK` a message is kept per thread and can be read
//! with [`exptail_last_error_message`].
//!
//! Real arguments and results travel as decimal strings so that no digits are
//! lost to `double`. Output strings are written into caller buffers; when the
//! buffer is too small the call fails with `EXPTAIL_BUFFER_TOO_SMALL` and
//! reports the required size (including the terminating NUL) in `needed`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use exptail::cli::{render_sweep, Format};
use exptail::inequalities::{
    evaluate_check, sweep, CheckId, CheckKind, CheckResult, ParamGrid, Params, Status, SweepReport,
    TestFunction,
};
use exptail::{pade, remainders, Error, PrecisionContext, Real};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExptailStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidString = 2,
    Usage = 3,
    Domain = 4,
    NoConvergence = 5,
    Pole = 6,
    Degenerate = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Outcome of a single inequality check.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExptailCheckStatus {
    Pass = 0,
    Fail = 1,
    Indeterminate = 2,
}

/// Report serialization.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExptailFormat {
    Json = 0,
    Csv = 1,
    Text = 2,
}

/// Working precision and tolerance.
pub struct ExptailContext {
    ctx: PrecisionContext,
}

/// Result of one check.
pub struct ExptailCheck {
    result: CheckResult,
    ctx: PrecisionContext,
}

/// Result of a sweep over a grid.
pub struct ExptailReport {
    report: SweepReport,
    ctx: PrecisionContext,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ExptailStatus {
    match e {
        Error::Usage(_) => ExptailStatus::Usage,
        Error::Domain { .. } => ExptailStatus::Domain,
        Error::Pole { .. } => ExptailStatus::Pole,
        Error::Degenerate { .. } => ExptailStatus::Degenerate,
        Error::Path { source, .. } => status_of(source),
        Error::NoConvergence { .. } | Error::Sharpness { .. } => ExptailStatus::NoConvergence,
    }
}

struct Failure(ExptailStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> ExptailStatus {
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".to_string());
        Err(Failure(ExptailStatus::Panic, msg))
    });
    match res {
        Ok(()) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ExptailStatus::Ok
        }
        Err(Failure(status, msg)) => {
            set_error(&msg);
            status
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(ExptailStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ExptailStatus::InvalidString, format!("{what} is not UTF-8")))
}

unsafe fn ctx_arg<'a>(p: *const ExptailContext) -> Result<&'a PrecisionContext, Failure> {
    p.as_ref().map(|c| &c.ctx).ok_or_else(|| null("context"))
}

unsafe fn write_str(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Outcome {
    let size = s.len() + 1;
    if !needed.is_null() {
        *needed = size;
    }
    if buf.is_null() || len < size {
        return Err(Failure(
            ExptailStatus::BufferTooSmall,
            format!("buffer holds {len} bytes, {size} needed"),
        ));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

unsafe fn write_real(
    ctx: &PrecisionContext,
    v: &Real,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
    approx: *mut f64,
) -> Outcome {
    if !approx.is_null() {
        *approx = v.to_f64();
    }
    write_str(&ctx.format(v), buf, len, needed)
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next `exptail_*` call on the same thread.
#[no_mangle]
pub extern "C" fn exptail_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Create a context with `bits` of precision (53 to 1000) and the default
/// tolerance.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn exptail_context_new(
    bits: u32,
    out: *mut *mut ExptailContext,
) -> ExptailStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ctx = PrecisionContext::new(bits)?;
        *out = Box::into_raw(Box::new(ExptailContext { ctx }));
        Ok(())
    })
}

/// # Safety
/// `ctx` must be NULL or a handle from [`exptail_context_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn exptail_context_free(ctx: *mut ExptailContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be a live context handle.
#[no_mangle]
pub unsafe extern "C" fn exptail_context_bits(ctx: *const ExptailContext) -> u32 {
    ctx.as_ref().map_or(0, |c| c.ctx.bits())
}

unsafe fn eval_real(
    ctx: *const ExptailContext,
    x: *const c_char,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
    approx: *mut f64,
    f: impl FnOnce(&Real, &PrecisionContext) -> exptail::Result<Real>,
) -> ExptailStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        let x = c.parse(str_arg(x, "x")?)?;
        let v = f(&x, c)?;
        write_real(c, &v, buf, buf_len, needed, approx)
    })
}

/// `R_n(x)`, `x ≥ 0`.
///
/// # Safety
/// `ctx` must be a live context handle, `x` a NUL-terminated decimal string,
/// `buf` writable for `buf_len` bytes. `needed` and `approx` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn exptail_r_tail(
    ctx: *const ExptailContext,
    n: u32,
    x: *const c_char,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
    approx: *mut f64,
) -> ExptailStatus {
    eval_real(ctx, x, buf, buf_len, needed, approx, |x, c| {
        remainders::r_tail(n, x, c)
    })
}

/// `|R_n(-x)|`, `x ≥ 0`.
///
/// # Safety
/// As for [`exptail_r_tail`].
#[no_mangle]
pub unsafe extern "C" fn exptail_r_neg(
    ctx: *const ExptailContext,
    n: u32,
    x: *const c_char,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
    approx: *mut f64,
) -> ExptailStatus {
    eval_real(ctx, x, buf, buf_len, needed, approx, |x, c| {
        remainders::r_neg(n, x, c)
    })
}

/// `R_{n,m}(x)`.
///
/// # Safety
/// As for [`exptail_r_tail`].
#[no_mangle]
pub unsafe extern "C" fn exptail_r_obreshkov(
    ctx: *const ExptailContext,
    n: u32,
    m: u32,
    x: *const c_char,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
    approx: *mut f64,
) -> ExptailStatus {
    eval_real(ctx, x, buf, buf_len, needed, approx, |x, c| {
        remainders::r_obreshkov(n, m, x, c)
    })
}

/// `[n/m](x)`, the Padé approximant of `exp`.
///
/// # Safety
/// As for [`exptail_r_tail`].
#[no_mangle]
pub unsafe extern "C" fn exptail_pade(
    ctx: *const ExptailContext,
    n: u32,
    m: u32,
    x: *const c_char,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
    approx: *mut f64,
) -> ExptailStatus {
    eval_real(ctx, x, buf, buf_len, needed, approx, |x, c| {
        pade::eval_approximant(&pade::pade_exp(n, m), x, c)
    })
}

/// `R_a(x)` for real order `a > -1`, given as a decimal string.
///
/// # Safety
/// As for [`exptail_r_tail`]; `a` must be a NUL-terminated decimal string.
#[no_mangle]
pub unsafe extern "C" fn exptail_r_frac(
    ctx: *const ExptailContext,
    a: *const c_char,
    x: *const c_char,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
    approx: *mut f64,
) -> ExptailStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        let a = c.parse(str_arg(a, "a")?)?;
        let x = c.parse(str_arg(x, "x")?)?;
        let v = remainders::r_frac(&a, &x, c)?;
        write_real(c, &v, buf, buf_len, needed, approx)
    })
}

fn parse_params(s: &str, ctx: &PrecisionContext) -> Result<Params, Failure> {
    let mut p = Params::default();
    for part in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| {
            Failure(
                ExptailStatus::Usage,
                format!("expected name=value, got `{part}`"),
            )
        })?;
        let (k, v) = (k.trim(), v.trim());
        if k == "f" {
            p.f = Some(v.parse::<TestFunction>()?);
        } else {
            p.set(k, ctx.parse(v)?)?;
        }
    }
    Ok(p)
}

/// Evaluate one check, e.g. `id = "ALZER"`, `params = "n=2;x=0.5"`.
///
/// # Safety
/// `ctx` must be a live context handle, `id` and `params` NUL-terminated
/// strings, `out` valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn exptail_check(
    ctx: *const ExptailContext,
    id: *const c_char,
    params: *const c_char,
    out: *mut *mut ExptailCheck,
) -> ExptailStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let kind: CheckKind = str_arg(id, "id")?.parse()?;
        let params = parse_params(str_arg(params, "params")?, c)?;
        let result = evaluate_check(&CheckId::new(kind, params), c)?;
        *out = Box::into_raw(Box::new(ExptailCheck { result, ctx: *c }));
        Ok(())
    })
}

/// # Safety
/// `check` must be NULL or a live handle from [`exptail_check`].
#[no_mangle]
pub unsafe extern "C" fn exptail_check_free(check: *mut ExptailCheck) {
    if !check.is_null() {
        drop(Box::from_raw(check));
    }
}

/// # Safety
/// `check` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exptail_check_status(
    check: *const ExptailCheck,
    out: *mut ExptailCheckStatus,
) -> ExptailStatus {
    guard(|| {
        let h = check.as_ref().ok_or_else(|| null("check"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match h.result.status {
            Status::Pass => ExptailCheckStatus::Pass,
            Status::Fail => ExptailCheckStatus::Fail,
            Status::Indeterminate => ExptailCheckStatus::Indeterminate,
        };
        Ok(())
    })
}

/// Margin (favored side minus other side) as a decimal string.
///
/// # Safety
/// As for [`exptail_r_tail`], with `check` a live handle.
#[no_mangle]
pub unsafe extern "C" fn exptail_check_margin(
    check: *const ExptailCheck,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
    approx: *mut f64,
) -> ExptailStatus {
    guard(|| {
        let h = check.as_ref().ok_or_else(|| null("check"))?;
        write_real(&h.ctx, &h.result.margin, buf, buf_len, needed, approx)
    })
}

/// Quotient of the two sides, when the check defines one. Returns
/// `EXPTAIL_USAGE` otherwise.
///
/// # Safety
/// As for [`exptail_check_margin`].
#[no_mangle]
pub unsafe extern "C" fn exptail_check_ratio(
    check: *const ExptailCheck,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
    approx: *mut f64,
) -> ExptailStatus {
    guard(|| {
        let h = check.as_ref().ok_or_else(|| null("check"))?;
        let r = h.result.ratio.as_ref().ok_or_else(|| {
            Failure(
                ExptailStatus::Usage,
                format!("{} has no ratio", h.result.id.kind),
            )
        })?;
        write_real(&h.ctx, r, buf, buf_len, needed, approx)
    })
}

/// Sweep checks over a grid. `ids` is a comma list or `all`; `grid` uses the
/// CLI syntax, and NULL or an empty string means the per-check defaults.
///
/// # Safety
/// `ctx` must be a live context handle, `ids` a NUL-terminated string, `grid`
/// NULL or NUL-terminated, `out` valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn exptail_sweep(
    ctx: *const ExptailContext,
    ids: *const c_char,
    grid: *const c_char,
    out: *mut *mut ExptailReport,
) -> ExptailStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let ids = str_arg(ids, "ids")?.trim();
        let kinds: Vec<CheckKind> = if ids.eq_ignore_ascii_case("all") {
            CheckKind::ALL.to_vec()
        } else {
            ids.split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<_, _>>()?
        };
        let grid = if grid.is_null() {
            ""
        } else {
            str_arg(grid, "grid")?
        };
        let grid = if grid.trim().is_empty() {
            ParamGrid::default()
        } else {
            grid.parse()?
        };
        let report = sweep(&kinds, &grid, c)?;
        *out = Box::into_raw(Box::new(ExptailReport { report, ctx: *c }));
        Ok(())
    })
}

/// # Safety
/// `report` must be NULL or a live handle from [`exptail_sweep`].
#[no_mangle]
pub unsafe extern "C" fn exptail_report_free(report: *mut ExptailReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Counts of PASS, FAIL, INDET and ERROR rows. Any out pointer may be NULL.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn exptail_report_counts(
    report: *const ExptailReport,
    pass: *mut usize,
    fail: *mut usize,
    indeterminate: *mut usize,
    errors: *mut usize,
) -> ExptailStatus {
    guard(|| {
        let s = &report
            .as_ref()
            .ok_or_else(|| null("report"))?
            .report
            .summary;
        for (p, v) in [
            (pass, s.pass),
            (fail, s.fail),
            (indeterminate, s.indeterminate),
            (errors, s.errors),
        ] {
            if !p.is_null() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// The report rendered as the CLI would write it.
///
/// # Safety
/// `report` must be a live handle and `buf` writable for `buf_len` bytes;
/// `needed` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn exptail_report_render(
    report: *const ExptailReport,
    format: ExptailFormat,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> ExptailStatus {
    guard(|| {
        let h = report.as_ref().ok_or_else(|| null("report"))?;
        let format = match format {
            ExptailFormat::Json => Format::Json,
            ExptailFormat::Csv => Format::Csv,
            ExptailFormat::Text => Format::Text,
        };
        let bytes = render_sweep(&h.report, format, &h.ctx)?;
        let text = String::from_utf8(bytes)
            .map_err(|e| Failure(ExptailStatus::InvalidString, e.to_string()))?;
        write_str(&text, buf, buf_len, needed)
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn exptail_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Exit-code style summary: 0 when nothing failed, 1 on FAIL rows, 3 when
/// any row errored.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn exptail_report_exit_code(report: *const ExptailReport) -> c_int {
    match report.as_ref() {
        None => -1,
        Some(h) if h.report.summary.errors > 0 => 3,
        Some(h) if h.report.summary.fail > 0 => 1,
        Some(_) => 0,
    }
}
