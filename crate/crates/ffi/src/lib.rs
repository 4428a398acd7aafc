//! C ABI over `mzvlab`.
//!
//! Every call returns an [`MzvStatus`]; results come back through out
//! pointers as opaque handles or library-owned strings. Handles are freed
//! with their `_free` function, strings with [`mzv_string_free`]. After a
//! failure, [`mzv_last_error`] describes it until the next call on the same
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mzvlab::identities::{self, Bounds, IdentityCase, ResidualReport, Status};
use mzvlab::index::{hoffman_dual, Composition};
use mzvlab::num::{check_prec, parse_q_list, Mode, Scalar};
use mzvlab::posets::{Admissibility, LabeledPoset};
use mzvlab::values::{evaluate, Family, ValueSpec};
use mzvlab::MzvError;

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MzvStatus {
    Ok = 0,
    Parse = 1,
    LengthMismatch = 2,
    Inadmissible = 3,
    Domain = 4,
    Invalid = 5,
    Unsupported = 6,
    NoConvergence = 7,
    SizeGuard = 8,
    NullPointer = 9,
    Utf8 = 10,
    Panic = 11,
}

impl From<&MzvError> for MzvStatus {
    fn from(e: &MzvError) -> MzvStatus {
        match e {
            MzvError::Parse(_) => MzvStatus::Parse,
            MzvError::LengthMismatch(_) => MzvStatus::LengthMismatch,
            MzvError::Inadmissible(_) => MzvStatus::Inadmissible,
            MzvError::Domain(_) => MzvStatus::Domain,
            MzvError::Invalid(_) => MzvStatus::Invalid,
            MzvError::Unsupported(_) => MzvStatus::Unsupported,
            MzvError::NoConvergence(_) => MzvStatus::NoConvergence,
            MzvError::SizeGuard(_) => MzvStatus::SizeGuard,
        }
    }
}

/// Outcome of a verification.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MzvVerdict {
    Pass = 0,
    Fail = 1,
    Skipped = 2,
}

/// A computed value.
pub struct MzvValue {
    value: Scalar,
    text: CString,
}

/// A parsed labeled poset.
pub struct MzvPoset {
    poset: LabeledPoset,
}

/// One verification report.
pub struct MzvReport {
    report: ResidualReport,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Fail {
    Core(MzvError),
    Null(&'static str),
    Utf8(&'static str),
}

impl From<MzvError> for Fail {
    fn from(e: MzvError) -> Fail {
        Fail::Core(e)
    }
}

type FfiResult<T> = Result<T, Fail>;

/// Run `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> MzvStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MzvStatus::Ok,
        Ok(Err(Fail::Core(e))) => {
            set_error(&e.to_string());
            MzvStatus::from(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            MzvStatus::NullPointer
        }
        Ok(Err(Fail::Utf8(what))) => {
            set_error(&format!("{what} is not valid UTF-8"));
            MzvStatus::Utf8
        }
        Err(_) => {
            set_error("internal panic");
            MzvStatus::Panic
        }
    }
}

/// Borrow a required C string.
unsafe fn text<'a>(p: *const c_char, what: &'static str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8(what))
}

/// Borrow an optional C string; null and "" both mean absent.
unsafe fn opt_text<'a>(p: *const c_char, what: &'static str) -> FfiResult<Option<&'a str>> {
    if p.is_null() {
        return Ok(None);
    }
    let s = text(p, what)?;
    Ok((!s.trim().is_empty()).then_some(s))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw();
    Ok(())
}

fn cstring(s: String) -> CString {
    CString::new(s.replace('\0', " ")).unwrap_or_default()
}

fn value_handle(v: Scalar) -> MzvValue {
    MzvValue { text: cstring(v.value_string()), value: v }
}

unsafe fn ref_of<'a, T>(p: *const T, what: &'static str) -> FfiResult<&'a T> {
    p.as_ref().ok_or(Fail::Null(what))
}

fn prec_or_default(prec: u32) -> mzvlab::Result<u32> {
    check_prec(if prec == 0 { mzvlab::num::default_prec() } else { prec })
}

/// Message for the last failed call on this thread; empty after success.
/// Owned by the library and valid until the next call.
#[no_mangle]
pub extern "C" fn mzv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mzv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Free a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mzv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Evaluate a value of `family` (e.g. "mzv", "mpl", "t", "m", "conv_zeta").
/// `labels`, `l`, `eta`, `eps` and `a` may be null. `prec == 0` selects the
/// default precision.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_eval(
    family: *const c_char,
    index: *const c_char,
    labels: *const c_char,
    l: *const c_char,
    eta: *const c_char,
    eps: *const c_char,
    a: *const c_char,
    prec: u32,
    out: *mut *mut MzvValue,
) -> MzvStatus {
    guard(|| {
        let fam = Family::parse(text(family, "family")?)?;
        let k = Composition::parse(text(index, "index")?)?;
        let mut spec = ValueSpec::new(fam, k);
        if let Some(s) = opt_text(labels, "labels")? {
            spec.x = parse_q_list(s)?;
        }
        if let Some(s) = opt_text(l, "l")? {
            spec.l = Some(Composition::parse(s)?);
        }
        spec.eta = signs(opt_text(eta, "eta")?)?;
        spec.eps = signs(opt_text(eps, "eps")?)?;
        if let Some(s) = opt_text(a, "a")? {
            spec.a = Some(mzvlab::num::parse_q(s)?);
        }
        let v = evaluate(&spec, prec_or_default(prec)?)?;
        put(out, value_handle(v))
    })
}

fn signs(s: Option<&str>) -> mzvlab::Result<Vec<i32>> {
    let Some(s) = s else { return Ok(Vec::new()) };
    parse_q_list(s)?
        .iter()
        .map(|q| match (q.is_sign(), q.is_one()) {
            (true, true) => Ok(1),
            (true, false) => Ok(-1),
            _ => Err(MzvError::Parse(format!("expected a sign, got {q}"))),
        })
        .collect()
}

/// Decimal (or `p/q` for exact values) rendering, owned by the handle.
///
/// # Safety
/// `v` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mzv_value_string(v: *const MzvValue) -> *const c_char {
    v.as_ref().map_or(ptr::null(), |h| h.text.as_ptr())
}

/// Real part as a double; NaN for a null handle.
///
/// # Safety
/// `v` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mzv_value_re(v: *const MzvValue) -> f64 {
    v.as_ref().map_or(f64::NAN, |h| h.value.re_f64())
}

/// Absolute error bound; 0 for exact values, NaN for a null handle.
///
/// # Safety
/// `v` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mzv_value_err(v: *const MzvValue) -> f64 {
    v.as_ref().map_or(f64::NAN, |h| h.value.err())
}

/// 1 if the value is an exact rational, 0 otherwise.
///
/// # Safety
/// `v` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mzv_value_is_exact(v: *const MzvValue) -> i32 {
    v.as_ref().map_or(0, |h| h.value.is_exact() as i32)
}

/// # Safety
/// `v` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mzv_value_free(v: *mut MzvValue) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Hoffman dual of a comma-separated composition, as a new string.
///
/// # Safety
/// `index` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_dual(index: *const c_char, out: *mut *mut c_char) -> MzvStatus {
    guard(|| {
        let d = hoffman_dual(&Composition::parse(text(index, "index")?)?)?;
        let s = d.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        put_string(out, s)
    })
}

/// Parse a poset from the text format (`id: label` and `a<b` lines).
///
/// # Safety
/// `src` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_poset_parse(src: *const c_char, out: *mut *mut MzvPoset) -> MzvStatus {
    guard(|| {
        let poset = LabeledPoset::parse(text(src, "poset text")?)?;
        put(out, MzvPoset { poset })
    })
}

/// Number of elements; 0 for a null handle.
///
/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mzv_poset_len(p: *const MzvPoset) -> usize {
    p.as_ref().map_or(0, |h| h.poset.len())
}

/// Number of linear extensions.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_poset_extensions(p: *const MzvPoset, out: *mut u64) -> MzvStatus {
    guard(|| {
        let n = ref_of(p, "poset")?.poset.count_linear_extensions()?;
        let n = u64::try_from(n).map_err(|_| MzvError::SizeGuard("extension count exceeds u64".into()))?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        *out = n;
        Ok(())
    })
}

/// `Ok` if admissible, otherwise `Inadmissible` with the offending element
/// id written to `witness` (which may be null).
///
/// # Safety
/// `p` must be a live handle; `witness` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_poset_admissible(p: *const MzvPoset, witness: *mut u32) -> MzvStatus {
    guard(|| match ref_of(p, "poset")?.poset.admissibility() {
        Admissibility::Admissible => Ok(()),
        Admissibility::Inadmissible { witness: w, reason } => {
            if !witness.is_null() {
                *witness = w;
            }
            Err(MzvError::Inadmissible(format!("element {w}: {reason}")).into())
        }
    })
}

/// The poset integral at `prec` bits (0 for the default).
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_poset_eval(p: *const MzvPoset, prec: u32, out: *mut *mut MzvValue) -> MzvStatus {
    guard(|| {
        let v = ref_of(p, "poset")?.poset.eval(prec_or_default(prec)?)?;
        put(out, value_handle(v))
    })
}

/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mzv_poset_free(p: *mut MzvPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Verify one instance of identity `id`. `params` holds `name=value` items
/// separated by `;`, e.g. `"k=2,1;x=1/2,1/3;n=4"`. `mode` is "exact",
/// "float", or null for the entry's default.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_verify(
    id: *const c_char,
    params: *const c_char,
    mode: *const c_char,
    prec: u32,
    out: *mut *mut MzvReport,
) -> MzvStatus {
    guard(|| {
        let d = identities::lookup(text(id, "id")?)?;
        let p = d.parse_params(opt_text(params, "params")?.unwrap_or(""))?;
        let mode = match opt_text(mode, "mode")? {
            Some(m) => Mode::parse(m)?,
            None => d.default_mode(),
        };
        let case = IdentityCase::new(d.id, p, mode, prec_or_default(prec)?)?;
        let report = identities::verify(&case)?;
        let json = cstring(report.to_json().to_string());
        put(out, MzvReport { report, json })
    })
}

/// Verdict of a report; `Skipped` for a null handle.
///
/// # Safety
/// `r` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mzv_report_verdict(r: *const MzvReport) -> MzvVerdict {
    match r.as_ref().map(|h| &h.report.status) {
        Some(Status::Pass) => MzvVerdict::Pass,
        Some(Status::Fail) => MzvVerdict::Fail,
        _ => MzvVerdict::Skipped,
    }
}

/// |residual| as a double (0 when there is none).
///
/// # Safety
/// `r` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mzv_report_residual(r: *const MzvReport) -> f64 {
    r.as_ref()
        .and_then(|h| h.report.residual.as_ref())
        .map_or(0.0, |s| s.abs_f64())
}

/// The report as a JSON object, owned by the handle.
///
/// # Safety
/// `r` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mzv_report_json(r: *const MzvReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |h| h.json.as_ptr())
}

/// # Safety
/// `r` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mzv_report_free(r: *mut MzvReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Run `budget` generated cases of `id`; the summary JSON goes to `out`
/// (free with [`mzv_string_free`]). `bounds` may be null.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_fuzz(
    id: *const c_char,
    budget: u32,
    seed: u64,
    bounds: *const c_char,
    prec: u32,
    out: *mut *mut c_char,
) -> MzvStatus {
    guard(|| {
        let b = match opt_text(bounds, "bounds")? {
            Some(s) => Bounds::parse(s)?,
            None => Bounds::default(),
        };
        let s = identities::fuzz(text(id, "id")?, budget as usize, seed, &b, None, prec_or_default(prec)?)?;
        put_string(out, s.to_json().to_string())
    })
}
