//! C ABI over `valley-paths`.
//!
//! Polynomials and series are opaque heap handles released with their
//! `_free` function. Every fallible call returns a [`VpStatus`]; on failure
//! the message is available from [`vp_last_error_message`] on the same
//! thread. Strings returned through `char **` out-parameters are owned by the
//! caller and released with [`vp_string_free`].
//!
//! Parameter lists are passed as `"k=v,k=v"` strings, where each value is a
//! polynomial in the text form (`"2"`, `"q+1"`, `"1/2"`) or `sym` to leave the
//! variable symbolic. A null pointer means no parameters.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use valley_paths::oracles::{formula_vn, oracle, Params, FORMULA_NAMES, ORACLE_NAMES};
use valley_paths::paths::{enumerate_family, parse_path, render_ascii, Family, Filter};
use valley_paths::series::{v_series, TruncatedSeries};
use valley_paths::verify::{run_suite, Suite};
use valley_paths::weights::{registry_series, weight_sum_v, WeightSpec};
use valley_paths::Polynomial;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ComputationFailed = 4,
    VerificationFailed = 5,
}

/// Opaque exact polynomial.
pub struct VpPolynomial {
    inner: Polynomial,
}

/// Opaque truncated generating function of a weight spec.
pub struct VpSeries {
    inner: TruncatedSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn fail(status: VpStatus, msg: impl Into<String>) -> VpStatus {
    set_error(msg);
    status
}

/// Borrows a C string, or fails with the matching status.
///
/// # Safety
/// `s` must be null or point to a nul-terminated string that outlives `'a`.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, VpStatus> {
    if s.is_null() {
        return Err(fail(VpStatus::NullPointer, format!("`{what}` is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(VpStatus::InvalidUtf8, format!("`{what}` is not valid UTF-8")))
}

fn parse_params(raw: Option<&str>) -> Result<Params, VpStatus> {
    let mut params = Params::new();
    for kv in raw.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((k, v)) = kv.split_once('=') else {
            return Err(fail(VpStatus::InvalidArgument, format!("expected k=v, got `{kv}`")));
        };
        if v.trim() == "sym" {
            continue;
        }
        let value: Polynomial = v
            .parse()
            .map_err(|e| fail(VpStatus::InvalidArgument, format!("bad value for `{}`: {e}", k.trim())))?;
        params.insert(k.trim(), value);
    }
    Ok(params)
}

/// # Safety
/// `params` must be null or a valid C string.
unsafe fn params_arg(params: *const c_char) -> Result<Params, VpStatus> {
    let raw = if params.is_null() { None } else { Some(text(params, "params")?) };
    parse_params(raw)
}

fn write_out<T>(out: *mut *mut T, value: T) -> VpStatus {
    if out.is_null() {
        return fail(VpStatus::NullPointer, "output pointer is null");
    }
    // SAFETY: checked non-null; the caller provides a writable slot.
    unsafe { *out = Box::into_raw(Box::new(value)) };
    VpStatus::Ok
}

fn write_string(out: *mut *mut c_char, s: String) -> VpStatus {
    if out.is_null() {
        return fail(VpStatus::NullPointer, "output pointer is null");
    }
    let c = CString::new(s.replace('\0', " ")).unwrap_or_default();
    // SAFETY: checked non-null; the caller provides a writable slot.
    unsafe { *out = c.into_raw() };
    VpStatus::Ok
}

fn write_poly(out: *mut *mut VpPolynomial, p: Polynomial) -> VpStatus {
    write_out(out, VpPolynomial { inner: p })
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

fn computed<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, VpStatus> {
    r.map_err(|e| fail(VpStatus::ComputationFailed, e.to_string()))
}

fn invalid<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, VpStatus> {
    r.map_err(|e| fail(VpStatus::InvalidArgument, e.to_string()))
}

/// Message of the last failed call on this thread. The pointer stays valid
/// until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn vp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer returned through a `char **` out-parameter
/// of this library that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn vp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses polynomial text such as `"(q+1)^2 - 3*t"`.
///
/// # Safety
/// `src` must be a valid C string and `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vp_poly_parse(src: *const c_char, out: *mut *mut VpPolynomial) -> VpStatus {
    let s = tri!(text(src, "text"));
    let p = tri!(invalid(s.parse::<Polynomial>()));
    write_poly(out, p)
}

/// Text form of a polynomial.
///
/// # Safety
/// `p` must be a live handle and `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vp_poly_to_string(p: *const VpPolynomial, out: *mut *mut c_char) -> VpStatus {
    let Some(p) = p.as_ref() else {
        return fail(VpStatus::NullPointer, "polynomial is null");
    };
    write_string(out, p.inner.to_string())
}

/// JSON form of a polynomial: a list of `{coeff, monomial}` terms.
///
/// # Safety
/// `p` must be a live handle and `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vp_poly_to_json(p: *const VpPolynomial, out: *mut *mut c_char) -> VpStatus {
    let Some(p) = p.as_ref() else {
        return fail(VpStatus::NullPointer, "polynomial is null");
    };
    let json = tri!(computed(serde_json::to_string(&p.inner)));
    write_string(out, json)
}

/// Substitutes `bindings` (a parameter list) into `p`.
///
/// # Safety
/// `p` must be a live handle, `bindings` null or a valid C string and `out`
/// a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vp_poly_eval(
    p: *const VpPolynomial,
    bindings: *const c_char,
    out: *mut *mut VpPolynomial,
) -> VpStatus {
    let Some(p) = p.as_ref() else {
        return fail(VpStatus::NullPointer, "polynomial is null");
    };
    let params = tri!(params_arg(bindings));
    let v = tri!(invalid(params.apply(&p.inner)));
    write_poly(out, v)
}

/// 1 if the two polynomials are equal, 0 if not, -1 if either is null.
///
/// # Safety
/// Both arguments must be null or live handles.
#[no_mangle]
pub unsafe extern "C" fn vp_poly_equal(a: *const VpPolynomial, b: *const VpPolynomial) -> i32 {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => i32::from(a.inner == b.inner),
        _ => -1,
    }
}

/// # Safety
/// `p` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn vp_poly_free(p: *mut VpPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Generating function of valley-uniform paths for a registry spec,
/// truncated at `order`.
///
/// # Safety
/// `name` must be a valid C string, `params` null or a valid C string and
/// `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vp_series_registry(
    name: *const c_char,
    params: *const c_char,
    order: usize,
    out: *mut *mut VpSeries,
) -> VpStatus {
    let name = tri!(text(name, "name"));
    let params = tri!(params_arg(params));
    let s = tri!(invalid(registry_series(name, &params, order)));
    let v = tri!(computed(v_series(&s.alpha, &s.beta, &s.gamma)));
    write_out(out, VpSeries { inner: v })
}

/// Truncation order of a series, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vp_series_order(s: *const VpSeries) -> usize {
    s.as_ref().map_or(0, |s| s.inner.order())
}

/// Copy of the coefficient of `x^n`.
///
/// # Safety
/// `s` must be a live handle and `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vp_series_coeff(s: *const VpSeries, n: usize, out: *mut *mut VpPolynomial) -> VpStatus {
    let Some(s) = s.as_ref() else {
        return fail(VpStatus::NullPointer, "series is null");
    };
    if n > s.inner.order() {
        return fail(VpStatus::InvalidArgument, format!("n = {n} exceeds the order {}", s.inner.order()));
    }
    write_poly(out, s.inner.coeff(n).clone())
}

/// # Safety
/// `s` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn vp_series_free(s: *mut VpSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Brute-force weight sum over valley-uniform paths of size `n`.
///
/// # Safety
/// `spec` must be a valid C string, `params` null or a valid C string and
/// `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vp_count(
    spec: *const c_char,
    params: *const c_char,
    n: usize,
    out: *mut *mut VpPolynomial,
) -> VpStatus {
    let name = tri!(text(spec, "spec"));
    let params = tri!(params_arg(params));
    let s = tri!(invalid(registry_series(name, &params, n.max(1))));
    let spec = tri!(computed(WeightSpec::from_series(&s.alpha, &s.beta, &s.gamma)));
    let v = tri!(computed(weight_sum_v(n, &spec)));
    write_poly(out, v)
}

/// Number of paths of `family` with size `n` passing `filter` (null for no
/// filter).
///
/// # Safety
/// `family` must be a valid C string, `filter` null or a valid C string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vp_enumerate_count(
    family: *const c_char,
    filter: *const c_char,
    n: usize,
    out: *mut u64,
) -> VpStatus {
    let fam = tri!(text(family, "family"));
    let Some(fam) = Family::parse(fam) else {
        return fail(VpStatus::InvalidArgument, format!("unknown family `{fam}`"));
    };
    let filter = if filter.is_null() { "none" } else { tri!(text(filter, "filter")) };
    let Some(filter) = Filter::parse(filter) else {
        return fail(VpStatus::InvalidArgument, format!("unknown filter `{filter}`"));
    };
    let Some(out) = out.as_mut() else {
        return fail(VpStatus::NullPointer, "output pointer is null");
    };
    *out = enumerate_family(fam, n, filter).len() as u64;
    VpStatus::Ok
}

/// Named sequence or closed formula at `n`.
///
/// # Safety
/// `name` must be a valid C string, `params` null or a valid C string and
/// `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vp_oracle(
    name: *const c_char,
    n: usize,
    params: *const c_char,
    out: *mut *mut VpPolynomial,
) -> VpStatus {
    let name = tri!(text(name, "name"));
    let params = tri!(params_arg(params));
    let v = if ORACLE_NAMES.contains(&name) {
        tri!(invalid(oracle(name, n, &params)))
    } else if FORMULA_NAMES.contains(&name) {
        tri!(invalid(formula_vn(name, n, &params)))
    } else {
        return fail(VpStatus::InvalidArgument, format!("unknown oracle `{name}`"));
    };
    write_poly(out, v)
}

/// ASCII drawing of a path given as a step string.
///
/// # Safety
/// `path` and `family` must be valid C strings and `out` a writable pointer
/// slot.
#[no_mangle]
pub unsafe extern "C" fn vp_render(path: *const c_char, family: *const c_char, out: *mut *mut c_char) -> VpStatus {
    let steps = tri!(text(path, "path"));
    let fam = tri!(text(family, "family"));
    let Some(fam) = Family::parse(fam) else {
        return fail(VpStatus::InvalidArgument, format!("unknown family `{fam}`"));
    };
    let p = tri!(invalid(parse_path(steps, fam)));
    write_string(out, render_ascii(&p))
}

/// Runs a verification suite and writes its JSON report to `report` (may be
/// null). Returns `VerificationFailed` if any check fails.
///
/// # Safety
/// `suite` must be a valid C string and `report` null or a writable pointer
/// slot.
#[no_mangle]
pub unsafe extern "C" fn vp_verify(
    suite: *const c_char,
    max_n: usize,
    jobs: usize,
    report: *mut *mut c_char,
) -> VpStatus {
    let suite = tri!(invalid(Suite::parse(tri!(text(suite, "suite")))));
    let r = tri!(computed(run_suite(suite, max_n, jobs)));
    if !report.is_null() {
        let json = tri!(computed(serde_json::to_string(&r)));
        write_string(report, json);
    }
    if r.all_passed() {
        VpStatus::Ok
    } else {
        fail(VpStatus::VerificationFailed, format!("{} of {} checks failed", r.failed, r.checks.len()))
    }
}
