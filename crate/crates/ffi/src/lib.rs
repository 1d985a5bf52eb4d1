//! C ABI for the verification library.
//!
//! All handles are opaque; every constructor has a matching `_free`, and
//! strings returned by the library are released with `slt_string_free`.
//! Functions return `SltStatus`; on any non-`Ok` status the thread-local
//! message from `slt_last_error` describes what went wrong.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;

use libc::c_char;

use sltensor::expr::parse_poly_expr;
use sltensor::poly::MultiPoly;
use sltensor::report::{emit_report, CheckRecord, CheckStatus, ReportFormat};
use sltensor::suite::{criterion_entries, default_suite, run_suite, SuiteConfig};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SltStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    ParseError = 3,
    InternalError = 4,
}

/// Opaque handle to an exact multivariate polynomial.
pub struct SltPoly {
    inner: MultiPoly,
}

/// Opaque handle to a finished verification run.
pub struct SltReport {
    records: Vec<CheckRecord>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error").expect("static"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// The most recent error message on this thread, or null when the last call
/// succeeded. The pointer stays valid until the next failing call on the
/// same thread; do not free it.
#[no_mangle]
pub extern "C" fn slt_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn slt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string allocated by this library.
///
/// # Safety
/// `s` must have been returned by a `slt_*` function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn slt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SltStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(SltStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        SltStatus::InvalidArgument
    })
}

fn string_out(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Parses a polynomial expression in variables `t1..tn`.
///
/// # Safety
/// `src` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn slt_poly_parse(
    src: *const c_char,
    n: u32,
    out: *mut *mut SltPoly,
) -> SltStatus {
    if out.is_null() {
        set_error("null output pointer");
        return SltStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let text = match read_str(src) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match parse_poly_expr(text, n as usize) {
        Ok(poly) => {
            clear_error();
            *out = Box::into_raw(Box::new(SltPoly { inner: poly }));
            SltStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            SltStatus::ParseError
        }
    }
}

/// Canonical text form of a polynomial; free with `slt_string_free`.
///
/// # Safety
/// `poly` must be a live handle from `slt_poly_parse`.
#[no_mangle]
pub unsafe extern "C" fn slt_poly_to_string(poly: *const SltPoly) -> *mut c_char {
    if poly.is_null() {
        set_error("null polynomial handle");
        return ptr::null_mut();
    }
    string_out((*poly).inner.to_string_with("t"))
}

/// Releases a polynomial handle.
///
/// # Safety
/// `poly` must be a live handle from `slt_poly_parse`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn slt_poly_free(poly: *mut SltPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Runs the verification suite: `criterion` 1..=12 selects one criterion,
/// 0 runs everything. The report handle must be freed with
/// `slt_report_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn slt_suite_run(
    criterion: u32,
    seed: u64,
    out: *mut *mut SltReport,
) -> SltStatus {
    if out.is_null() {
        set_error("null output pointer");
        return SltStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let config = match criterion {
        0 => default_suite(seed),
        1..=12 => SuiteConfig { seed, entries: criterion_entries(criterion as usize) },
        _ => {
            set_error("criterion must be 0 (all) or 1..=12");
            return SltStatus::InvalidArgument;
        }
    };
    match run_suite(&config) {
        Ok(records) => {
            clear_error();
            *out = Box::into_raw(Box::new(SltReport { records }));
            SltStatus::Ok
        }
        Err(e) => {
            set_error(e);
            SltStatus::InternalError
        }
    }
}

/// Number of checks in the report.
///
/// # Safety
/// `report` must be a live handle from `slt_suite_run`.
#[no_mangle]
pub unsafe extern "C" fn slt_report_len(report: *const SltReport) -> u32 {
    if report.is_null() {
        return 0;
    }
    (*report).records.len() as u32
}

/// Number of failed checks in the report.
///
/// # Safety
/// `report` must be a live handle from `slt_suite_run`.
#[no_mangle]
pub unsafe extern "C" fn slt_report_failed(report: *const SltReport) -> u32 {
    if report.is_null() {
        return 0;
    }
    (*report)
        .records
        .iter()
        .filter(|r| r.status == CheckStatus::Fail)
        .count() as u32
}

/// Deterministic JSON form of the report; free with `slt_string_free`.
///
/// # Safety
/// `report` must be a live handle from `slt_suite_run`.
#[no_mangle]
pub unsafe extern "C" fn slt_report_json(report: *const SltReport) -> *mut c_char {
    if report.is_null() {
        set_error("null report handle");
        return ptr::null_mut();
    }
    string_out(emit_report(&(*report).records, ReportFormat::Json))
}

/// Aligned table form of the report; free with `slt_string_free`.
///
/// # Safety
/// `report` must be a live handle from `slt_suite_run`.
#[no_mangle]
pub unsafe extern "C" fn slt_report_table(report: *const SltReport) -> *mut c_char {
    if report.is_null() {
        set_error("null report handle");
        return ptr::null_mut();
    }
    string_out(emit_report(&(*report).records, ReportFormat::Table))
}

/// Releases a report handle.
///
/// # Safety
/// `report` must be a live handle from `slt_suite_run`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn slt_report_free(report: *mut SltReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn parse_and_print_round_trip() {
        let src = CString::new("t1^2*t2 - 1/2*t1").unwrap();
        let mut handle: *mut SltPoly = ptr::null_mut();
        let status = unsafe { slt_poly_parse(src.as_ptr(), 2, &mut handle) };
        assert_eq!(status, SltStatus::Ok);
        let text = unsafe { slt_poly_to_string(handle) };
        let printed = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string();
        assert_eq!(printed, "-1/2*t1 + 1*t1^2*t2");
        unsafe {
            slt_string_free(text);
            slt_poly_free(handle);
        }
    }

    #[test]
    fn parse_error_sets_message() {
        let src = CString::new("t9").unwrap();
        let mut handle: *mut SltPoly = ptr::null_mut();
        let status = unsafe { slt_poly_parse(src.as_ptr(), 2, &mut handle) };
        assert_eq!(status, SltStatus::ParseError);
        assert!(handle.is_null());
        let msg = slt_last_error();
        assert!(!msg.is_null());
        let text = unsafe { CStr::from_ptr(msg) }.to_str().unwrap();
        assert!(text.contains("out of range"));
    }

    #[test]
    fn null_arguments_are_rejected() {
        let mut handle: *mut SltPoly = ptr::null_mut();
        let status = unsafe { slt_poly_parse(ptr::null(), 2, &mut handle) };
        assert_eq!(status, SltStatus::NullArgument);
        let status = unsafe { slt_suite_run(0, 1, ptr::null_mut()) };
        assert_eq!(status, SltStatus::NullArgument);
    }

    #[test]
    fn suite_runs_through_the_abi() {
        let mut report: *mut SltReport = ptr::null_mut();
        let status = unsafe { slt_suite_run(12, 7, &mut report) };
        assert_eq!(status, SltStatus::Ok);
        let len = unsafe { slt_report_len(report) };
        let failed = unsafe { slt_report_failed(report) };
        assert!(len > 0);
        assert_eq!(failed, 0);
        let json = unsafe { slt_report_json(report) };
        let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap();
        assert!(text.starts_with("{\"version\""));
        unsafe {
            slt_string_free(json);
            slt_report_free(report);
        }
    }

    #[test]
    fn invalid_criterion_is_rejected() {
        let mut report: *mut SltReport = ptr::null_mut();
        let status = unsafe { slt_suite_run(13, 7, &mut report) };
        assert_eq!(status, SltStatus::InvalidArgument);
        assert!(report.is_null());
    }
}
