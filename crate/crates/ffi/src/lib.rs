//! C ABI over `tdual-core`.
//!
//! Every fallible call returns a [`TdualStatus`]; on failure the message is
//! available from [`tdual_last_error`] on the same thread. Handles are opaque
//! and owned by the caller, who releases them with the matching `_free`.
//! Strings handed out through `out` parameters are released with
//! [`tdual_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use tdual_core::pair::{dualize, Pair};
use tdual_core::space::{make_space, SpaceModel};
use tdual_core::Error;

/// Result codes. Values from 3 on mirror the core error kinds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdualStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    IllFormedHom = 3,
    UnknownDescriptor = 4,
    BadParameters = 5,
    DegreeOverflow = 6,
    DegreeOutOfRange = 7,
    InvalidClass = 8,
    ObstructionNonzero = 9,
    BaseMismatch = 10,
    UnsupportedDimension = 11,
    UnsupportedTwist = 12,
    NotDualizable = 13,
    Unresolved = 14,
    Parse = 15,
    Panic = 99,
}

impl From<&Error> for TdualStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::IllFormedHom(_) => TdualStatus::IllFormedHom,
            Error::UnknownDescriptor(_) => TdualStatus::UnknownDescriptor,
            Error::BadParameters(_) => TdualStatus::BadParameters,
            Error::DegreeOverflow(..) => TdualStatus::DegreeOverflow,
            Error::DegreeOutOfRange(_) => TdualStatus::DegreeOutOfRange,
            Error::InvalidClass(_) => TdualStatus::InvalidClass,
            Error::ObstructionNonzero(_) => TdualStatus::ObstructionNonzero,
            Error::BaseMismatch(..) => TdualStatus::BaseMismatch,
            Error::UnsupportedDimension(_) => TdualStatus::UnsupportedDimension,
            Error::UnsupportedTwist(_) => TdualStatus::UnsupportedTwist,
            Error::NotDualizable(_) => TdualStatus::NotDualizable,
            Error::Unresolved(_) => TdualStatus::Unresolved,
            Error::Parse(_) => TdualStatus::Parse,
        }
    }
}

/// A cohomology model of a base space.
pub struct TdualSpace {
    inner: Arc<SpaceModel>,
}

/// A pair `(c, t, b)` over a base.
pub struct TdualPair {
    inner: Pair,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(TdualStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), format!("{}: {e}", e.kind()))
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TdualStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            TdualStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TdualStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(TdualStatus::NullArgument, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(TdualStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ints_arg<'a>(p: *const i64, len: usize, what: &str) -> Result<&'a [i64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let s = CString::new(s).map_err(|_| Failure(TdualStatus::Parse, "output contains NUL".into()))?;
    *out = s.into_raw();
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tdual_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tdual_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned through an `out` parameter. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tdual_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the model for `descriptor`, e.g. `"surface:g=2"`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tdual_space_new(descriptor: *const c_char, out: *mut *mut TdualSpace) -> TdualStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let d = str_arg(descriptor, "descriptor")?;
        let space = make_space(d)?;
        *out = Box::into_raw(Box::new(TdualSpace { inner: Arc::new(space) }));
        Ok(())
    })
}

/// # Safety
/// `space` must come from [`tdual_space_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tdual_space_free(space: *mut TdualSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Number of generators of `H^degree`, or -1 for a null handle.
///
/// # Safety
/// `space` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tdual_space_num_generators(space: *const TdualSpace, degree: usize) -> i64 {
    match space.as_ref() {
        Some(s) => s.inner.group(degree).num_generators() as i64,
        None => -1,
    }
}

/// The cohomology ring as JSON.
///
/// # Safety
/// `space` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tdual_space_json(space: *const TdualSpace, out: *mut *mut c_char) -> TdualStatus {
    guard(|| {
        let s = space.as_ref().ok_or_else(|| null("space"))?;
        write_string(out, s.inner.to_json().to_string())
    })
}

/// Builds a pair from coordinate arrays in generator order. Arrays may be
/// null when their length is 0.
///
/// # Safety
/// Each array must hold at least its stated length; `space` must be live.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn tdual_pair_new(
    space: *const TdualSpace,
    c: *const i64,
    c_len: usize,
    t: *const i64,
    t_len: usize,
    b: *const i64,
    b_len: usize,
    out: *mut *mut TdualPair,
) -> TdualStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = space.as_ref().ok_or_else(|| null("space"))?;
        let pair = Pair::from_coords(s.inner.clone(), ints_arg(c, c_len, "c")?, ints_arg(t, t_len, "t")?, ints_arg(b, b_len, "b")?)?;
        *out = Box::into_raw(Box::new(TdualPair { inner: pair }));
        Ok(())
    })
}

/// Parses `{"base": ..., "c": [...], "t": [...], "b": [...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tdual_pair_from_json(json: *const c_char, out: *mut *mut TdualPair) -> TdualStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = str_arg(json, "json")?;
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Failure(TdualStatus::Parse, format!("Parse: {e}")))?;
        *out = Box::into_raw(Box::new(TdualPair { inner: Pair::from_json(&value)? }));
        Ok(())
    })
}

/// # Safety
/// `pair` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tdual_pair_json(pair: *const TdualPair, out: *mut *mut c_char) -> TdualStatus {
    guard(|| {
        let p = pair.as_ref().ok_or_else(|| null("pair"))?;
        write_string(out, p.inner.to_json().to_string())
    })
}

/// The T-dual pair as a new handle.
///
/// # Safety
/// `pair` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tdual_pair_dualize(pair: *const TdualPair, out: *mut *mut TdualPair) -> TdualStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = pair.as_ref().ok_or_else(|| null("pair"))?;
        *out = Box::into_raw(Box::new(TdualPair { inner: dualize(&p.inner) }));
        Ok(())
    })
}

/// Whether two pairs are isomorphic, written to `out` as 0 or 1.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tdual_pair_isomorphic(a: *const TdualPair, b: *const TdualPair, out: *mut i32) -> TdualStatus {
    guard(|| {
        let (a, b) = (a.as_ref().ok_or_else(|| null("a"))?, b.as_ref().ok_or_else(|| null("b"))?);
        if out.is_null() {
            return Err(null("out"));
        }
        *out = tdual_core::pair::pairs_isomorphic(&a.inner, &b.inner)? as i32;
        Ok(())
    })
}

/// # Safety
/// `pair` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tdual_pair_free(pair: *mut TdualPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Runs the command line with `argv[0..argc]` (without the program name).
/// Standard output goes to `out_stdout`, the exit code to `out_code`; a
/// non-zero exit code is not an FFI failure, and diagnostics are available
/// from [`tdual_last_error`].
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn tdual_run(argv: *const *const c_char, argc: usize, out_stdout: *mut *mut c_char, out_code: *mut i32) -> TdualStatus {
    let mut stderr = String::new();
    let status = guard(|| {
        if out_code.is_null() {
            return Err(null("out_code"));
        }
        let mut args = vec!["tdual".to_string()];
        if argc > 0 {
            if argv.is_null() {
                return Err(null("argv"));
            }
            for &a in std::slice::from_raw_parts(argv, argc) {
                args.push(str_arg(a, "argument")?.to_string());
            }
        }
        let outcome = tdual_core::cli::run(args);
        write_string(out_stdout, outcome.stdout)?;
        *out_code = outcome.code;
        stderr = outcome.stderr;
        Ok(())
    });
    if status == TdualStatus::Ok {
        set_error(stderr.trim_end().to_string());
    }
    status
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    #[test]
    fn status_codes_cover_every_error_kind() {
        let e = Error::ObstructionNonzero(String::new());
        assert_eq!(TdualStatus::from(&e), TdualStatus::ObstructionNonzero);
        assert_eq!(TdualStatus::from(&Error::Parse(String::new())) as i32, 15);
    }

    #[test]
    fn null_pointers_are_reported() {
        unsafe {
            let mut out = ptr::null_mut();
            assert_eq!(tdual_space_new(ptr::null(), &mut out), TdualStatus::NullArgument);
            assert!(out.is_null());
            let msg = CStr::from_ptr(tdual_last_error()).to_str().unwrap();
            assert!(msg.contains("descriptor"));
        }
    }
}
