//! C ABI over `simplext`.
//!
//! Structures and extensions are opaque handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`SxStatus`]; on failure the message is available from
//! [`sx_last_error`] on the same thread until the next failing call.
//! Strings returned through out-pointers are released with
//! [`sx_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use simplext::cli::report;
use simplext::extensions::{bound, extend, ExtensionResult};
use simplext::intervals::is_simple;
use simplext::io::{parse_structure, write_structure};
use simplext::structure::{RelationalStructure, StructureClass};
use simplext::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Axiom = 4,
    InvalidInput = 5,
    Unsupported = 6,
    SearchSpace = 7,
    ContractViolation = 8,
    Panic = 9,
}

/// A parsed structure together with its class.
pub struct SxStructure {
    structure: RelationalStructure,
    class: StructureClass,
}

/// A simple extension of a structure.
pub struct SxExtension {
    source: RelationalStructure,
    class: StructureClass,
    result: ExtensionResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> SxStatus {
    match e {
        Error::Parse { .. } => SxStatus::Parse,
        Error::Axiom { .. } => SxStatus::Axiom,
        Error::Unsupported(_) => SxStatus::Unsupported,
        Error::SearchSpace(_) => SxStatus::SearchSpace,
        Error::ContractViolation(_) => SxStatus::ContractViolation,
        Error::OutOfRange { .. }
        | Error::ArityMismatch { .. }
        | Error::SignatureMismatch(_)
        | Error::InvalidInput(_) => SxStatus::InvalidInput,
    }
}

struct Failure(SxStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SxStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SxStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside simplext".into());
            SxStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(SxStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(SxStatus::ContractViolation, "string with interior NUL".into()))
}

/// Message of the last failing call on this thread, or null. Valid until
/// the next failing call on this thread.
#[no_mangle]
pub extern "C" fn sx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a structure in the text format.
///
/// # Safety
/// `text` is null or a NUL-terminated string; `out` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn sx_structure_parse(text: *const c_char, out: *mut *mut SxStructure) -> SxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let (structure, class) = parse_structure(c_str(text, "text")?)?;
        store(out, Box::into_raw(Box::new(SxStructure { structure, class })), "out")
    })
}

/// Releases a structure. Null is ignored.
///
/// # Safety
/// `s` is null or a handle from [`sx_structure_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sx_structure_free(s: *mut SxStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of elements.
///
/// # Safety
/// `s` is null or a live handle; `out` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn sx_structure_size(s: *const SxStructure, out: *mut usize) -> SxStatus {
    guard(|| store(out, borrow(s, "structure")?.structure.n(), "out"))
}

/// Whether the structure is simple.
///
/// # Safety
/// `s` is null or a live handle; `out` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn sx_structure_is_simple(s: *const SxStructure, out: *mut bool) -> SxStatus {
    guard(|| store(out, is_simple(&borrow(s, "structure")?.structure), "out"))
}

/// The normalized text of the structure; release with [`sx_string_free`].
///
/// # Safety
/// `s` is null or a live handle; `out` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn sx_structure_write(s: *const SxStructure, out: *mut *mut c_char) -> SxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = borrow(s, "structure")?;
        store(out, owned_string(write_structure(&s.structure, s.class)?)?, "out")
    })
}

/// Builds a simple extension with the construction for the structure's class.
///
/// # Safety
/// `s` is null or a live handle; `out` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn sx_structure_extend(s: *const SxStructure, out: *mut *mut SxExtension) -> SxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = borrow(s, "structure")?;
        let result = extend(&s.structure, s.class)?;
        let e = SxExtension {
            source: s.structure.clone(),
            class: s.class,
            result,
        };
        store(out, Box::into_raw(Box::new(e)), "out")
    })
}

/// Releases an extension. Null is ignored.
///
/// # Safety
/// `e` is null or a handle from [`sx_structure_extend`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sx_extension_free(e: *mut SxExtension) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Number of elements the extension added.
///
/// # Safety
/// `e` is null or a live handle; `out` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn sx_extension_added_count(e: *const SxExtension, out: *mut usize) -> SxStatus {
    guard(|| store(out, borrow(e, "extension")?.result.added_count(), "out"))
}

/// Whether the extended structure is simple.
///
/// # Safety
/// `e` is null or a live handle; `out` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn sx_extension_is_simple(e: *const SxExtension, out: *mut bool) -> SxStatus {
    guard(|| store(out, borrow(e, "extension")?.result.is_simple(), "out"))
}

/// The extension report as printed by the CLI; release with
/// [`sx_string_free`].
///
/// # Safety
/// `e` is null or a live handle; `out` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn sx_extension_report(e: *const SxExtension, out: *mut *mut c_char) -> SxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let e = borrow(e, "extension")?;
        store(out, owned_string(report(&e.source, e.class, &e.result)?)?, "out")
    })
}

/// Guaranteed number of added elements for `class` on `n` elements.
///
/// # Safety
/// `class` is null or a NUL-terminated string; `out` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn sx_bound(class: *const c_char, n: usize, out: *mut usize) -> SxStatus {
    guard(|| {
        let c: StructureClass = c_str(class, "class")?.parse()?;
        store(out, bound(c, n)?, "out")
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> *mut SxStructure {
        let c = CString::new(text).unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { sx_structure_parse(c.as_ptr(), &mut s) }, SxStatus::Ok);
        s
    }

    fn last_error() -> String {
        unsafe { CStr::from_ptr(sx_last_error()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn parse_extend_and_report() {
        let s = parse("class graph n=3\nedge 0 1\nedge 1 2\nedge 0 2\n");
        let mut simple = true;
        assert_eq!(unsafe { sx_structure_is_simple(s, &mut simple) }, SxStatus::Ok);
        assert!(!simple);

        let mut e = ptr::null_mut();
        assert_eq!(unsafe { sx_structure_extend(s, &mut e) }, SxStatus::Ok);
        let mut added = 0;
        assert_eq!(unsafe { sx_extension_added_count(e, &mut added) }, SxStatus::Ok);
        assert_eq!(added, 2);
        assert_eq!(unsafe { sx_extension_is_simple(e, &mut simple) }, SxStatus::Ok);
        assert!(simple);

        let mut text = ptr::null_mut();
        assert_eq!(unsafe { sx_extension_report(e, &mut text) }, SxStatus::Ok);
        let report = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
        assert!(report.contains("added_count 2\n"));
        unsafe {
            sx_string_free(text);
            sx_extension_free(e);
            sx_structure_free(s);
        }
    }

    #[test]
    fn write_round_trips() {
        let s = parse("class poset n=3\nrel 0 1\nrel 1 2\nrel 0 2\n");
        let mut n = 0;
        assert_eq!(unsafe { sx_structure_size(s, &mut n) }, SxStatus::Ok);
        assert_eq!(n, 3);
        let mut text = ptr::null_mut();
        assert_eq!(unsafe { sx_structure_write(s, &mut text) }, SxStatus::Ok);
        assert_eq!(
            unsafe { CStr::from_ptr(text) }.to_str().unwrap(),
            "class poset n=3\nrel 0 1\nrel 1 2\n"
        );
        unsafe {
            sx_string_free(text);
            sx_structure_free(s);
        }
    }

    #[test]
    fn errors_map_to_codes() {
        let bad = CString::new("class graph n=2\nedge 0 5\n").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { sx_structure_parse(bad.as_ptr(), &mut s) }, SxStatus::Parse);
        assert!(s.is_null());
        assert!(last_error().contains("out of range"));

        let cyclic = CString::new("class oriented-graph n=2\narc 0 1\narc 1 0\n").unwrap();
        assert_eq!(unsafe { sx_structure_parse(cyclic.as_ptr(), &mut s) }, SxStatus::Axiom);

        assert_eq!(unsafe { sx_structure_parse(ptr::null(), &mut s) }, SxStatus::NullPointer);
        let mut simple = false;
        assert_eq!(unsafe { sx_structure_is_simple(ptr::null(), &mut simple) }, SxStatus::NullPointer);

        let class = CString::new("shape").unwrap();
        let mut b = 0;
        assert_eq!(unsafe { sx_bound(class.as_ptr(), 3, &mut b) }, SxStatus::InvalidInput);
    }

    #[test]
    fn bound_values() {
        let class = CString::new("permutation").unwrap();
        let mut b = 0;
        assert_eq!(unsafe { sx_bound(class.as_ptr(), 13, &mut b) }, SxStatus::Ok);
        assert_eq!(b, 7);
    }

    #[test]
    fn free_accepts_null() {
        unsafe {
            sx_structure_free(ptr::null_mut());
            sx_extension_free(ptr::null_mut());
            sx_string_free(ptr::null_mut());
        }
    }
}
