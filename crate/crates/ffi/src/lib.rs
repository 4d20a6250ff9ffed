//! C interface to `chaincodes`.
//!
//! Objects are opaque heap handles released with their `_free` function.
//! Every call returns a [`CcStatus`]; on failure the message is available
//! from [`cc_last_error`] until the next call on the same thread. Strings
//! returned through out-parameters are owned by the caller and released
//! with [`cc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use chaincodes::ambient::Ambient;
use chaincodes::codes::SemisimpleCode;
use chaincodes::decompose::Decomposition;
use chaincodes::ring::{ChainRing, ChainRingDesc};
use chaincodes::{distance, duality, Error};

/// Result of every call.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Budget = 5,
    Internal = 6,
}

/// A decomposed semisimple ambient.
pub struct CcAmbient {
    dec: Arc<Decomposition>,
}

/// A semisimple code of a [`CcAmbient`].
pub struct CcCode {
    code: SemisimpleCode,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(CcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => CcStatus::Parse,
            Error::BudgetExceeded { .. } => CcStatus::Budget,
            Error::Internal(_) => CcStatus::Internal,
            _ => CcStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside the library");
            CcStatus::Internal
        }
    }
}

fn null() -> Failure {
    Failure(CcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(CcStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(CcStatus::Internal, "interior NUL in output".into()))?;
    put(out, c.into_raw())
}

unsafe fn put_code(out: *mut *mut CcCode, code: SemisimpleCode) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(CcCode { code })))
}

/// Message of the last failed call on this thread, or NULL. Owned by the library.
#[no_mangle]
pub extern "C" fn cc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds and decomposes an ambient from a ring descriptor JSON and
/// comma-separated moduli such as `"x^2-1,y^2-1"`.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_ambient_new(
    ring_json: *const c_char,
    moduli: *const c_char,
    seed: u64,
    out: *mut *mut CcAmbient,
) -> CcStatus {
    guard(|| {
        let desc: ChainRingDesc = serde_json::from_str(read_str(ring_json)?)
            .map_err(|e| Failure(CcStatus::Parse, format!("ring descriptor: {e}")))?;
        let ring = ChainRing::new(&desc)?;
        let moduli: Vec<String> = read_str(moduli)?.split(',').map(|m| m.trim().to_string()).collect();
        let dec = Decomposition::new(Ambient::parse(ring, &moduli, true)?, seed)?;
        put(out, Box::into_raw(Box::new(CcAmbient { dec: Arc::new(dec) })))
    })
}

/// # Safety
/// `a` must come from [`cc_ambient_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cc_ambient_free(a: *mut CcAmbient) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of cyclotomic classes.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_ambient_num_classes(a: *const CcAmbient, out: *mut usize) -> CcStatus {
    guard(|| put(out, handle(a)?.dec.num_classes()))
}

/// Code length `n`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_ambient_length(a: *const CcAmbient, out: *mut usize) -> CcStatus {
    guard(|| put(out, handle(a)?.dec.ambient().n()))
}

/// JSON array of the classes.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_ambient_classes_json(a: *const CcAmbient, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let dec = &handle(a)?.dec;
        let v: Vec<_> = dec.classes().iter().map(|c| c.to_json(dec.splitting())).collect();
        put_string(out, serde_json::Value::from(v).to_string())
    })
}

/// A code from one exponent per class.
///
/// # Safety
/// `exponents` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_code_from_exponents(
    a: *const CcAmbient,
    exponents: *const u32,
    len: usize,
    out: *mut *mut CcCode,
) -> CcStatus {
    guard(|| {
        let dec = &handle(a)?.dec;
        if exponents.is_null() && len > 0 {
            return Err(null());
        }
        let j = if len == 0 { vec![] } else { std::slice::from_raw_parts(exponents, len).to_vec() };
        put_code(out, SemisimpleCode::from_exponents(dec, j)?)
    })
}

/// The ideal generated by `len` polynomials.
///
/// # Safety
/// `generators` must point to `len` NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_code_from_generators(
    a: *const CcAmbient,
    generators: *const *const c_char,
    len: usize,
    out: *mut *mut CcCode,
) -> CcStatus {
    guard(|| {
        let dec = &handle(a)?.dec;
        if generators.is_null() && len > 0 {
            return Err(null());
        }
        let mut gens = Vec::with_capacity(len);
        for i in 0..len {
            gens.push(dec.ambient().parse_element(read_str(*generators.add(i))?)?);
        }
        put_code(out, SemisimpleCode::from_generators(dec, &gens)?)
    })
}

/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cc_code_free(c: *mut CcCode) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Writes the exponent map into `buf` (capacity `cap`) and its length into `len`.
///
/// # Safety
/// `buf` must hold `cap` values; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_code_exponents(c: *const CcCode, buf: *mut u32, cap: usize, len: *mut usize) -> CcStatus {
    guard(|| {
        let j = handle(c)?.code.exponents();
        put(len, j.len())?;
        if cap < j.len() {
            return Err(Failure(CcStatus::Domain, format!("buffer holds {cap} exponents, need {}", j.len())));
        }
        if !j.is_empty() {
            if buf.is_null() {
                return Err(null());
            }
            ptr::copy_nonoverlapping(j.as_ptr(), buf, j.len());
        }
        Ok(())
    })
}

/// The code record as JSON.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_code_json(c: *const CcCode, out: *mut *mut c_char) -> CcStatus {
    guard(|| put_string(out, handle(c)?.code.to_json().to_string()))
}

/// `|K|` in decimal.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_code_cardinality(c: *const CcCode, out: *mut *mut c_char) -> CcStatus {
    guard(|| put_string(out, handle(c)?.code.cardinality().to_string()))
}

/// The dual code (abelian ambients).
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_code_dual(c: *const CcCode, out: *mut *mut CcCode) -> CcStatus {
    guard(|| put_code(out, duality::dual(&handle(c)?.code)?))
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_code_is_selfdual(c: *const CcCode, out: *mut bool) -> CcStatus {
    guard(|| put(out, duality::is_selfdual(&handle(c)?.code)?))
}

/// Exact minimum distance, enumerating at most `budget` words.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_code_min_distance(c: *const CcCode, budget: u64, out: *mut u64) -> CcStatus {
    guard(|| put(out, distance::min_distance(&handle(c)?.code, budget as u128)? as u64))
}

/// Product lower bound on the distance (abelian ambients).
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_code_distance_bound(c: *const CcCode, budget: u64, out: *mut u64) -> CcStatus {
    guard(|| put(out, distance::distance_bound(&handle(c)?.code, budget as u128)? as u64))
}

/// Whether a self-dual code other than `<a^{t/2}>` exists.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_nontrivial_selfdual_exists(a: *const CcAmbient, out: *mut bool) -> CcStatus {
    guard(|| put(out, duality::nontrivial_selfdual_exists(&handle(a)?.dec)?))
}

/// Builds a non-trivial self-dual code.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_build_nontrivial_selfdual(a: *const CcAmbient, out: *mut *mut CcCode) -> CcStatus {
    guard(|| put_code(out, duality::build_nontrivial_selfdual(&handle(a)?.dec)?))
}
