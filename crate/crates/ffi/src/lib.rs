//! C ABI for `whitney-core`.
//!
//! Cochains and forms cross the boundary as opaque heap handles; everything
//! else goes through JSON strings in the same format the CLI reads and writes.
//! Every fallible call returns a [`WhitneyStatus`] and writes its result
//! through an out-pointer. On failure, [`whitney_last_error`] describes what
//! went wrong on the calling thread.
//!
//! Ownership: handles come from `*_from_json`, [`whitney_map`],
//! [`whitney_derham`] or [`whitney_characterize`] and are released with the
//! matching `*_free`. Strings written to a `char **` out-parameter are
//! released with [`whitney_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use whitney_core::characterize::{lambda_e_dimension, proof_trace, solve_characterization};
use whitney_core::derham::{derham, integrate_over_face};
use whitney_core::io::{cochain_from_json, cochain_to_json, form_from_json, form_to_json};
use whitney_core::render::{render_form, Style};
use whitney_core::whitney::whitney;
use whitney_core::{AffineForm, Cochain, Error, Face, Sign};

/// Opaque simplicial cochain.
pub struct WhitneyCochain(Cochain);

/// Opaque differential form with affine coefficients.
pub struct WhitneyForm(AffineForm);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhitneyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// A mathematical property failed to hold, e.g. non-unique characterization.
    Violation = 4,
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(message).expect("nul bytes removed")));
}

fn status_of(e: &Error) -> WhitneyStatus {
    match e {
        Error::Parse(_) => WhitneyStatus::Parse,
        e if e.is_violation() => WhitneyStatus::Violation,
        _ => WhitneyStatus::InvalidArgument,
    }
}

struct Failure(WhitneyStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(WhitneyStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> WhitneyStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WhitneyStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WhitneyStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(WhitneyStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|_| Failure(WhitneyStatus::InvalidArgument, "string contains nul".into()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(s.into_raw());
    Ok(())
}

/// Message for the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn whitney_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn whitney_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn whitney_cochain_from_json(json: *const c_char, out: *mut *mut WhitneyCochain) -> WhitneyStatus {
    guard(|| {
        let c = cochain_from_json(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(WhitneyCochain(c))))
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn whitney_cochain_to_json(c: *const WhitneyCochain, out: *mut *mut c_char) -> WhitneyStatus {
    guard(|| write_string(out, cochain_to_json(&deref(c, "cochain")?.0)))
}

/// # Safety
/// `c` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn whitney_cochain_free(c: *mut WhitneyCochain) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn whitney_form_from_json(json: *const c_char, out: *mut *mut WhitneyForm) -> WhitneyStatus {
    guard(|| {
        let form = form_from_json(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(WhitneyForm(form))))
    })
}

/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn whitney_form_to_json(form: *const WhitneyForm, out: *mut *mut c_char) -> WhitneyStatus {
    guard(|| write_string(out, form_to_json(&deref(form, "form")?.0)))
}

/// Human-readable rendering: plain text when `latex` is 0, LaTeX otherwise.
///
/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn whitney_form_render(form: *const WhitneyForm, latex: c_int, out: *mut *mut c_char) -> WhitneyStatus {
    guard(|| {
        let style = if latex == 0 { Style::Text } else { Style::Latex };
        write_string(out, render_form(&deref(form, "form")?.0, style))
    })
}

/// # Safety
/// `form` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn whitney_form_free(form: *mut WhitneyForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// The Whitney map: cochain to form.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn whitney_map(c: *const WhitneyCochain, out: *mut *mut WhitneyForm) -> WhitneyStatus {
    guard(|| {
        let form = whitney(&deref(c, "cochain")?.0)?;
        write_out(out, Box::into_raw(Box::new(WhitneyForm(form))))
    })
}

/// The de Rham map: integrates `form` over every face of its degree.
///
/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn whitney_derham(form: *const WhitneyForm, out: *mut *mut WhitneyCochain) -> WhitneyStatus {
    guard(|| {
        let c = derham(&deref(form, "form")?.0)?;
        write_out(out, Box::into_raw(Box::new(WhitneyCochain(c))))
    })
}

/// Solves the characterization system for `c`. Returns `Violation` if the
/// solution is not unique or disagrees with the Whitney map.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn whitney_characterize(c: *const WhitneyCochain, out: *mut *mut WhitneyForm) -> WhitneyStatus {
    guard(|| {
        let c = &deref(c, "cochain")?.0;
        let form = solve_characterization(c.n(), c.k(), c)?;
        write_out(out, Box::into_raw(Box::new(WhitneyForm(form))))
    })
}

/// Exact integral of `form` over the face with the given vertex labels, in
/// order, negated when `negative` is nonzero. Written as `"p/q"` or `"p"`.
///
/// # Safety
/// `form` must be a live handle, `vertices` must point to `len` readable
/// values, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn whitney_integrate(
    form: *const WhitneyForm,
    vertices: *const usize,
    len: usize,
    negative: c_int,
    out: *mut *mut c_char,
) -> WhitneyStatus {
    guard(|| {
        let form = &deref(form, "form")?.0;
        if vertices.is_null() && len > 0 {
            return Err(null("vertices"));
        }
        let labels = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(vertices, len).to_vec() };
        let sign = if negative == 0 { Sign::Positive } else { Sign::Negative };
        let face = Face::with_sign(form.n(), labels, sign)?;
        write_string(out, integrate_over_face(form, &face)?.to_string())
    })
}

/// Dimension of the space the characterization system pins down.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn whitney_lambda_e_dimension(n: usize, k: usize, out: *mut usize) -> WhitneyStatus {
    guard(|| write_out(out, lambda_e_dimension(n, k)?))
}

/// JSON replay of the two-stage elimination, for `1 <= k <= n - 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn whitney_proof_trace(n: usize, k: usize, out: *mut *mut c_char) -> WhitneyStatus {
    guard(|| write_string(out, proof_trace(n, k)?.to_json()))
}
