//! C interface to `comte`.
//!
//! Every fallible function returns a [`ComteStatus`] and writes its result
//! through an out-pointer. On failure the message is available from
//! [`comte_last_error_message`] on the same thread. Strings handed out by the
//! library must be released with [`comte_string_free`]; handles with their
//! own `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use comte::census::{enumerate, Family};
use comte::graph::document::{decode_comte, encode_comte};
use comte::homology::{homology, homology_report};
use comte::link::{comte_of_diagram, comte_of_gauss, parse_gauss, parse_pd};
use comte::quandle::{colorings, phi_invariant, tetrahedron_cocycle, FiniteRack};
use comte::{validate, Comte};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComteStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Input text could not be parsed.
    Parse = 3,
    /// Parsed, but not a valid comte or argument.
    Invalid = 4,
    /// The computation itself failed, e.g. size limits.
    Computation = 5,
    Panic = 6,
}

/// `0` for r-graphs, `1` for q-graphs.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComteFamily {
    R = 0,
    Q = 1,
}

/// Opaque comte.
pub struct ComteHandle(Comte);

/// Opaque finite rack.
pub struct RackHandle(FiniteRack);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ComteStatus, String);

fn fail(status: ComteStatus, e: impl ToString) -> Failure {
    Failure(status, e.to_string())
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ComteStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            ComteStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(Some(format!("internal panic: {msg}")));
            ComteStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(ComteStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| fail(ComteStatus::InvalidUtf8, e))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| fail(ComteStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(ComteStatus::NullPointer, "null output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| fail(ComteStatus::Computation, e))?;
    if out.is_null() {
        return Err(fail(ComteStatus::NullPointer, "null output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn put_comte(out: *mut *mut ComteHandle, c: Comte) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(ComteHandle(c))))
}

/// Message of the last failure on this thread, or null after a success.
/// Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn comte_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is null or came from this library and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn comte_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `h` is null or came from this library and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn comte_free(h: *mut ComteHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Decodes a JSON document. Bad references fail with `Invalid`; flow
/// conservation is left to [`comte_is_valid`].
///
/// # Safety
/// `json` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_from_json(json: *const c_char, out: *mut *mut ComteHandle) -> ComteStatus {
    guard(|| {
        let c = decode_comte(text(json)?).map_err(|e| {
            let status = match e {
                comte::DecodeError::Field { .. } => ComteStatus::Invalid,
                comte::DecodeError::Syntax { .. } => ComteStatus::Parse,
            };
            fail(status, e)
        })?;
        put_comte(out, c)
    })
}

/// # Safety
/// `code` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_from_gauss(code: *const c_char, out: *mut *mut ComteHandle) -> ComteStatus {
    guard(|| {
        let d = parse_gauss(text(code)?).map_err(|e| fail(ComteStatus::Parse, e))?;
        put_comte(out, comte_of_gauss(&d).map_err(|e| fail(ComteStatus::Invalid, e))?)
    })
}

/// # Safety
/// `code` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_from_pd(code: *const c_char, out: *mut *mut ComteHandle) -> ComteStatus {
    guard(|| {
        let d = parse_pd(text(code)?).map_err(|e| fail(ComteStatus::Parse, e))?;
        put_comte(out, comte_of_diagram(&d).map_err(|e| fail(ComteStatus::Invalid, e))?)
    })
}

/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_to_json(h: *const ComteHandle, out: *mut *mut c_char) -> ComteStatus {
    guard(|| put_string(out, encode_comte(&deref(h)?.0)))
}

/// # Safety
/// `h` is a live handle; `vertices` and `arrows` are writable.
#[no_mangle]
pub unsafe extern "C" fn comte_counts(h: *const ComteHandle, vertices: *mut usize, arrows: *mut usize) -> ComteStatus {
    guard(|| {
        let g = deref(h)?.0.graph();
        put(vertices, g.vertex_count())?;
        put(arrows, g.arrow_count())
    })
}

/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_is_valid(h: *const ComteHandle, out: *mut bool) -> ComteStatus {
    guard(|| put(out, validate(&deref(h)?.0).is_valid()))
}

/// The `i`-th Alexander polynomial, unit-normalized, as text.
///
/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_alexander(h: *const ComteHandle, i: usize, out: *mut *mut c_char) -> ComteStatus {
    guard(|| {
        if i == 0 {
            return Err(fail(ComteStatus::Invalid, "elementary ideals are numbered from 1"));
        }
        let p = comte::alexander::alexander_polynomial(deref(h)?.0.graph(), i).unit_normalize();
        put_string(out, p.to_string())
    })
}

/// The linking matrix, one row per line.
///
/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_linking(h: *const ComteHandle, out: *mut *mut c_char) -> ComteStatus {
    guard(|| put_string(out, comte::invariants::linking_matrix(&deref(h)?.0).to_string()))
}

/// `trivial<n>`, `dihedral3` or `tetrahedron`.
///
/// # Safety
/// `name` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_rack_builtin(name: *const c_char, out: *mut *mut RackHandle) -> ComteStatus {
    guard(|| {
        let r = FiniteRack::builtin(text(name)?).map_err(|e| fail(ComteStatus::Invalid, e))?;
        put(out, Box::into_raw(Box::new(RackHandle(r))))
    })
}

/// A rack from its table: the size, then one row per element.
///
/// # Safety
/// `table` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_rack_parse(table: *const c_char, out: *mut *mut RackHandle) -> ComteStatus {
    guard(|| {
        let r = FiniteRack::parse(text(table)?).map_err(|e| fail(ComteStatus::Parse, e))?;
        put(out, Box::into_raw(Box::new(RackHandle(r))))
    })
}

/// # Safety
/// `r` is null or came from this library and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn comte_rack_free(r: *mut RackHandle) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `h` and `rack` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_coloring_count(
    h: *const ComteHandle,
    rack: *const RackHandle,
    out: *mut usize,
) -> ComteStatus {
    guard(|| put(out, colorings(deref(h)?.0.graph(), &deref(rack)?.0).len()))
}

/// The cocycle invariant for the tetrahedral quandle and its builtin
/// cocycle, e.g. `4 + 12*s`.
///
/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_phi_tetrahedron(h: *const ComteHandle, out: *mut *mut c_char) -> ComteStatus {
    guard(|| {
        let c = &deref(h)?.0;
        let report = validate(c);
        if !report.is_valid() {
            return Err(fail(ComteStatus::Invalid, report));
        }
        put_string(out, phi_invariant(c, &FiniteRack::tetrahedron(), &tetrahedron_cocycle()).to_string())
    })
}

/// `H_1 .. H_degree` of the underlying graph, one `H_k = ...` per line.
///
/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_homology(
    h: *const ComteHandle,
    degree: usize,
    q_quotient: bool,
    out: *mut *mut c_char,
) -> ComteStatus {
    guard(|| {
        let g = deref(h)?.0.graph();
        let groups = (1..=degree)
            .map(|n| homology(g, n, q_quotient))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| fail(ComteStatus::Computation, e))?;
        put_string(out, homology_report(&groups))
    })
}

/// Number of isomorphism classes on `vertices` vertices, the empty graph
/// included.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn comte_census_count(family: ComteFamily, vertices: usize, out: *mut usize) -> ComteStatus {
    guard(|| {
        let f = match family {
            ComteFamily::R => Family::R,
            ComteFamily::Q => Family::Q,
        };
        let classes = enumerate(f, vertices).map_err(|e| fail(ComteStatus::Invalid, e))?;
        put(out, classes.len())
    })
}
