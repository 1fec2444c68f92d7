//! C ABI over the `impgen` library.
//!
//! Clauses cross the boundary as opaque [`ImpgenClause`] handles. Every
//! entry point returns an [`ImpgenStatus`]; on a negative status the message
//! is available from [`impgen_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use impgen::expansion::{expand, lggt, ExpansionScript, LggtOptions};
use impgen::grounding::{t_implies, term_set};
use impgen::resolution::{implies_bounded, Implication};
use impgen::{Clause, Error};

/// Opaque clause handle.
pub struct ImpgenClause(Clause);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImpgenStatus {
    /// Affirmative answer or successful construction.
    Ok = 0,
    /// Negative answer.
    No = 1,
    /// Search budget exhausted without an answer.
    Unknown = 2,
    NullArgument = -1,
    InvalidUtf8 = -2,
    Parse = -3,
    ResourceLimit = -4,
    InvalidInput = -5,
    Internal = -6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: ImpgenStatus, msg: impl Into<String>) -> ImpgenStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> ImpgenStatus {
    let status = match e {
        Error::Syntax { .. } => ImpgenStatus::Parse,
        Error::ResourceLimit { .. } => ImpgenStatus::ResourceLimit,
        Error::BudgetExhausted(_) => ImpgenStatus::Unknown,
        _ => ImpgenStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> ImpgenStatus) -> ImpgenStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(ImpgenStatus::Internal, "internal panic"))
}

fn answer(yes: bool) -> ImpgenStatus {
    if yes {
        ImpgenStatus::Ok
    } else {
        ImpgenStatus::No
    }
}

unsafe fn clause_ref<'a>(p: *const ImpgenClause) -> Result<&'a Clause, ImpgenStatus> {
    // SAFETY: the caller passes null or a live handle from this library.
    unsafe { p.as_ref() }
        .map(|c| &c.0)
        .ok_or_else(|| fail(ImpgenStatus::NullArgument, "null clause handle"))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, ImpgenStatus> {
    if p.is_null() {
        return Err(fail(ImpgenStatus::NullArgument, "null string"));
    }
    // SAFETY: the caller passes a nul-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| fail(ImpgenStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn clause_array(items: *const *const ImpgenClause, n: usize) -> Result<Vec<Clause>, ImpgenStatus> {
    if items.is_null() {
        return Err(fail(ImpgenStatus::NullArgument, "null clause array"));
    }
    // SAFETY: the caller passes `n` readable handle pointers.
    let slice = unsafe { std::slice::from_raw_parts(items, n) };
    slice.iter().map(|&p| unsafe { clause_ref(p) }.cloned()).collect()
}

unsafe fn emit(out: *mut *mut ImpgenClause, c: Clause) -> ImpgenStatus {
    if out.is_null() {
        return fail(ImpgenStatus::NullArgument, "null output pointer");
    }
    // SAFETY: `out` is writable per the caller contract.
    unsafe { *out = Box::into_raw(Box::new(ImpgenClause(c))) };
    ImpgenStatus::Ok
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn impgen_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn impgen_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses one clause, e.g. `p(f(X)) :- p(X).`
///
/// # Safety
/// `src` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn impgen_clause_parse(src: *const c_char, out: *mut *mut ImpgenClause) -> ImpgenStatus {
    guard(|| {
        let s = tri!(unsafe { text(src) });
        match impgen::parse_clause(s) {
            Ok(c) => unsafe { emit(out, c) },
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn impgen_clause_free(c: *mut ImpgenClause) {
    if !c.is_null() {
        // SAFETY: allocated by `emit`.
        drop(unsafe { Box::from_raw(c) });
    }
}

/// Canonical text of a clause, to be released with [`impgen_string_free`].
/// Null if `c` is null.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn impgen_clause_format(c: *const ImpgenClause) -> *mut c_char {
    match unsafe { clause_ref(c) } {
        Ok(c) => CString::new(impgen::format_clause(c)).map_or(ptr::null_mut(), CString::into_raw),
        Err(_) => ptr::null_mut(),
    }
}

/// Number of literals, 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn impgen_clause_len(c: *const ImpgenClause) -> usize {
    unsafe { c.as_ref() }.map_or(0, |c| c.0.len())
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn impgen_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by `CString::into_raw`.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// OK if `c` θ-subsumes `d`, NO otherwise. When `witness` is non-null it
/// receives the substitution as text (free with [`impgen_string_free`]),
/// or null on NO.
///
/// # Safety
/// `c`, `d` must be live handles; `witness` null or writable.
#[no_mangle]
pub unsafe extern "C" fn impgen_theta_subsumes(
    c: *const ImpgenClause,
    d: *const ImpgenClause,
    witness: *mut *mut c_char,
) -> ImpgenStatus {
    guard(|| {
        let (c, d) = (tri!(unsafe { clause_ref(c) }), tri!(unsafe { clause_ref(d) }));
        let w = impgen::theta_subsumes(c, d);
        if !witness.is_null() {
            let s = w.as_ref().map_or(ptr::null_mut(), |w| {
                CString::new(w.substitution.to_string()).map_or(ptr::null_mut(), CString::into_raw)
            });
            // SAFETY: checked non-null above.
            unsafe { *witness = s };
        }
        answer(w.is_some())
    })
}

/// # Safety
/// `c`, `d` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn impgen_theta_equivalent(c: *const ImpgenClause, d: *const ImpgenClause) -> ImpgenStatus {
    guard(|| {
        let (c, d) = (tri!(unsafe { clause_ref(c) }), tri!(unsafe { clause_ref(d) }));
        answer(impgen::theta_equivalent(c, d))
    })
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn impgen_reduce(c: *const ImpgenClause, out: *mut *mut ImpgenClause) -> ImpgenStatus {
    guard(|| {
        let c = tri!(unsafe { clause_ref(c) });
        unsafe { emit(out, impgen::reduce(c)) }
    })
}

/// Reduced LGG under θ-subsumption of `n` clauses.
///
/// # Safety
/// `items` must point to `n` live handles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn impgen_lgg(
    items: *const *const ImpgenClause,
    n: usize,
    out: *mut *mut ImpgenClause,
) -> ImpgenStatus {
    guard(|| {
        let s = tri!(unsafe { clause_array(items, n) });
        match impgen::lgg_set(&s) {
            Ok(l) => unsafe { emit(out, l.tidy()) },
            Err(e) => from_error(e),
        }
    })
}

/// OK if `c` T-implies `d` over the minimal term set of `d` extended
/// `extra_depth` rounds, NO otherwise.
///
/// # Safety
/// `c`, `d` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn impgen_t_implies(
    c: *const ImpgenClause,
    d: *const ImpgenClause,
    extra_depth: usize,
) -> ImpgenStatus {
    guard(|| {
        let (c, d) = (tri!(unsafe { clause_ref(c) }), tri!(unsafe { clause_ref(d) }));
        let t = match term_set(std::slice::from_ref(d), std::slice::from_ref(c), extra_depth) {
            Ok(t) => t,
            Err(e) => return from_error(e),
        };
        match t_implies(c, d, Some(&t)) {
            Ok(b) => answer(b),
            Err(e) => from_error(e),
        }
    })
}

/// OK if a clause in the first `depth` resolution layers of `{c}`
/// θ-subsumes `d`, UNKNOWN otherwise. Never answers NO.
///
/// # Safety
/// `c`, `d` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn impgen_implies_bounded(
    c: *const ImpgenClause,
    d: *const ImpgenClause,
    depth: usize,
) -> ImpgenStatus {
    guard(|| {
        let (c, d) = (tri!(unsafe { clause_ref(c) }), tri!(unsafe { clause_ref(d) }));
        match implies_bounded(c, d, depth) {
            Ok(Implication::Unknown { .. }) => ImpgenStatus::Unknown,
            Ok(_) => ImpgenStatus::Ok,
            Err(e) => from_error(e),
        }
    })
}

/// Expansion of `c` by a script such as `0#p(f(f(a))), 0#p(f(a))`.
///
/// # Safety
/// `c` must be a live handle, `script` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn impgen_expand(
    c: *const ImpgenClause,
    script: *const c_char,
    out: *mut *mut ImpgenClause,
) -> ImpgenStatus {
    guard(|| {
        let c = tri!(unsafe { clause_ref(c) });
        let s = tri!(unsafe { text(script) });
        let r = ExpansionScript::parse(s).and_then(|s| expand(c, &s));
        match r {
            Ok(e) => unsafe { emit(out, e.result.tidy()) },
            Err(e) => from_error(e),
        }
    })
}

/// LGG under T-implication of `n` clauses over their minimal term set.
///
/// # Safety
/// `items` must point to `n` live handles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn impgen_lggt(
    items: *const *const ImpgenClause,
    n: usize,
    out: *mut *mut ImpgenClause,
) -> ImpgenStatus {
    guard(|| {
        let s = tri!(unsafe { clause_array(items, n) });
        match lggt(&s, None, &LggtOptions::default()) {
            Ok(r) => unsafe { emit(out, r.clause) },
            Err(e) => from_error(e),
        }
    })
}
