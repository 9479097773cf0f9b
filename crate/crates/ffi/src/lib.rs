//! C interface to `qfourier`.
//!
//! Every function returns a [`QfStatus`]; results come back through out
//! pointers. On failure, [`qf_last_error_message`] describes the error for the
//! calling thread. Handles are opaque and must be released with their `_free`
//! function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use qfourier::hilhorst::{
    closed_form_transform, degenerate_transform, hilhorst_lambda, hilhorst_window, make_window,
    ClosedFormOptions,
};
use qfourier::hyp2f1::{hyp2f1, hyp2f1_boundary, BoundaryPolicy, Hyp2F1Params};
use qfourier::qcore::{q_exponential, DeformationIndex};
use qfourier::{
    l1_norm, qft_point, qft_surface, FunctionSpec, QftError, QftSurface, TransformOptions,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Domain = 3,
    Pole = 4,
    NonFinite = 5,
    Convergence = 6,
    Degenerate = 7,
    BoundaryConvergence = 8,
    Quadrature = 9,
    FallbackRequired = 10,
    InvalidWindow = 11,
    OutOfRange = 12,
    Panic = 13,
    Other = 14,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QfComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for QfComplex {
    fn from(z: Complex64) -> Self {
        QfComplex { re: z.re, im: z.im }
    }
}

impl From<QfComplex> for Complex64 {
    fn from(z: QfComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Opaque function handle.
pub struct QfFunction(FunctionSpec);

/// Opaque transform surface handle.
pub struct QfSurface(QftSurface);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(QfStatus, String);

impl From<QftError> for Failure {
    fn from(e: QftError) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn status_of(e: &QftError) -> QfStatus {
    match e {
        QftError::InvalidInput(_) => QfStatus::InvalidInput,
        QftError::Domain(_) => QfStatus::Domain,
        QftError::Pole { .. } => QfStatus::Pole,
        QftError::NonFinite(_) => QfStatus::NonFinite,
        QftError::Convergence { .. } => QfStatus::Convergence,
        QftError::Degenerate { .. } => QfStatus::Degenerate,
        QftError::BoundaryConvergence { .. } => QfStatus::BoundaryConvergence,
        QftError::Quadrature { .. } => QfStatus::Quadrature,
        QftError::FallbackRequired(_) => QfStatus::FallbackRequired,
        QftError::InvalidWindow(_) | QftError::NoPartner(_) => QfStatus::InvalidWindow,
        QftError::SurfaceNode { source, .. } => status_of(source),
        _ => QfStatus::Other,
    }
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> QfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            QfStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            QfStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(QfStatus::NullPointer, format!("{what} is null"))
}

/// Write through an out pointer.
///
/// # Safety
/// `out` is null or valid for writes of `T`.
unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `p` is null or points at `n` readable `f64`s.
unsafe fn slice<'a>(p: *const f64, n: usize, what: &str) -> Result<&'a [f64], Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

/// # Safety
/// `p` is null or a live handle.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn options(rel_tol: f64) -> TransformOptions {
    if rel_tol > 0.0 {
        TransformOptions::default().with_rel_tol(rel_tol)
    } else {
        TransformOptions::default()
    }
}

fn new_function(spec: qfourier::Result<FunctionSpec>, out: *mut *mut QfFunction) -> QfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = Box::new(QfFunction(spec?));
        // SAFETY: checked non-null above; caller provides a writable slot
        unsafe { out.write(Box::into_raw(f)) };
        Ok(())
    })
}

/// Unit indicator on `[a, b]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_function_indicator(
    a: f64,
    b: f64,
    out: *mut *mut QfFunction,
) -> QfStatus {
    new_function(FunctionSpec::indicator(a, b), out)
}

/// Power-law window `(lambda/x)^beta` on `[a, b]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_function_powerlaw(
    a: f64,
    b: f64,
    beta: f64,
    lambda: f64,
    out: *mut *mut QfFunction,
) -> QfStatus {
    new_function(make_window(a, b, beta, lambda).map(Into::into), out)
}

/// Normalized power-law window with `beta = 1/(q-1)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_function_hilhorst(
    a: f64,
    b: f64,
    q: f64,
    out: *mut *mut QfFunction,
) -> QfStatus {
    new_function(hilhorst_window(a, b, q).map(Into::into), out)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_function_qgaussian(
    q: f64,
    width: f64,
    radius: f64,
    out: *mut *mut QfFunction,
) -> QfStatus {
    new_function(FunctionSpec::q_gaussian(q, width, radius), out)
}

/// Piecewise-linear function through `n` samples. The arrays are copied.
///
/// # Safety
/// `xs` and `ys` must each point at `n` readable doubles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_function_tabulated(
    xs: *const f64,
    ys: *const f64,
    n: usize,
    out: *mut *mut QfFunction,
) -> QfStatus {
    if xs.is_null() || ys.is_null() {
        return guard(|| Err(null("sample array")));
    }
    let (xs, ys) = (
        std::slice::from_raw_parts(xs, n),
        std::slice::from_raw_parts(ys, n),
    );
    new_function(FunctionSpec::tabulated(xs.to_vec(), ys.to_vec()), out)
}

/// Release a function handle. Null is ignored.
///
/// # Safety
/// `f` must come from a `qf_function_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qf_function_free(f: *mut QfFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_l1_norm(f: *const QfFunction, out: *mut f64) -> QfStatus {
    guard(|| {
        let f = handle(f, "function")?;
        put(out, l1_norm(&f.0)?, "out")
    })
}

/// F(k, q) by quadrature. `rel_tol <= 0` selects the default tolerance.
/// `err` may be null.
///
/// # Safety
/// `f` must be a live handle; `value` must be valid for writes; `err` null or valid.
#[no_mangle]
pub unsafe extern "C" fn qf_transform_point(
    f: *const QfFunction,
    q: f64,
    k: f64,
    rel_tol: f64,
    value: *mut QfComplex,
    err: *mut f64,
) -> QfStatus {
    guard(|| {
        let f = handle(f, "function")?;
        let v = qft_point(&f.0, q, k, &options(rel_tol))?;
        put(value, v.value.into(), "value")?;
        if !err.is_null() {
            err.write(v.error);
        }
        Ok(())
    })
}

/// Transform on the `nq x nk` grid.
///
/// # Safety
/// `f` must be a live handle; `k` and `q` must point at `nk` and `nq` doubles;
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_surface_new(
    f: *const QfFunction,
    k: *const f64,
    nk: usize,
    q: *const f64,
    nq: usize,
    rel_tol: f64,
    out: *mut *mut QfSurface,
) -> QfStatus {
    guard(|| {
        let f = handle(f, "function")?;
        let (k, q) = (slice(k, nk, "k")?, slice(q, nq, "q")?);
        if out.is_null() {
            return Err(null("out"));
        }
        let s = qft_surface(&f.0, k, q, &options(rel_tol)).map_err(QftError::from)?;
        out.write(Box::into_raw(Box::new(QfSurface(s))));
        Ok(())
    })
}

/// Value and error estimate at row `iq`, column `ik`. `err` may be null.
///
/// # Safety
/// `s` must be a live handle; `value` must be valid for writes; `err` null or valid.
#[no_mangle]
pub unsafe extern "C" fn qf_surface_value(
    s: *const QfSurface,
    iq: usize,
    ik: usize,
    value: *mut QfComplex,
    err: *mut f64,
) -> QfStatus {
    guard(|| {
        let s = &handle(s, "surface")?.0;
        if iq >= s.q_grid.len() || ik >= s.k_grid.len() {
            return Err(Failure(
                QfStatus::OutOfRange,
                format!(
                    "node ({iq}, {ik}) outside a {}x{} surface",
                    s.q_grid.len(),
                    s.k_grid.len()
                ),
            ));
        }
        put(value, s.value(iq, ik).into(), "value")?;
        if !err.is_null() {
            err.write(s.error(iq, ik));
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle; `nq` and `nk` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_surface_dims(
    s: *const QfSurface,
    nq: *mut usize,
    nk: *mut usize,
) -> QfStatus {
    guard(|| {
        let s = &handle(s, "surface")?.0;
        put(nq, s.q_grid.len(), "nq")?;
        put(nk, s.k_grid.len(), "nk")
    })
}

/// Release a surface handle. Null is ignored.
///
/// # Safety
/// `s` must come from [`qf_surface_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qf_surface_free(s: *mut QfSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Gauss hypergeometric function, principal branch.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_hyp2f1(
    a: f64,
    b: f64,
    c: f64,
    z: QfComplex,
    out: *mut QfComplex,
) -> QfStatus {
    guard(|| {
        let v = hyp2f1(&Hyp2F1Params::new(a, b, c, z.into())?)?;
        put(out, v.into(), "out")
    })
}

/// Limit of 2F1 at real `z` approached from the upper half-plane. `err` may be null.
///
/// # Safety
/// `out` must be valid for writes; `err` null or valid.
#[no_mangle]
pub unsafe extern "C" fn qf_hyp2f1_boundary(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    out: *mut QfComplex,
    err: *mut f64,
) -> QfStatus {
    guard(|| {
        let v = hyp2f1_boundary(&Hyp2F1Params::real(a, b, c, z)?, &BoundaryPolicy::default())?;
        put(out, v.value.into(), "out")?;
        if !err.is_null() {
            err.write(v.error);
        }
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_q_exponential(z: QfComplex, q: f64, out: *mut QfComplex) -> QfStatus {
    guard(|| {
        let v = q_exponential(z.into(), DeformationIndex::new(q)?)?;
        put(out, v.into(), "out")
    })
}

/// Shared fixed-q transform of every window on a Hilhorst level set.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_degenerate_transform(
    lambda: f64,
    q: f64,
    k: f64,
    out: *mut QfComplex,
) -> QfStatus {
    guard(|| put(out, degenerate_transform(lambda, q, k)?.into(), "out"))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qf_hilhorst_lambda(a: f64, b: f64, q: f64, out: *mut f64) -> QfStatus {
    guard(|| put(out, hilhorst_lambda(a, b, q)?, "out"))
}

/// Hypergeometric closed form for the window `(lambda/x)^beta` on `[a, b]`.
/// Returns `QF_STATUS_FALLBACK_REQUIRED` where only quadrature applies.
///
/// # Safety
/// `out` must be valid for writes; `err` null or valid.
#[no_mangle]
pub unsafe extern "C" fn qf_closed_form_transform(
    a: f64,
    b: f64,
    beta: f64,
    lambda: f64,
    q: f64,
    k: f64,
    out: *mut QfComplex,
    err: *mut f64,
) -> QfStatus {
    guard(|| {
        let w = make_window(a, b, beta, lambda)?;
        let v = closed_form_transform(&w, q, k, &ClosedFormOptions::default())?;
        put(out, v.value.into(), "out")?;
        if !err.is_null() {
            err.write(v.error);
        }
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next `qf_*` call on the same thread.
#[no_mangle]
pub extern "C" fn qf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

static VERSION: &CStr =
    match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version string"),
    };

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn qf_version() -> *const c_char {
    VERSION.as_ptr()
}
