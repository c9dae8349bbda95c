//! C ABI over `vvmod-core`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every call returns a [`VvmodStatus`];
//! on failure the message is kept per thread and read back with
//! [`vvmod_last_error`]. Strings returned through `char **` are released with
//! [`vvmod_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vvmod_core::eisenstein::{self, EisensteinSpec};
use vvmod_core::identities::{run_all, RunConfig};
use vvmod_core::symframe::VectorForm;
use vvmod_core::{Error, EvalPoint, ScalarExpansion, C64};

/// Result of every exported call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VvmodStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed input: bad JSON, invalid UTF-8, index out of range, point
    /// off the upper half plane and the like.
    InvalidArgument = 2,
    /// Mismatched weights, parity or dimensions.
    Incompatible = 3,
    /// Divergent series, poles, unsupported parameter regions or a
    /// non-converging residue.
    Numeric = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
}

/// Complex number as two doubles.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VvmodComplex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for VvmodComplex {
    fn from(z: C64) -> Self {
        VvmodComplex { re: z.re, im: z.im }
    }
}

impl From<VvmodComplex> for C64 {
    fn from(z: VvmodComplex) -> Self {
        C64::new(z.re, z.im)
    }
}

/// Opaque scalar expansion in `C[[q]][1/y]`.
pub struct VvmodExpansion(ScalarExpansion);

/// Opaque vector-valued form in frame coordinates.
pub struct VvmodVectorForm(VectorForm);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> VvmodStatus {
    match err {
        Error::Parity(_) | Error::WeightMismatch { .. } | Error::Dimension(_) => VvmodStatus::Incompatible,
        e if e.is_numeric() => VvmodStatus::Numeric,
        _ => VvmodStatus::InvalidArgument,
    }
}

enum Failure {
    Null(&'static str),
    Invalid(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> VvmodStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            VvmodStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            VvmodStatus::NullPointer
        }
        Ok(Err(Failure::Invalid(msg))) => {
            set_error(msg);
            VvmodStatus::InvalidArgument
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            VvmodStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure::Invalid(format!("{what} is not UTF-8: {e}")))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|e| Failure::Invalid(e.to_string()))
}

fn point(x: f64, y: f64) -> Result<EvalPoint, Failure> {
    Ok(EvalPoint::new(x, y)?)
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message of the last failed call on this thread, or NULL after a
/// successful one. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn vvmod_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn vvmod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- scalar expansions ----

/// Non-holomorphic `E_2` truncated at `q^order`.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_e2(order: usize, out: *mut *mut VvmodExpansion) -> VvmodStatus {
    guard(|| write_out(out, boxed(VvmodExpansion(eisenstein::e2_expansion(order))), "out"))
}

/// Holomorphic `E_2` truncated at `q^order`.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_e2hol(order: usize, out: *mut *mut VvmodExpansion) -> VvmodStatus {
    guard(|| write_out(out, boxed(VvmodExpansion(eisenstein::e2hol_expansion(order))), "out"))
}

/// Parse the JSON written by [`vvmod_expansion_to_json`].
///
/// # Safety
/// `json` must be a NUL-terminated string, `out` valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_from_json(json: *const c_char, out: *mut *mut VvmodExpansion) -> VvmodStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let f: ScalarExpansion =
            serde_json::from_str(text).map_err(|e| Failure::Invalid(format!("expansion json: {e}")))?;
        write_out(out, boxed(VvmodExpansion(f)), "out")
    })
}

/// # Safety
/// `f` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_free(f: *mut VvmodExpansion) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_clone(f: *const VvmodExpansion, out: *mut *mut VvmodExpansion) -> VvmodStatus {
    guard(|| {
        let f = deref(f, "f")?;
        write_out(out, boxed(VvmodExpansion(f.0.clone())), "out")
    })
}

/// Weight, depth (largest power of `1/y`) and truncation order.
///
/// # Safety
/// `f` must be a live handle; each out pointer may be NULL.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_shape(
    f: *const VvmodExpansion,
    weight: *mut i32,
    depth: *mut usize,
    order: *mut usize,
) -> VvmodStatus {
    guard(|| {
        let f = &deref(f, "f")?.0;
        if let Some(w) = weight.as_mut() {
            *w = f.weight();
        }
        if let Some(d) = depth.as_mut() {
            *d = f.depth();
        }
        if let Some(o) = order.as_mut() {
            *o = f.order();
        }
        Ok(())
    })
}

/// Coefficient of `y^-r q^n`; zero outside the stored range.
///
/// # Safety
/// `f` must be a live handle, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_coeff(
    f: *const VvmodExpansion,
    r: usize,
    n: usize,
    out: *mut VvmodComplex,
) -> VvmodStatus {
    guard(|| {
        let f = deref(f, "f")?;
        write_out(out, f.0.coeff(r, n).into(), "out")
    })
}

unsafe fn unary(
    f: *const VvmodExpansion,
    out: *mut *mut VvmodExpansion,
    op: fn(&ScalarExpansion) -> ScalarExpansion,
) -> VvmodStatus {
    guard(|| {
        let f = deref(f, "f")?;
        write_out(out, boxed(VvmodExpansion(op(&f.0))), "out")
    })
}

/// Lowering operator, weight `k -> k - 2`.
///
/// # Safety
/// `f` must be a live handle, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_lower(f: *const VvmodExpansion, out: *mut *mut VvmodExpansion) -> VvmodStatus {
    unary(f, out, ScalarExpansion::lower)
}

/// Raising operator, weight `k -> k + 2`.
///
/// # Safety
/// `f` must be a live handle, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_raise(f: *const VvmodExpansion, out: *mut *mut VvmodExpansion) -> VvmodStatus {
    unary(f, out, ScalarExpansion::raise)
}

/// Weight-`k` Laplacian.
///
/// # Safety
/// `f` must be a live handle, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_laplace(
    f: *const VvmodExpansion,
    out: *mut *mut VvmodExpansion,
) -> VvmodStatus {
    unary(f, out, ScalarExpansion::laplace)
}

/// Product, truncated at the smaller order.
///
/// # Safety
/// `f`, `g` must be live handles, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_mul(
    f: *const VvmodExpansion,
    g: *const VvmodExpansion,
    out: *mut *mut VvmodExpansion,
) -> VvmodStatus {
    guard(|| {
        let (f, g) = (deref(f, "f")?, deref(g, "g")?);
        write_out(out, boxed(VvmodExpansion(f.0.mul(&g.0))), "out")
    })
}

/// Sum of two expansions of equal weight.
///
/// # Safety
/// `f`, `g` must be live handles, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_add(
    f: *const VvmodExpansion,
    g: *const VvmodExpansion,
    out: *mut *mut VvmodExpansion,
) -> VvmodStatus {
    guard(|| {
        let (f, g) = (deref(f, "f")?, deref(g, "g")?);
        write_out(out, boxed(VvmodExpansion(f.0.checked_add(&g.0)?)), "out")
    })
}

/// Value at `tau = x + iy` and a bound on the truncation error.
///
/// # Safety
/// `f` must be a live handle, `value` valid for writing; `tail_bound` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_eval(
    f: *const VvmodExpansion,
    x: f64,
    y: f64,
    value: *mut VvmodComplex,
    tail_bound: *mut f64,
) -> VvmodStatus {
    guard(|| {
        let f = deref(f, "f")?;
        let e = f.0.eval(&point(x, y)?);
        if let Some(t) = tail_bound.as_mut() {
            *t = e.tail_bound;
        }
        write_out(value, e.value.into(), "value")
    })
}

/// Serialize to JSON; release the string with [`vvmod_string_free`].
///
/// # Safety
/// `f` must be a live handle, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_expansion_to_json(f: *const VvmodExpansion, out: *mut *mut c_char) -> VvmodStatus {
    guard(|| {
        let f = deref(f, "f")?;
        let text = serde_json::to_string(&f.0).map_err(|e| Failure::Invalid(e.to_string()))?;
        write_out(out, to_c_string(text)?, "out")
    })
}

// ---- vector-valued forms ----

/// The holomorphic weight-1, `m = 1` form built from `E_2`.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn vvmod_vector_form_e2vec(order: usize, out: *mut *mut VvmodVectorForm) -> VvmodStatus {
    guard(|| write_out(out, boxed(VvmodVectorForm(eisenstein::e2vec(order))), "out"))
}

/// The frame vector `e_{j,m-j}` as a form of weight `m - 2j`.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn vvmod_vector_form_frame(
    j: usize,
    m: usize,
    order: usize,
    out: *mut *mut VvmodVectorForm,
) -> VvmodStatus {
    guard(|| write_out(out, boxed(VvmodVectorForm(VectorForm::pure_frame(j, m, order)?)), "out"))
}

/// Assemble a form of weight `weight` from `m + 1` frame components. The
/// components are copied; the caller keeps ownership.
///
/// # Safety
/// `components` must point to `count` live expansion handles.
#[no_mangle]
pub unsafe extern "C" fn vvmod_vector_form_new(
    weight: i32,
    components: *const *const VvmodExpansion,
    count: usize,
    out: *mut *mut VvmodVectorForm,
) -> VvmodStatus {
    guard(|| {
        if components.is_null() || count == 0 {
            return Err(Failure::Null("components"));
        }
        let frame = std::slice::from_raw_parts(components, count)
            .iter()
            .map(|&c| deref(c, "component").map(|c| c.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        write_out(out, boxed(VvmodVectorForm(VectorForm::new(weight, frame)?)), "out")
    })
}

/// # Safety
/// `f` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn vvmod_vector_form_free(f: *mut VvmodVectorForm) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Weight and symmetric power `m`.
///
/// # Safety
/// `f` must be a live handle; each out pointer may be NULL.
#[no_mangle]
pub unsafe extern "C" fn vvmod_vector_form_shape(
    f: *const VvmodVectorForm,
    weight: *mut i32,
    m: *mut usize,
) -> VvmodStatus {
    guard(|| {
        let f = &deref(f, "f")?.0;
        if let Some(w) = weight.as_mut() {
            *w = f.weight();
        }
        if let Some(mm) = m.as_mut() {
            *mm = f.m();
        }
        Ok(())
    })
}

/// Copy of the coefficient of `e_{j,m-j}`.
///
/// # Safety
/// `f` must be a live handle, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_vector_form_component(
    f: *const VvmodVectorForm,
    j: usize,
    out: *mut *mut VvmodExpansion,
) -> VvmodStatus {
    guard(|| {
        let f = &deref(f, "f")?.0;
        let c = f.component(j).ok_or_else(|| Error::Index(format!("component {j} of a form with m = {}", f.m())))?;
        write_out(out, boxed(VvmodExpansion(c.clone())), "out")
    })
}

/// # Safety
/// `f` must be a live handle, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_vector_form_lower(
    f: *const VvmodVectorForm,
    out: *mut *mut VvmodVectorForm,
) -> VvmodStatus {
    guard(|| {
        let f = deref(f, "f")?;
        write_out(out, boxed(VvmodVectorForm(f.0.lower()?)), "out")
    })
}

/// # Safety
/// `f` must be a live handle, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_vector_form_raise(
    f: *const VvmodVectorForm,
    out: *mut *mut VvmodVectorForm,
) -> VvmodStatus {
    guard(|| {
        let f = deref(f, "f")?;
        write_out(out, boxed(VvmodVectorForm(f.0.raise()?)), "out")
    })
}

/// Value at `tau` as the coefficients of `1, X, ..., X^m`. `coeffs` must
/// hold `m + 1` entries; `len` is the caller's capacity.
///
/// # Safety
/// `f` must be a live handle and `coeffs` valid for `len` writes;
/// `tail_bound` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn vvmod_vector_form_eval(
    f: *const VvmodVectorForm,
    x: f64,
    y: f64,
    coeffs: *mut VvmodComplex,
    len: usize,
    tail_bound: *mut f64,
) -> VvmodStatus {
    guard(|| {
        let f = &deref(f, "f")?.0;
        if coeffs.is_null() {
            return Err(Failure::Null("coeffs"));
        }
        if len < f.m() + 1 {
            return Err(Failure::Invalid(format!("coeffs holds {len} entries, need {}", f.m() + 1)));
        }
        let (value, tail) = f.eval(&point(x, y)?)?;
        for (a, c) in value.coeffs().iter().enumerate() {
            coeffs.add(a).write((*c).into());
        }
        if let Some(t) = tail_bound.as_mut() {
            *t = tail;
        }
        Ok(())
    })
}

/// # Safety
/// `f` must be a live handle, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_vector_form_to_json(f: *const VvmodVectorForm, out: *mut *mut c_char) -> VvmodStatus {
    guard(|| {
        let f = deref(f, "f")?;
        let text = serde_json::to_string(&f.0).map_err(|e| Failure::Invalid(e.to_string()))?;
        write_out(out, to_c_string(text)?, "out")
    })
}

/// # Safety
/// `json` must be a NUL-terminated string, `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_vector_form_from_json(
    json: *const c_char,
    out: *mut *mut VvmodVectorForm,
) -> VvmodStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let f: VectorForm =
            serde_json::from_str(text).map_err(|e| Failure::Invalid(format!("vector form json: {e}")))?;
        write_out(out, boxed(VvmodVectorForm(f)), "out")
    })
}

// ---- Eisenstein series ----

/// `E_k(tau, s)` from its Fourier expansion with `order` terms.
///
/// # Safety
/// `value` must be valid for writing; `tail_bound` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn vvmod_eis_fourier(
    k: i32,
    s: VvmodComplex,
    x: f64,
    y: f64,
    order: usize,
    value: *mut VvmodComplex,
    tail_bound: *mut f64,
) -> VvmodStatus {
    guard(|| {
        let spec = EisensteinSpec::scalar(k, s.into());
        let e = eisenstein::eis_fourier_with_tail(&spec, &point(x, y)?, order)?;
        if let Some(t) = tail_bound.as_mut() {
            *t = e.tail_bound;
        }
        write_out(value, e.value.into(), "value")
    })
}

/// `E_k(tau, s)` as a coset sum over bottom rows with `max(|c|, |d|) <= radius`.
///
/// # Safety
/// `value` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_eis_sum(
    k: i32,
    s: VvmodComplex,
    x: f64,
    y: f64,
    radius: u32,
    value: *mut VvmodComplex,
) -> VvmodStatus {
    guard(|| {
        let spec = EisensteinSpec::scalar(k, s.into());
        let v = eisenstein::eis_sum(&spec, &point(x, y)?, radius)?;
        write_out(value, v.into(), "value")
    })
}

// ---- checks ----

/// Run the registered identity checks. `filter` is a glob over check names
/// or NULL for all of them. Writes the reports as a JSON array to `json`
/// and whether every selected check passed to `all_passed`.
///
/// # Safety
/// `filter` must be NULL or NUL-terminated; `json` and `all_passed` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn vvmod_verify(
    order: usize,
    radius: u32,
    filter: *const c_char,
    json: *mut *mut c_char,
    all_passed: *mut bool,
) -> VvmodStatus {
    guard(|| {
        let filter = if filter.is_null() { None } else { Some(read_str(filter, "filter")?.to_string()) };
        let config = RunConfig { order, radius, filter, ..RunConfig::default() };
        let reports = run_all(&config)?;
        let text = serde_json::to_string(&reports).map_err(|e| Failure::Invalid(e.to_string()))?;
        write_out(all_passed, reports.iter().all(|r| r.passed), "all_passed")?;
        write_out(json, to_c_string(text)?, "json")
    })
}
