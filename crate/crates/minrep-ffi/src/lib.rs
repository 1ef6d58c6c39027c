//! C ABI for the semigroup kernels, transforms and group factorization.
//!
//! Conventions: an opaque `MinrepModel` handle carries the dimension and
//! evaluation settings; every function returns a `MinrepStatus` and writes
//! results through out-pointers; complex numbers travel as (re, im) pairs;
//! matrices as row-major flat arrays. The most recent error message is
//! retrievable per thread via `minrep_last_error_message`.

use std::cell::RefCell;
use std::ffi::CString;
use std::os::raw::c_char;

use num_complex::Complex64;

use minrep::error::Error;
use minrep::group;
use minrep::inversion;
use minrep::kernel::{self, SpatialPoint};
use minrep::quadrature::gauss_laguerre_rule;
use minrep::radial::{self, ComplexTime, ModelParams, RadialProfile};
use minrep::specfun::SpecFunConfig;
use minrep::verify::{self, VerifyOptions};

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinrepStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DomainError = 3,
    NumericalError = 4,
    /// The element lies in the parabolic subgroup; the generic
    /// factorization does not apply.
    InParabolic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn remember(e: &Error) -> MinrepStatus {
    let status = match e {
        Error::InvalidArgument(_) => MinrepStatus::InvalidArgument,
        Error::InParabolic => MinrepStatus::InParabolic,
        Error::Domain(_)
        | Error::UnsupportedDimension(_)
        | Error::Extrapolation(_)
        | Error::Representation(_) => MinrepStatus::DomainError,
        _ => MinrepStatus::NumericalError,
    };
    let msg = CString::new(e.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
    status
}

/// The most recent error message on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn minrep_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Opaque evaluation context.
pub struct MinrepModel {
    params: ModelParams,
    cfg: SpecFunConfig,
}

/// Creates a model for dimension m >= 2. NULL on invalid input.
#[no_mangle]
pub extern "C" fn minrep_model_new(m: usize) -> *mut MinrepModel {
    match ModelParams::new(m) {
        Ok(params) => {
            Box::into_raw(Box::new(MinrepModel { params, cfg: SpecFunConfig::default() }))
        }
        Err(e) => {
            remember(&e);
            std::ptr::null_mut()
        }
    }
}

/// Frees a model handle. NULL is accepted.
///
/// # Safety
/// `model` must be a pointer from `minrep_model_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn minrep_model_free(model: *mut MinrepModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

unsafe fn deref<'a>(model: *const MinrepModel) -> Option<&'a MinrepModel> {
    model.as_ref()
}

fn write_complex(v: Complex64, out_re: *mut f64, out_im: *mut f64) -> MinrepStatus {
    if out_re.is_null() || out_im.is_null() {
        return MinrepStatus::NullPointer;
    }
    unsafe {
        *out_re = v.re;
        *out_im = v.im;
    }
    MinrepStatus::Ok
}

/// Radial kernel K_l(r, r'; t).
///
/// # Safety
/// `model` must be valid; `out_re`, `out_im` must point to writable f64.
#[no_mangle]
pub unsafe extern "C" fn minrep_radial_kernel(
    model: *const MinrepModel,
    l: usize,
    r: f64,
    rp: f64,
    t_re: f64,
    t_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> MinrepStatus {
    let Some(model) = deref(model) else { return MinrepStatus::NullPointer };
    let t = match ComplexTime::from_parts(t_re, t_im) {
        Ok(t) => t,
        Err(e) => return remember(&e),
    };
    match radial::radial_kernel(r, rp, &t, l, model.params, &model.cfg) {
        Ok(v) => write_complex(v, out_re, out_im),
        Err(e) => remember(&e),
    }
}

/// Full kernel K(x, x'; t); `x` and `xp` each hold m coordinates.
///
/// # Safety
/// `x`, `xp` must point to m readable f64 each; out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn minrep_full_kernel(
    model: *const MinrepModel,
    x: *const f64,
    xp: *const f64,
    t_re: f64,
    t_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> MinrepStatus {
    let Some(model) = deref(model) else { return MinrepStatus::NullPointer };
    if x.is_null() || xp.is_null() {
        return MinrepStatus::NullPointer;
    }
    let m = model.params.m();
    let xs = std::slice::from_raw_parts(x, m).to_vec();
    let xps = std::slice::from_raw_parts(xp, m).to_vec();
    let run = || -> Result<Complex64, Error> {
        let t = ComplexTime::from_parts(t_re, t_im)?;
        kernel::full_kernel(&SpatialPoint::new(xs)?, &SpatialPoint::new(xps)?, &t, model.params, &model.cfg)
    };
    match run() {
        Ok(v) => write_complex(v, out_re, out_im),
        Err(e) => remember(&e),
    }
}

/// Boundary-value (inversion) kernel K(x, x').
///
/// # Safety
/// As for `minrep_full_kernel`.
#[no_mangle]
pub unsafe extern "C" fn minrep_inversion_kernel(
    model: *const MinrepModel,
    x: *const f64,
    xp: *const f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> MinrepStatus {
    let Some(model) = deref(model) else { return MinrepStatus::NullPointer };
    if x.is_null() || xp.is_null() {
        return MinrepStatus::NullPointer;
    }
    let m = model.params.m();
    let xs = std::slice::from_raw_parts(x, m).to_vec();
    let xps = std::slice::from_raw_parts(xp, m).to_vec();
    let run = || -> Result<Complex64, Error> {
        Ok(inversion::inversion_kernel(
            &SpatialPoint::new(xs)?,
            &SpatialPoint::new(xps)?,
            model.params,
            &model.cfg,
        )?
        .value)
    };
    match run() {
        Ok(v) => write_complex(v, out_re, out_im),
        Err(e) => remember(&e),
    }
}

/// Value of the eigenprofile f_{a,l} at r.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn minrep_eigenprofile_eval(
    model: *const MinrepModel,
    a: usize,
    l: usize,
    r: f64,
    out: *mut f64,
) -> MinrepStatus {
    let Some(model) = deref(model) else { return MinrepStatus::NullPointer };
    if out.is_null() {
        return MinrepStatus::NullPointer;
    }
    match radial::make_fal(a, l, model.params) {
        Ok(f) => {
            *out = f.eval(r).re;
            MinrepStatus::Ok
        }
        Err(e) => remember(&e),
    }
}

/// Applies the semigroup at time t to the eigenprofile f_{a,l} on a
/// caller grid of n points, writing n complex values.
///
/// # Safety
/// `grid` must hold n readable f64; `out_re`, `out_im` n writable f64.
#[no_mangle]
pub unsafe extern "C" fn minrep_semigroup_apply(
    model: *const MinrepModel,
    a: usize,
    l: usize,
    t_re: f64,
    t_im: f64,
    quad_n: usize,
    grid: *const f64,
    n: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> MinrepStatus {
    let Some(model) = deref(model) else { return MinrepStatus::NullPointer };
    if grid.is_null() || out_re.is_null() || out_im.is_null() {
        return MinrepStatus::NullPointer;
    }
    let grid = std::slice::from_raw_parts(grid, n);
    let run = || -> Result<Vec<Complex64>, Error> {
        let t = ComplexTime::from_parts(t_re, t_im)?;
        let f = radial::make_fal(a, l, model.params)?;
        let quad = gauss_laguerre_rule(quad_n.max(1), model.params.m() as f64 - 2.0)?;
        radial::apply_radial_semigroup(
            &RadialProfile::QuasiPolynomial(&f),
            &t,
            l,
            model.params,
            &quad,
            grid,
            &model.cfg,
        )
    };
    match run() {
        Ok(values) => {
            for (i, v) in values.iter().enumerate() {
                *out_re.add(i) = v.re;
                *out_im.add(i) = v.im;
            }
            MinrepStatus::Ok
        }
        Err(e) => remember(&e),
    }
}

/// Factors a group element given as an (m+3)^2 row-major matrix. Writes
/// the translation parameters (m+1 each), the dilation parameter, the
/// sign, the stabilizer block ((m+3)^2, row major) and the reconstruction
/// error. Parabolic elements return `InParabolic` and write nothing.
///
/// # Safety
/// All pointers must reference buffers of the stated sizes.
#[no_mangle]
pub unsafe extern "C" fn minrep_bruhat_factor(
    model: *const MinrepModel,
    entries: *const f64,
    out_b: *mut f64,
    out_t: *mut f64,
    out_delta: *mut f64,
    out_m_plus: *mut f64,
    out_a: *mut f64,
    out_reconstruction_error: *mut f64,
) -> MinrepStatus {
    let Some(model) = deref(model) else { return MinrepStatus::NullPointer };
    if entries.is_null()
        || out_b.is_null()
        || out_t.is_null()
        || out_delta.is_null()
        || out_m_plus.is_null()
        || out_a.is_null()
        || out_reconstruction_error.is_null()
    {
        return MinrepStatus::NullPointer;
    }
    let m = model.params.m();
    let n = m + 3;
    let flat = std::slice::from_raw_parts(entries, n * n);
    let run = || -> Result<(group::BruhatFactors, f64), Error> {
        let mat = nalgebra::DMatrix::from_row_slice(n, n, flat);
        let g = group::LorentzMatrix::new(mat, model.params)?;
        let f = group::bruhat_factor(&g, model.params)?;
        let err = f.reconstruction_error(&g, model.params)?;
        Ok((f, err))
    };
    match run() {
        Ok((f, err)) => {
            for (i, &v) in f.b.iter().enumerate() {
                *out_b.add(i) = v;
            }
            for (i, &v) in f.a.iter().enumerate() {
                *out_a.add(i) = v;
            }
            *out_t = f.t;
            *out_delta = f.delta;
            for i in 0..n {
                for j in 0..n {
                    *out_m_plus.add(i * n + j) = f.m_plus.matrix()[(i, j)];
                }
            }
            *out_reconstruction_error = err;
            MinrepStatus::Ok
        }
        Err(e) => remember(&e),
    }
}

/// Runs a named verification suite ("all" included); writes the case and
/// failure counts. Status Ok means the suite ran, not that it passed.
///
/// # Safety
/// `suite` must be a NUL-terminated string; count pointers writable.
#[no_mangle]
pub unsafe extern "C" fn minrep_verify_suite(
    suite: *const c_char,
    out_cases: *mut usize,
    out_failed: *mut usize,
) -> MinrepStatus {
    if suite.is_null() || out_cases.is_null() || out_failed.is_null() {
        return MinrepStatus::NullPointer;
    }
    let name = match std::ffi::CStr::from_ptr(suite).to_str() {
        Ok(s) => s,
        Err(_) => return MinrepStatus::InvalidArgument,
    };
    match verify::run_suite(name, &VerifyOptions::default()) {
        Ok(reports) => {
            *out_cases = reports.iter().map(|r| r.cases.len()).sum();
            *out_failed = reports.iter().map(|r| r.failed).sum();
            MinrepStatus::Ok
        }
        Err(e) => remember(&e),
    }
}
