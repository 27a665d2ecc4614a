//! C ABI for the formdual library.
//!
//! Objects cross the boundary as opaque handles (`fd_surface`, `fd_field`,
//! `fd_pair`); every function returns an `fd_status` code and writes results
//! through out-pointers. Covectors are marshalled as dense coefficient
//! arrays over the increasing-multi-index basis in ascending mask order;
//! `fd_basis_size(n, degree)` gives the expected length.
//!
//! The installed header lives at `include/formdual.h` and is maintained
//! alongside this file (`cbindgen --config cbindgen.toml` regenerates it
//! where available).
//!
//! Error details beyond the status code are kept per thread and retrieved
//! with `fd_last_error`.

// C-style identifiers are part of the ABI surface; pointer contracts are
// documented per function.
#![allow(non_camel_case_types)]
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use formdual::exterior::Covector;
use formdual::fields::{FormField, HolomorphicPair};
use formdual::geometry::QuadratureSurface;
use formdual::Error;

/// Status codes returned by every FFI entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum fd_status {
    FD_OK = 0,
    FD_ERR_NULL_ARGUMENT = 1,
    FD_ERR_INVALID_ARGUMENT = 2,
    FD_ERR_DIMENSION_MISMATCH = 3,
    FD_ERR_DEGREE_MISMATCH = 4,
    FD_ERR_UNSUPPORTED_DIMENSION = 5,
    FD_ERR_DOMAIN = 6,
    FD_ERR_PROXIMITY = 7,
    FD_ERR_SINGULARITY = 8,
    FD_ERR_EVALUATION = 9,
    FD_ERR_PANIC = 10,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> fd_status {
    match err {
        Error::DimensionMismatch { .. } => fd_status::FD_ERR_DIMENSION_MISMATCH,
        Error::DegreeMismatch { .. } | Error::DegreeUnderflow => fd_status::FD_ERR_DEGREE_MISMATCH,
        Error::UnsupportedDimension { .. } => fd_status::FD_ERR_UNSUPPORTED_DIMENSION,
        Error::InvalidArgument(_) => fd_status::FD_ERR_INVALID_ARGUMENT,
        Error::OutsideDomain => fd_status::FD_ERR_DOMAIN,
        Error::Singularity => fd_status::FD_ERR_SINGULARITY,
        Error::Proximity { .. } => fd_status::FD_ERR_PROXIMITY,
        Error::NodeEvaluation { source, .. } => status_of(source),
    }
}

fn fail(err: Error) -> fd_status {
    let code = status_of(&err);
    set_last_error(err.to_string());
    code
}

fn guarded(f: impl FnOnce() -> fd_status) -> fd_status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_last_error("panic across the FFI boundary".into());
            fd_status::FD_ERR_PANIC
        }
    }
}

unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

/// Opaque quadrature surface handle.
pub struct fd_surface {
    inner: Arc<QuadratureSurface>,
}

/// Opaque form-field handle.
pub struct fd_field {
    inner: Arc<dyn FormField>,
}

/// Opaque holomorphic-pair handle.
pub struct fd_pair {
    inner: HolomorphicPair,
}

/// Number of basis covectors of the given degree, `C(n, degree)`.
#[no_mangle]
pub extern "C" fn fd_basis_size(n: usize, degree: usize) -> usize {
    formdual::exterior::basis_size(n, degree)
}

/// Copy the latest error message into `buf` (truncated to `cap - 1` bytes,
/// NUL terminated). Returns the full message length in bytes.
#[no_mangle]
pub unsafe extern "C" fn fd_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Create a sphere quadrature surface. `center` has length `n` (3 or 4).
#[no_mangle]
pub unsafe extern "C" fn fd_surface_sphere(
    center: *const f64,
    n: usize,
    radius: f64,
    order: usize,
    out: *mut *mut fd_surface,
) -> fd_status {
    guarded(|| {
        let (Some(center), false) = (slice_arg(center, n), out.is_null()) else {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        };
        match formdual::geometry::sphere_surface(center, radius, order) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(fd_surface { inner: Arc::new(s) }));
                fd_status::FD_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Create an axis-aligned ellipsoid surface. `semi_axes` has length `n`.
#[no_mangle]
pub unsafe extern "C" fn fd_surface_ellipsoid(
    center: *const f64,
    semi_axes: *const f64,
    n: usize,
    order: usize,
    out: *mut *mut fd_surface,
) -> fd_status {
    guarded(|| {
        let (Some(center), Some(axes), false) =
            (slice_arg(center, n), slice_arg(semi_axes, n), out.is_null())
        else {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        };
        match formdual::geometry::ellipsoid_surface(center, axes, order) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(fd_surface { inner: Arc::new(s) }));
                fd_status::FD_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Total quadrature weight (the discretized surface measure).
#[no_mangle]
pub unsafe extern "C" fn fd_surface_area(surface: *const fd_surface, out: *mut f64) -> fd_status {
    guarded(|| {
        if surface.is_null() || out.is_null() {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        }
        *out = (*surface).inner.total_weight();
        fd_status::FD_OK
    })
}

/// Number of quadrature nodes.
#[no_mangle]
pub unsafe extern "C" fn fd_surface_node_count(
    surface: *const fd_surface,
    out: *mut usize,
) -> fd_status {
    guarded(|| {
        if surface.is_null() || out.is_null() {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        }
        *out = (*surface).inner.len();
        fd_status::FD_OK
    })
}

#[no_mangle]
pub unsafe extern "C" fn fd_surface_free(surface: *mut fd_surface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// Interior-harmonic polynomial field from the analytic catalog.
#[no_mangle]
pub unsafe extern "C" fn fd_field_harmonic_polynomial(
    n: usize,
    degree: usize,
    index: usize,
    out: *mut *mut fd_field,
) -> fd_status {
    guarded(|| {
        if out.is_null() {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        }
        match formdual::catalog::harmonic_form(n, degree, index) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(fd_field { inner: Arc::new(f) }));
                fd_status::FD_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Gradient of the point-source potential at `center` (a decaying harmonic
/// 1-form field).
#[no_mangle]
pub unsafe extern "C" fn fd_field_kernel_gradient(
    center: *const f64,
    n: usize,
    out: *mut *mut fd_field,
) -> fd_status {
    guarded(|| {
        let (Some(center), false) = (slice_arg(center, n), out.is_null()) else {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        };
        let make = || -> formdual::Result<Arc<dyn FormField>> {
            Ok(Arc::new(formdual::fields::KernelForm::single(
                center,
                Covector::scalar(n, 1.0),
                formdual::fields::KernelTag::D,
            )?))
        };
        match make() {
            Ok(f) => {
                *out = Box::into_raw(Box::new(fd_field { inner: f }));
                fd_status::FD_OK
            }
            Err(e) => fail(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn fd_field_ambient(field: *const fd_field, out: *mut usize) -> fd_status {
    guarded(|| {
        if field.is_null() || out.is_null() {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        }
        *out = (*field).inner.ambient();
        fd_status::FD_OK
    })
}

#[no_mangle]
pub unsafe extern "C" fn fd_field_degree(field: *const fd_field, out: *mut usize) -> fd_status {
    guarded(|| {
        if field.is_null() || out.is_null() {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        }
        *out = (*field).inner.degree();
        fd_status::FD_OK
    })
}

unsafe fn write_covector(value: &Covector, coeffs: *mut f64, len: usize) -> fd_status {
    if coeffs.is_null() {
        return fd_status::FD_ERR_NULL_ARGUMENT;
    }
    if len != value.coeffs().len() {
        set_last_error(format!(
            "output buffer holds {len} coefficients, expected {}",
            value.coeffs().len()
        ));
        return fd_status::FD_ERR_INVALID_ARGUMENT;
    }
    std::ptr::copy_nonoverlapping(value.coeffs().as_ptr(), coeffs, len);
    fd_status::FD_OK
}

type FieldOp = fn(&dyn FormField, &[f64]) -> formdual::Result<Covector>;

unsafe fn field_eval_common(
    field: *const fd_field,
    x: *const f64,
    n: usize,
    coeffs: *mut f64,
    len: usize,
    op: FieldOp,
) -> fd_status {
    if field.is_null() {
        return fd_status::FD_ERR_NULL_ARGUMENT;
    }
    let Some(x) = slice_arg(x, n) else {
        return fd_status::FD_ERR_NULL_ARGUMENT;
    };
    match op((*field).inner.as_ref(), x) {
        Ok(v) => write_covector(&v, coeffs, len),
        Err(e) => fail(e),
    }
}

/// Field value at `x`; `coeffs` must hold `fd_basis_size(n, degree)` doubles.
#[no_mangle]
pub unsafe extern "C" fn fd_field_eval(
    field: *const fd_field,
    x: *const f64,
    n: usize,
    coeffs: *mut f64,
    len: usize,
) -> fd_status {
    guarded(|| field_eval_common(field, x, n, coeffs, len, |f, x| f.eval(x)))
}

/// Exterior derivative at `x` (degree + 1 coefficients).
#[no_mangle]
pub unsafe extern "C" fn fd_field_d(
    field: *const fd_field,
    x: *const f64,
    n: usize,
    coeffs: *mut f64,
    len: usize,
) -> fd_status {
    guarded(|| field_eval_common(field, x, n, coeffs, len, |f, x| f.d(x)))
}

/// Codifferential at `x` (degree - 1 coefficients).
#[no_mangle]
pub unsafe extern "C" fn fd_field_delta(
    field: *const fd_field,
    x: *const f64,
    n: usize,
    coeffs: *mut f64,
    len: usize,
) -> fd_status {
    guarded(|| field_eval_common(field, x, n, coeffs, len, |f, x| f.delta(x)))
}

/// Laplacian at `x` (same-degree coefficients).
#[no_mangle]
pub unsafe extern "C" fn fd_field_laplacian(
    field: *const fd_field,
    x: *const f64,
    n: usize,
    coeffs: *mut f64,
    len: usize,
) -> fd_status {
    guarded(|| field_eval_common(field, x, n, coeffs, len, |f, x| f.laplacian(x)))
}

#[no_mangle]
pub unsafe extern "C" fn fd_field_free(field: *mut fd_field) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Point-source holomorphic pair at `x0` with weight covector `xi`
/// (`xi_len = fd_basis_size(n, degree)`, 1 <= degree <= n-1).
#[no_mangle]
pub unsafe extern "C" fn fd_pair_point(
    x0: *const f64,
    n: usize,
    degree: usize,
    xi: *const f64,
    xi_len: usize,
    out: *mut *mut fd_pair,
) -> fd_status {
    guarded(|| {
        let (Some(x0), Some(xi_coeffs), false) =
            (slice_arg(x0, n), slice_arg(xi, xi_len), out.is_null())
        else {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        };
        let make = || -> formdual::Result<HolomorphicPair> {
            let xi = Covector::from_dense(n, degree, xi_coeffs.to_vec())?;
            formdual::potentials::point_pair(x0, &xi)
        };
        match make() {
            Ok(p) => {
                *out = Box::into_raw(Box::new(fd_pair { inner: p }));
                fd_status::FD_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Check the pair equations at `count` sample points (`samples` is
/// `count * n` doubles, row-major). Writes 1/0 into `holds` and the largest
/// residual into `max_residual`.
#[no_mangle]
pub unsafe extern "C" fn fd_pair_check(
    pair: *const fd_pair,
    samples: *const f64,
    count: usize,
    n: usize,
    tol: f64,
    holds: *mut i32,
    max_residual: *mut f64,
) -> fd_status {
    guarded(|| {
        if pair.is_null() || holds.is_null() || max_residual.is_null() {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        }
        let Some(flat) = slice_arg(samples, count * n) else {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        };
        let pts: Vec<Vec<f64>> = flat.chunks(n).map(|c| c.to_vec()).collect();
        match formdual::fields::is_holomorphic_pair(&(*pair).inner, &pts, tol) {
            Ok(chk) => {
                *holds = chk.holds as i32;
                *max_residual = chk.max_residual();
                fd_status::FD_OK
            }
            Err(e) => fail(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn fd_pair_free(pair: *mut fd_pair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

unsafe fn reproduce_common(
    field: *const fd_field,
    surface: *const fd_surface,
    x: *const f64,
    n: usize,
    coeffs: *mut f64,
    len: usize,
    exterior: bool,
) -> fd_status {
    if field.is_null() || surface.is_null() {
        return fd_status::FD_ERR_NULL_ARGUMENT;
    }
    let Some(x) = slice_arg(x, n) else {
        return fd_status::FD_ERR_NULL_ARGUMENT;
    };
    let f = (*field).inner.as_ref();
    let s = (*surface).inner.as_ref();
    let result = if exterior {
        formdual::cauchy_green::reproduce_exterior(f, s, x)
    } else {
        formdual::cauchy_green::reproduce_interior(f, s, x)
    };
    match result {
        Ok(rep) => write_covector(&rep.value, coeffs, len),
        Err(e) => fail(e),
    }
}

/// Interior boundary-integral reproduction of a harmonic field at `x`.
#[no_mangle]
pub unsafe extern "C" fn fd_reproduce_interior(
    field: *const fd_field,
    surface: *const fd_surface,
    x: *const f64,
    n: usize,
    coeffs: *mut f64,
    len: usize,
) -> fd_status {
    guarded(|| reproduce_common(field, surface, x, n, coeffs, len, false))
}

/// Exterior (sign-flipped) reproduction for decaying fields.
#[no_mangle]
pub unsafe extern "C" fn fd_reproduce_exterior(
    field: *const fd_field,
    surface: *const fd_surface,
    x: *const f64,
    n: usize,
    coeffs: *mut f64,
    len: usize,
) -> fd_status {
    guarded(|| reproduce_common(field, surface, x, n, coeffs, len, true))
}

/// First duality pairing; writes value and its two-term decomposition.
#[no_mangle]
pub unsafe extern "C" fn fd_pairing_theorem1(
    field: *const fd_field,
    pair: *const fd_pair,
    surface: *const fd_surface,
    value: *mut f64,
    term1: *mut f64,
    term2: *mut f64,
) -> fd_status {
    guarded(|| {
        if field.is_null() || pair.is_null() || surface.is_null() || value.is_null() {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        }
        match formdual::duality::pairing_theorem1(
            (*field).inner.as_ref(),
            &(*pair).inner,
            (*surface).inner.as_ref(),
        ) {
            Ok(rep) => {
                *value = rep.value;
                if !term1.is_null() {
                    *term1 = rep.term1;
                }
                if !term2.is_null() {
                    *term2 = rep.term2;
                }
                fd_status::FD_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Second duality pairing; writes value and its two-term decomposition.
#[no_mangle]
pub unsafe extern "C" fn fd_pairing_theorem2(
    pair: *const fd_pair,
    field: *const fd_field,
    surface: *const fd_surface,
    value: *mut f64,
    term1: *mut f64,
    term2: *mut f64,
) -> fd_status {
    guarded(|| {
        if field.is_null() || pair.is_null() || surface.is_null() || value.is_null() {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        }
        match formdual::duality::pairing_theorem2(
            &(*pair).inner,
            (*field).inner.as_ref(),
            (*surface).inner.as_ref(),
        ) {
            Ok(rep) => {
                *value = rep.value;
                if !term1.is_null() {
                    *term1 = rep.term1;
                }
                if !term2.is_null() {
                    *term2 = rep.term2;
                }
                fd_status::FD_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Both point-measure reciprocity pairings: `xi1` has degree `r`, `xi2`
/// degree `n - r`; they satisfy `p1 = (-1)^(n r + r) p2`.
#[no_mangle]
pub unsafe extern "C" fn fd_reciprocity_point(
    x1: *const f64,
    xi1: *const f64,
    r: usize,
    x2: *const f64,
    xi2: *const f64,
    n: usize,
    p1: *mut f64,
    p2: *mut f64,
) -> fd_status {
    guarded(|| {
        let len1 = formdual::exterior::basis_size(n, r);
        let len2 = formdual::exterior::basis_size(n, n - r);
        let (Some(x1), Some(x2), Some(c1), Some(c2)) = (
            slice_arg(x1, n),
            slice_arg(x2, n),
            slice_arg(xi1, len1),
            slice_arg(xi2, len2),
        ) else {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        };
        if p1.is_null() || p2.is_null() {
            return fd_status::FD_ERR_NULL_ARGUMENT;
        }
        let run = || -> formdual::Result<(f64, f64)> {
            let a = Covector::from_dense(n, r, c1.to_vec())?;
            let b = Covector::from_dense(n, n - r, c2.to_vec())?;
            formdual::potentials::reciprocity_check((x1, &a), (x2, &b))
        };
        match run() {
            Ok((a, b)) => {
                *p1 = a;
                *p2 = b;
                fd_status::FD_OK
            }
            Err(e) => fail(e),
        }
    })
}
