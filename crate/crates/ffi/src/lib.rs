//! C ABI for the coamoeba library.
//!
//! Every fallible function returns a [`CoamoebaStatus`] and writes its
//! result through an out pointer. On failure the message is kept per thread
//! and can be read with [`coamoeba_last_error`]. Handles are opaque and must
//! be released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coamoeba::coamoeba::{
    line2_membership_tol, sample_plane_curve, CurveScheme, LineT2, Membership, PointCloud,
    TorusPoint,
};
use coamoeba::lines3d::{
    coamoeba_segments, lines_intersect, phase_limit_lines, sample_membrane, HalfPlane, LineInP3,
    LineKind, MembraneOptions, RootP1,
};
use coamoeba::phase_limit::phase_limit_summary;
use coamoeba::{parse, Error, LaurentPolynomial, WeightVector};
use num_complex::Complex64;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoamoebaStatus {
    Ok = 0,
    InvalidInput = 1,
    Numerical = 2,
    NullPointer = 3,
    Panic = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoamoebaComplex {
    pub re: f64,
    pub im: f64,
}

/// A point of the projective line; `re` and `im` are ignored when
/// `is_infinite` is nonzero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoamoebaRoot {
    pub re: f64,
    pub im: f64,
    pub is_infinite: i32,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoamoebaMembership {
    Interior = 0,
    Vertex = 1,
    ClosureBoundary = 2,
    Outside = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoamoebaLineKind {
    TwoDistinctRoots = 0,
    ThreeDistinctRoots = 1,
    RealLine = 2,
    Generic = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoamoebaHalfPlane {
    Upper = 0,
    Lower = 1,
    Both = 2,
}

/// One of the twelve segments of a generic line: the points
/// `fixed_angles + s * direction` for `s` in `[start, end]`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoamoebaSegment {
    pub direction_index: u32,
    pub fixed_angles: [f64; 3],
    pub start: f64,
    pub end: f64,
}

/// Opaque Laurent polynomial.
pub struct CoamoebaPolynomial {
    inner: LaurentPolynomial,
    vars: Vec<String>,
}

/// Opaque point cloud on a torus, stored row-major.
pub struct CoamoebaCloud {
    inner: PointCloud,
}

/// Opaque line in projective 3-space.
pub struct CoamoebaLine3 {
    inner: LineInP3,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> CoamoebaStatus {
    if e.is_numerical() {
        CoamoebaStatus::Numerical
    } else {
        CoamoebaStatus::InvalidInput
    }
}

/// Runs `body`, converting errors and panics into status codes.
fn guard<F>(body: F) -> CoamoebaStatus
where
    F: FnOnce() -> Result<(), CoamoebaStatus>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CoamoebaStatus::Ok,
        Ok(Err(s)) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            CoamoebaStatus::Panic
        }
    }
}

fn check<T>(r: coamoeba::Result<T>) -> Result<T, CoamoebaStatus> {
    r.map_err(|e| {
        set_error(&e.to_string());
        status_of(&e)
    })
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), CoamoebaStatus> {
    if p.is_null() {
        set_error(&format!("{what} is null"));
        Err(CoamoebaStatus::NullPointer)
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, CoamoebaStatus> {
    non_null(p, what)?;
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        CoamoebaStatus::InvalidInput
    })
}

fn invalid(message: &str) -> CoamoebaStatus {
    set_error(message);
    CoamoebaStatus::InvalidInput
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .unwrap_or_default()
        .into_raw()
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn coamoeba_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn coamoeba_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` in the comma-separated variables `vars` (for example
/// `"x,y"`).
///
/// # Safety
/// `text` and `vars` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_polynomial_parse(
    text: *const c_char,
    vars: *const c_char,
    out: *mut *mut CoamoebaPolynomial,
) -> CoamoebaStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = read_str(text, "text")?;
        let vars: Vec<String> = read_str(vars, "vars")?
            .split(',')
            .map(|v| v.trim().to_string())
            .collect();
        let inner = check(parse(text, &vars))?;
        *out = Box::into_raw(Box::new(CoamoebaPolynomial { inner, vars }));
        Ok(())
    })
}

/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_polynomial_free(p: *mut CoamoebaPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of variables.
///
/// # Safety
/// `p` must be a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_polynomial_rank(p: *const CoamoebaPolynomial) -> usize {
    p.as_ref().map_or(0, |p| p.inner.rank())
}

/// Text form of the polynomial; free it with [`coamoeba_string_free`].
///
/// # Safety
/// `p` must be a live polynomial handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_polynomial_to_string(
    p: *const CoamoebaPolynomial,
    out: *mut *mut c_char,
) -> CoamoebaStatus {
    guard(|| {
        non_null(p, "polynomial")?;
        non_null(out, "out")?;
        let p = &*p;
        *out = owned_string(p.inner.to_text(&p.vars));
        Ok(())
    })
}

/// The initial form for the integer weight `weight[0..len]`.
///
/// # Safety
/// `p` must be a live handle, `weight` must hold `len` values and `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_polynomial_initial_form(
    p: *const CoamoebaPolynomial,
    weight: *const i64,
    len: usize,
    out: *mut *mut CoamoebaPolynomial,
) -> CoamoebaStatus {
    guard(|| {
        non_null(p, "polynomial")?;
        non_null(weight, "weight")?;
        non_null(out, "out")?;
        let p = &*p;
        let w = WeightVector::new(std::slice::from_raw_parts(weight, len).to_vec());
        let inner = check(p.inner.initial_form(&w))?;
        *out = Box::into_raw(Box::new(CoamoebaPolynomial {
            inner,
            vars: p.vars.clone(),
        }));
        Ok(())
    })
}

/// Phase limit report as JSON text; free it with [`coamoeba_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_phase_limit_json(
    p: *const CoamoebaPolynomial,
    out: *mut *mut c_char,
) -> CoamoebaStatus {
    guard(|| {
        non_null(p, "polynomial")?;
        non_null(out, "out")?;
        let report = check(phase_limit_summary(&(*p).inner))?;
        *out = owned_string(report.to_json().to_string());
        Ok(())
    })
}

/// Samples the coamoeba of a plane curve with about `points` points.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_sample_plane_curve(
    p: *const CoamoebaPolynomial,
    points: usize,
    out: *mut *mut CoamoebaCloud,
) -> CoamoebaStatus {
    guard(|| {
        non_null(p, "polynomial")?;
        non_null(out, "out")?;
        let s = check(sample_plane_curve(
            &(*p).inner,
            &CurveScheme::with_budget(points),
        ))?;
        *out = Box::into_raw(Box::new(CoamoebaCloud { inner: s.cloud }));
        Ok(())
    })
}

/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_cloud_free(c: *mut CoamoebaCloud) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of points.
///
/// # Safety
/// `c` must be a live cloud handle.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_cloud_len(c: *const CoamoebaCloud) -> usize {
    c.as_ref().map_or(0, |c| c.inner.len())
}

/// Angles per point.
///
/// # Safety
/// `c` must be a live cloud handle.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_cloud_rank(c: *const CoamoebaCloud) -> usize {
    c.as_ref().map_or(0, |c| c.inner.rank())
}

/// Row-major angles, `len * rank` values, owned by the cloud.
///
/// # Safety
/// `c` must be a live cloud handle.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_cloud_data(c: *const CoamoebaCloud) -> *const f64 {
    c.as_ref()
        .map_or(ptr::null(), |c| c.inner.as_flat().as_ptr())
}

/// Membership of `(alpha, beta)` in the coamoeba of `a x + b y + c`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_line2_membership(
    a: CoamoebaComplex,
    b: CoamoebaComplex,
    c: CoamoebaComplex,
    alpha: f64,
    beta: f64,
    tol: f64,
    out: *mut CoamoebaMembership,
) -> CoamoebaStatus {
    guard(|| {
        non_null(out, "out")?;
        let z = |v: CoamoebaComplex| Complex64::new(v.re, v.im);
        let line = check(LineT2::new(z(a), z(b), z(c)))?;
        let m = check(line2_membership_tol(
            &line,
            &TorusPoint::new(vec![alpha, beta]),
            tol,
        ))?;
        *out = match m {
            Membership::Interior => CoamoebaMembership::Interior,
            Membership::Vertex => CoamoebaMembership::Vertex,
            Membership::ClosureBoundary => CoamoebaMembership::ClosureBoundary,
            Membership::Outside => CoamoebaMembership::Outside,
        };
        Ok(())
    })
}

/// Line with the four given roots.
///
/// # Safety
/// `roots` must point to four values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_line3_from_roots(
    roots: *const CoamoebaRoot,
    out: *mut *mut CoamoebaLine3,
) -> CoamoebaStatus {
    guard(|| {
        non_null(roots, "roots")?;
        non_null(out, "out")?;
        let r = std::slice::from_raw_parts(roots, 4);
        let roots = [0, 1, 2, 3].map(|k| {
            if r[k].is_infinite != 0 {
                RootP1::Infinity
            } else {
                RootP1::Finite(Complex64::new(r[k].re, r[k].im))
            }
        });
        let inner = check(LineInP3::from_roots(roots))?;
        *out = Box::into_raw(Box::new(CoamoebaLine3 { inner }));
        Ok(())
    })
}

/// Line spanned by four linear forms `forms[2k] * x + forms[2k + 1]`.
///
/// # Safety
/// `forms` must point to eight values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_line3_from_forms(
    forms: *const CoamoebaComplex,
    out: *mut *mut CoamoebaLine3,
) -> CoamoebaStatus {
    guard(|| {
        non_null(forms, "forms")?;
        non_null(out, "out")?;
        let f = std::slice::from_raw_parts(forms, 8);
        let z = |k: usize| Complex64::new(f[k].re, f[k].im);
        let inner = check(LineInP3::from_linear_forms(
            [0, 1, 2, 3].map(|k| [z(2 * k), z(2 * k + 1)]),
        ))?;
        *out = Box::into_raw(Box::new(CoamoebaLine3 { inner }));
        Ok(())
    })
}

/// # Safety
/// `l` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_line3_free(l: *mut CoamoebaLine3) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_line3_classify(
    l: *const CoamoebaLine3,
    out: *mut CoamoebaLineKind,
) -> CoamoebaStatus {
    guard(|| {
        non_null(l, "line")?;
        non_null(out, "out")?;
        *out = match (*l).inner.classify().kind {
            LineKind::TwoDistinctRoots => CoamoebaLineKind::TwoDistinctRoots,
            LineKind::ThreeDistinctRoots => CoamoebaLineKind::ThreeDistinctRoots,
            LineKind::RealLine => CoamoebaLineKind::RealLine,
            LineKind::Generic => CoamoebaLineKind::Generic,
        };
        Ok(())
    })
}

/// Membrane sample of about `samples` points in the chart dropping the
/// first angle.
///
/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_line3_sample(
    l: *const CoamoebaLine3,
    samples: usize,
    half_plane: CoamoebaHalfPlane,
    out: *mut *mut CoamoebaCloud,
) -> CoamoebaStatus {
    guard(|| {
        non_null(l, "line")?;
        non_null(out, "out")?;
        let half = match half_plane {
            CoamoebaHalfPlane::Upper => HalfPlane::Upper,
            CoamoebaHalfPlane::Lower => HalfPlane::Lower,
            CoamoebaHalfPlane::Both => HalfPlane::Both,
        };
        let cloud = check(sample_membrane(
            &(*l).inner,
            &MembraneOptions::new(samples, half),
        ))?;
        *out = Box::into_raw(Box::new(CoamoebaCloud { inner: cloud }));
        Ok(())
    })
}

/// Pairs of intersecting phase limit lines, written as `pairs[2k]`,
/// `pairs[2k + 1]`; at most six pairs.
///
/// # Safety
/// `l` must be a live handle, `pairs` must hold twelve values and `count`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_line3_intersecting_pairs(
    l: *const CoamoebaLine3,
    pairs: *mut u32,
    count: *mut usize,
) -> CoamoebaStatus {
    guard(|| {
        non_null(l, "line")?;
        non_null(pairs, "pairs")?;
        non_null(count, "count")?;
        let h = check(phase_limit_lines(&(*l).inner))?;
        let found = lines_intersect(&h);
        let dst = std::slice::from_raw_parts_mut(pairs, 12);
        for (k, (a, b)) in found.iter().enumerate() {
            dst[2 * k] = *a as u32;
            dst[2 * k + 1] = *b as u32;
        }
        *count = found.len();
        Ok(())
    })
}

/// The twelve segments of a generic line.
///
/// # Safety
/// `l` must be a live handle, `out` must hold `capacity` segments and
/// `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn coamoeba_line3_segments(
    l: *const CoamoebaLine3,
    out: *mut CoamoebaSegment,
    capacity: usize,
    count: *mut usize,
) -> CoamoebaStatus {
    guard(|| {
        non_null(l, "line")?;
        non_null(out, "out")?;
        non_null(count, "count")?;
        let segs = check(coamoeba_segments(&(*l).inner))?;
        *count = segs.len();
        if segs.len() > capacity {
            return Err(invalid(&format!(
                "need room for {} segments, got {capacity}",
                segs.len()
            )));
        }
        let dst = std::slice::from_raw_parts_mut(out, capacity);
        for (d, s) in dst.iter_mut().zip(&segs) {
            *d = CoamoebaSegment {
                direction_index: s.direction_index as u32,
                fixed_angles: s.fixed_angles,
                start: s.interval.0,
                end: s.interval.1,
            };
        }
        Ok(())
    })
}
