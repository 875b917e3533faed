//! C ABI over `transvect`.
//!
//! Models and reports are opaque heap handles released with their `_free`
//! functions. Every call returns a [`TvStatus`]; on failure the message is
//! available from [`tv_last_error`] on the same thread. Matrices are written
//! row-major into caller buffers whose length is passed alongside.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use transvect::cli::{
    cmd_find_transitive, cmd_transvection, cmd_verify_geometry, CaseName, RunConfig,
};
use transvect::geometry::{project, ricci_type_residual};
use transvect::{
    exp_ta, sample_sigma, sigma_value, CertificateReport, CharacteristicElement, Error, Mat,
    SymplecticModel, Vector, Verdict,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    NotOnSigma = 4,
    NoChart = 5,
    Numerical = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvCase {
    Hyperbolic = 0,
    Elliptic = 1,
    Nilpotent = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvVerdict {
    Pass = 0,
    Fail = 1,
    Unknown = 2,
    Documented = 3,
}

/// A symplectic model with its characteristic element.
pub struct TvModel {
    config: RunConfig,
    model: SymplecticModel,
    a: CharacteristicElement,
}

/// A certificate report with its JSON rendering.
pub struct TvReport {
    report: CertificateReport,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TvStatus {
    match e {
        Error::InvalidParameter(_)
        | Error::Dimension { .. }
        | Error::Parse { .. }
        | Error::Candidate { .. }
        | Error::Io(_) => TvStatus::InvalidArgument,
        Error::NotOnSigma(_) => TvStatus::NotOnSigma,
        Error::NoChart(_) => TvStatus::NoChart,
        _ => TvStatus::Numerical,
    }
}

fn fail(status: TvStatus, msg: &str) -> TvStatus {
    set_error(msg);
    status
}

impl From<Error> for TvStatus {
    fn from(e: Error) -> Self {
        fail(status_of(&e), &e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), TvStatus>) -> TvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TvStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(TvStatus::Panic, "internal panic"),
    }
}

unsafe fn model_ref<'a>(m: *const TvModel) -> Result<&'a TvModel, TvStatus> {
    m.as_ref()
        .ok_or_else(|| fail(TvStatus::NullPointer, "model handle is null"))
}

unsafe fn input<'a>(x: *const f64, len: usize, expected: usize) -> Result<&'a [f64], TvStatus> {
    if x.is_null() {
        return Err(fail(TvStatus::NullPointer, "input vector is null"));
    }
    if len != expected {
        return Err(fail(
            TvStatus::InvalidArgument,
            &format!("expected {expected} entries, got {len}"),
        ));
    }
    Ok(slice::from_raw_parts(x, len))
}

unsafe fn output<'a>(buf: *mut f64, len: usize, needed: usize) -> Result<&'a mut [f64], TvStatus> {
    if buf.is_null() {
        return Err(fail(TvStatus::NullPointer, "output buffer is null"));
    }
    if len < needed {
        return Err(fail(
            TvStatus::BufferTooSmall,
            &format!("buffer holds {len} entries, {needed} needed"),
        ));
    }
    Ok(slice::from_raw_parts_mut(buf, len))
}

unsafe fn write_matrix(m: &Mat, buf: *mut f64, len: usize) -> Result<(), TvStatus> {
    let out = output(buf, len, m.nrows() * m.ncols())?;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[i * m.ncols() + j] = m[(i, j)];
        }
    }
    Ok(())
}

fn finite(v: f64, name: &str) -> Result<(), TvStatus> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(fail(
            TvStatus::InvalidArgument,
            &format!("{name} must be finite"),
        ))
    }
}

/// Build a model. `k` is used by the hyperbolic and elliptic cases, `p` by
/// the elliptic and nilpotent cases and `q` by the nilpotent case.
///
/// # Safety
/// `out` must be a valid pointer; on success it receives a handle to free
/// with [`tv_model_free`].
#[no_mangle]
pub unsafe extern "C" fn tv_model_new(
    case: TvCase,
    n: usize,
    k: f64,
    p: usize,
    q: usize,
    out: *mut *mut TvModel,
) -> TvStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(TvStatus::NullPointer, "out is null"));
        }
        finite(k, "k")?;
        let name = match case {
            TvCase::Hyperbolic => CaseName::Hyperbolic,
            TvCase::Elliptic => CaseName::Elliptic,
            TvCase::Nilpotent => CaseName::Nilpotent,
        };
        let mut config = RunConfig::new(name, n);
        config.k = k;
        if case != TvCase::Hyperbolic {
            config.p = Some(p);
        }
        if case == TvCase::Nilpotent {
            config.q = Some(q);
        }
        let (model, a) = config.model()?;
        *out = Box::into_raw(Box::new(TvModel { config, model, a }));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from [`tv_model_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tv_model_free(m: *mut TvModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Reduced dimension `2n` and ambient dimension `2(n + 1)`.
///
/// # Safety
/// `m` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tv_model_dims(
    m: *const TvModel,
    reduced: *mut usize,
    ambient: *mut usize,
) -> TvStatus {
    guard(|| {
        let m = model_ref(m)?;
        if reduced.is_null() || ambient.is_null() {
            return Err(fail(TvStatus::NullPointer, "output pointer is null"));
        }
        *reduced = 2 * m.model.n;
        *ambient = m.model.ambient_dim();
        Ok(())
    })
}

/// `μ` with `A² = μ Id`.
///
/// # Safety
/// `m` must be a live handle and `mu` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_model_mu(m: *const TvModel, mu: *mut f64) -> TvStatus {
    guard(|| {
        let m = model_ref(m)?;
        if mu.is_null() {
            return Err(fail(TvStatus::NullPointer, "mu is null"));
        }
        *mu = m.a.mu;
        Ok(())
    })
}

/// Copy the ambient form `Ω` (`d × d`, row-major).
///
/// # Safety
/// `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tv_model_omega(m: *const TvModel, buf: *mut f64, len: usize) -> TvStatus {
    guard(|| write_matrix(&model_ref(m)?.model.omega, buf, len))
}

/// Copy the characteristic element `A` (`d × d`, row-major).
///
/// # Safety
/// `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tv_model_a(m: *const TvModel, buf: *mut f64, len: usize) -> TvStatus {
    guard(|| write_matrix(&model_ref(m)?.a.a, buf, len))
}

/// `exp(tA)` in closed form (`d × d`, row-major).
///
/// # Safety
/// `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tv_exp_ta(
    m: *const TvModel,
    t: f64,
    buf: *mut f64,
    len: usize,
) -> TvStatus {
    guard(|| {
        let m = model_ref(m)?;
        finite(t, "t")?;
        write_matrix(&exp_ta(&m.a, t), buf, len)
    })
}

/// `Ω(x, Ax)`, which is 1 on Σ_A.
///
/// # Safety
/// `x` must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn tv_sigma_value(
    m: *const TvModel,
    x: *const f64,
    len: usize,
    value: *mut f64,
) -> TvStatus {
    guard(|| {
        let m = model_ref(m)?;
        let x = Vector::from_column_slice(input(x, len, m.model.ambient_dim())?);
        if value.is_null() {
            return Err(fail(TvStatus::NullPointer, "value is null"));
        }
        *value = sigma_value(&m.model, &m.a, &x)?;
        Ok(())
    })
}

/// `count` seeded points of Σ_A, one per row (`count × d`).
///
/// # Safety
/// `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tv_sample_sigma(
    m: *const TvModel,
    count: usize,
    seed: u64,
    buf: *mut f64,
    len: usize,
) -> TvStatus {
    guard(|| {
        let m = model_ref(m)?;
        let d = m.model.ambient_dim();
        let out = output(buf, len, count.saturating_mul(d))?;
        let points = sample_sigma(&m.model, &m.a, count, seed)?;
        for (i, pt) in points.iter().enumerate() {
            out[i * d..(i + 1) * d].copy_from_slice(pt.x.as_slice());
        }
        Ok(())
    })
}

/// Chart coordinates of the orbit through `x`. `written` receives the number
/// of coordinates, which depends on the chart.
///
/// # Safety
/// `x` must point to `len` doubles and `buf` to `buf_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tv_project(
    m: *const TvModel,
    x: *const f64,
    len: usize,
    buf: *mut f64,
    buf_len: usize,
    written: *mut usize,
) -> TvStatus {
    guard(|| {
        let m = model_ref(m)?;
        let x = Vector::from_column_slice(input(x, len, m.model.ambient_dim())?);
        if written.is_null() {
            return Err(fail(TvStatus::NullPointer, "written is null"));
        }
        let coords = project(&m.model, &m.a, &x)?.coords();
        *written = coords.len();
        output(buf, buf_len, coords.len())?[..coords.len()].copy_from_slice(coords.as_slice());
        Ok(())
    })
}

/// Sup-norm distance of the curvature at `π(x)` from its Ricci-type part.
///
/// # Safety
/// `x` must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn tv_ricci_type_residual(
    m: *const TvModel,
    x: *const f64,
    len: usize,
    value: *mut f64,
) -> TvStatus {
    guard(|| {
        let m = model_ref(m)?;
        let x = Vector::from_column_slice(input(x, len, m.model.ambient_dim())?);
        if value.is_null() {
            return Err(fail(TvStatus::NullPointer, "value is null"));
        }
        *value = ricci_type_residual(&m.model, &m.a, &x)?;
        Ok(())
    })
}

unsafe fn emit(report: CertificateReport, out: *mut *mut TvReport) -> Result<(), TvStatus> {
    let json = CString::new(report.to_json())
        .map_err(|_| fail(TvStatus::Numerical, "report contains a NUL byte"))?;
    *out = Box::into_raw(Box::new(TvReport { report, json }));
    Ok(())
}

fn configured(m: &TvModel, samples: usize, seed: u64) -> RunConfig {
    let mut cfg = m.config.clone();
    cfg.samples = samples;
    cfg.seed = seed;
    cfg
}

/// Geometry suite at `samples` seeded points.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_verify_geometry(
    m: *const TvModel,
    samples: usize,
    seed: u64,
    out: *mut *mut TvReport,
) -> TvStatus {
    guard(|| {
        let m = model_ref(m)?;
        if out.is_null() {
            return Err(fail(TvStatus::NullPointer, "out is null"));
        }
        emit(cmd_verify_geometry(&configured(m, samples, seed))?, out)
    })
}

/// Structure of the transvection algebra.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_transvection(m: *const TvModel, out: *mut *mut TvReport) -> TvStatus {
    guard(|| {
        let m = model_ref(m)?;
        if out.is_null() {
            return Err(fail(TvStatus::NullPointer, "out is null"));
        }
        emit(cmd_transvection(&m.config)?, out)
    })
}

/// Search for simply transitive subgroups with the default candidates.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_find_transitive(
    m: *const TvModel,
    samples: usize,
    seed: u64,
    out: *mut *mut TvReport,
) -> TvStatus {
    guard(|| {
        let m = model_ref(m)?;
        if out.is_null() {
            return Err(fail(TvStatus::NullPointer, "out is null"));
        }
        emit(
            cmd_find_transitive(&configured(m, samples, seed), None, None)?,
            out,
        )
    })
}

/// Overall verdict; `Unknown` for a null handle.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn tv_report_verdict(r: *const TvReport) -> TvVerdict {
    match r.as_ref().map(|r| r.report.overall()) {
        Some(Verdict::Pass) => TvVerdict::Pass,
        Some(Verdict::Fail) => TvVerdict::Fail,
        Some(Verdict::Documented) => TvVerdict::Documented,
        _ => TvVerdict::Unknown,
    }
}

/// JSON rendering, owned by the report and valid until it is freed.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn tv_report_json(r: *const TvReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `r` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tv_report_free(r: *mut TvReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
