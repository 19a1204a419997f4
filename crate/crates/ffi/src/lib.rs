//! C ABI over `quiverdt`.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every entry point returns a [`QdtStatus`] and
//! records a message retrievable with [`qdt_last_error`] on failure. Strings
//! handed out by the library are freed with [`qdt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use quiverdt::fforacle::{multiplicity_oracle, ClassTable, Fq, Which};
use quiverdt::invariants::{dt_via_steinberg, kac_polynomials, InvariantReport};
use quiverdt::numkernel::{rational_to_string, RationalFunction, Q};
use quiverdt::quivermod::Quiver;
use quiverdt::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed quiver, dimension vector or field parameters.
    InvalidInput = 3,
    /// Two independent computations disagreed, or a value failed a check.
    CheckFailed = 4,
    BufferTooSmall = 5,
    IndexOutOfRange = 6,
    /// A coefficient does not fit in `int64_t`.
    Overflow = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdtWhich {
    Trivial = 0,
    Steinberg = 1,
}

/// Opaque quiver handle.
pub struct QdtQuiver {
    inner: Quiver,
}

/// Opaque table of `(w, value)` rows, ordered lexicographically by `w`.
pub struct QdtTable {
    rows: Vec<(Vec<usize>, RationalFunction)>,
}

type Rows = std::collections::BTreeMap<Vec<usize>, RationalFunction>;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> QdtStatus {
    if e.is_input_error() {
        QdtStatus::InvalidInput
    } else {
        QdtStatus::CheckFailed
    }
}

fn guard(f: impl FnOnce() -> Result<(), QdtStatus>) -> QdtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QdtStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            QdtStatus::Panic
        }
    }
}

fn lift<T>(r: quiverdt::Result<T>) -> Result<T, QdtStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null(what: &str) -> QdtStatus {
    set_error(format!("{what} is null"));
    QdtStatus::NullPointer
}

unsafe fn dim_slice<'a>(dim: *const usize, len: usize) -> Result<&'a [usize], QdtStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if dim.is_null() {
        return Err(null("dim"));
    }
    Ok(std::slice::from_raw_parts(dim, len))
}

fn check_dim(q: &Quiver, dim: &[usize]) -> Result<(), QdtStatus> {
    if dim.len() != q.r() {
        set_error(format!(
            "dimension vector has {} entries, quiver has {} vertices",
            dim.len(),
            q.r()
        ));
        return Err(QdtStatus::InvalidInput);
    }
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("no interior nul")
        .into_raw()
}

fn q_to_i64(c: &Q) -> Result<(i64, i64), QdtStatus> {
    match (c.numer().to_i64(), c.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => {
            set_error(format!("{} does not fit in int64_t", rational_to_string(c)));
            Err(QdtStatus::Overflow)
        }
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qdt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qdt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"vertices": r, "arrows": [[i, j], ...]}` with 1-based vertices.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qdt_quiver_from_json(
    json: *const c_char,
    out: *mut *mut QdtQuiver,
) -> QdtStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| {
            set_error("json is not valid UTF-8");
            QdtStatus::InvalidUtf8
        })?;
        let q = lift(Quiver::from_json(text))?;
        *out = Box::into_raw(Box::new(QdtQuiver { inner: q }));
        Ok(())
    })
}

/// `arrows` holds `2 * n_arrows` 0-based vertex indices, tail then head.
///
/// # Safety
/// `arrows` must point to `2 * n_arrows` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qdt_quiver_new(
    vertices: usize,
    arrows: *const usize,
    n_arrows: usize,
    out: *mut *mut QdtQuiver,
) -> QdtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let flat = dim_slice(arrows, 2 * n_arrows)?;
        let pairs = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        let q = lift(Quiver::new(vertices, pairs))?;
        *out = Box::into_raw(Box::new(QdtQuiver { inner: q }));
        Ok(())
    })
}

/// # Safety
/// `q` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qdt_quiver_free(q: *mut QdtQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `q` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdt_quiver_vertex_count(q: *const QdtQuiver) -> usize {
    q.as_ref().map_or(0, |q| q.inner.r())
}

unsafe fn table_call(
    q: *const QdtQuiver,
    dim: *const usize,
    len: usize,
    out: *mut *mut QdtTable,
    compute: fn(&Quiver, &[usize]) -> quiverdt::Result<Rows>,
) -> QdtStatus {
    guard(|| {
        let q = q.as_ref().ok_or_else(|| null("quiver"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = dim_slice(dim, len)?;
        check_dim(&q.inner, v)?;
        let rows = lift(compute(&q.inner, v))?.into_iter().collect();
        *out = Box::into_raw(Box::new(QdtTable { rows }));
        Ok(())
    })
}

/// Kac polynomials `A_w` for all nonzero `w <= dim`.
///
/// # Safety
/// `q` must be live, `dim` must hold `len` values, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qdt_kac(
    q: *const QdtQuiver,
    dim: *const usize,
    len: usize,
    out: *mut *mut QdtTable,
) -> QdtStatus {
    table_call(q, dim, len, out, kac_polynomials)
}

/// DT invariants `DT_w` for all nonzero `w <= dim`, cross-checked by two routes.
///
/// # Safety
/// Same as [`qdt_kac`].
#[no_mangle]
pub unsafe extern "C" fn qdt_dt(
    q: *const QdtQuiver,
    dim: *const usize,
    len: usize,
    out: *mut *mut QdtTable,
) -> QdtStatus {
    table_call(q, dim, len, out, dt_via_steinberg)
}

/// # Safety
/// `t` must be null or a table from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qdt_table_free(t: *mut QdtTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be null or a live table.
#[no_mangle]
pub unsafe extern "C" fn qdt_table_len(t: *const QdtTable) -> usize {
    t.as_ref().map_or(0, |t| t.rows.len())
}

unsafe fn row<'a>(
    t: *const QdtTable,
    idx: usize,
) -> Result<&'a (Vec<usize>, RationalFunction), QdtStatus> {
    let t = t.as_ref().ok_or_else(|| null("table"))?;
    t.rows.get(idx).ok_or_else(|| {
        set_error(format!("row {idx} out of range (len {})", t.rows.len()));
        QdtStatus::IndexOutOfRange
    })
}

/// Copies the dimension vector of row `idx` into `buf` (`cap` entries).
///
/// # Safety
/// `t` must be live and `buf` must hold `cap` writable values.
#[no_mangle]
pub unsafe extern "C" fn qdt_table_dim(
    t: *const QdtTable,
    idx: usize,
    buf: *mut usize,
    cap: usize,
) -> QdtStatus {
    guard(|| {
        let (w, _) = row(t, idx)?;
        if cap < w.len() {
            set_error(format!("need {} entries", w.len()));
            return Err(QdtStatus::BufferTooSmall);
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(w.as_ptr(), buf, w.len());
        Ok(())
    })
}

/// Value of row `idx` as text, e.g. `t^2 + 1`. Free with [`qdt_string_free`].
///
/// # Safety
/// `t` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qdt_table_text(
    t: *const QdtTable,
    idx: usize,
    out: *mut *mut c_char,
) -> QdtStatus {
    guard(|| {
        let (_, f) = row(t, idx)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = to_c_string(f.to_string());
        Ok(())
    })
}

/// Integer coefficients of row `idx`, lowest degree first. The row count is
/// always written to `len`; `BufferTooSmall` means `cap` was less than that.
///
/// # Safety
/// `t` must be live, `buf` must hold `cap` writable values, `len` writable.
#[no_mangle]
pub unsafe extern "C" fn qdt_table_coeffs(
    t: *const QdtTable,
    idx: usize,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> QdtStatus {
    guard(|| {
        let (_, f) = row(t, idx)?;
        if len.is_null() {
            return Err(null("len"));
        }
        let p = f
            .as_polynomial()
            .filter(|_| f.is_integer_polynomial())
            .ok_or_else(|| {
                set_error(format!("{f} is not an integer polynomial"));
                QdtStatus::CheckFailed
            })?;
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| c.to_integer().to_i64())
            .collect::<Option<Vec<i64>>>()
            .ok_or_else(|| {
                set_error(format!("a coefficient of {f} does not fit in int64_t"));
                QdtStatus::Overflow
            })?;
        *len = coeffs.len();
        if cap < coeffs.len() {
            set_error(format!("need {} entries", coeffs.len()));
            return Err(QdtStatus::BufferTooSmall);
        }
        if !coeffs.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(coeffs.as_ptr(), buf, coeffs.len());
        }
        Ok(())
    })
}

/// Full report (Kac, DT and total counts) as a JSON document.
///
/// # Safety
/// `q` must be live, `dim` must hold `len` values, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qdt_report_json(
    q: *const QdtQuiver,
    dim: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> QdtStatus {
    guard(|| {
        let q = q.as_ref().ok_or_else(|| null("quiver"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = dim_slice(dim, len)?;
        check_dim(&q.inner, v)?;
        let report = lift(InvariantReport::compute(&q.inner, v))?;
        *out = to_c_string(report.to_json().to_string());
        Ok(())
    })
}

/// Brute-force multiplicity over `GL_dim(F_q)` as `num / den`. `budget`
/// bounds the number of conjugacy classes enumerated.
///
/// # Safety
/// `q` must be live, `dim` must hold `len` values, `num` and `den` writable.
#[no_mangle]
pub unsafe extern "C" fn qdt_multiplicity_oracle(
    q: *const QdtQuiver,
    dim: *const usize,
    len: usize,
    field_size: u32,
    which: QdtWhich,
    budget: u64,
    num: *mut i64,
    den: *mut i64,
) -> QdtStatus {
    guard(|| {
        let q = q.as_ref().ok_or_else(|| null("quiver"))?;
        if num.is_null() || den.is_null() {
            return Err(null("num/den"));
        }
        let v = dim_slice(dim, len)?;
        check_dim(&q.inner, v)?;
        let f = lift(Fq::new(field_size))?;
        let table = lift(ClassTable::by_classes(v, &f, budget))?;
        let which = match which {
            QdtWhich::Trivial => Which::Trivial,
            QdtWhich::Steinberg => Which::Steinberg,
        };
        let value = lift(multiplicity_oracle(&q.inner, &table, which))?;
        let (n, d) = q_to_i64(&value)?;
        *num = n;
        *den = d;
        Ok(())
    })
}
