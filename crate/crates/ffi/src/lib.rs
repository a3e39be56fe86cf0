//! C ABI for `mmatch`.
//!
//! Matroids are passed as opaque `MmMatroid` handles. Every fallible function
//! returns an `MmStatus`; on failure, `mm_last_error_message` describes the
//! error for the calling thread. Strings returned through out-parameters are
//! owned by the caller and must be released with `mm_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mmatch::io::{matroid_to_value, report_to_value, MatroidSpec};
use mmatch::matching::matroid_matched_with;
use mmatch::suite::{run_campaign, CampaignOptions};
use mmatch::{Engine, Error, GroupCtx, Matroid, PanhandleParams};

/// Opaque matroid handle.
pub struct MmMatroid {
    inner: Matroid,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Structural = 5,
    InvalidBasisSystem = 6,
    Loop = 7,
    RankMismatch = 8,
    GroundMismatch = 9,
    Precondition = 10,
    SizeLimit = 11,
    OrderUnavailable = 12,
    Overflow = 13,
    UnknownCampaign = 14,
    OutOfRange = 15,
    BufferTooSmall = 16,
    Panic = 17,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MmEngine {
    Auto = 0,
    BruteForce = 1,
    Intersection = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MmStatus {
    match e {
        Error::Structural(_) => MmStatus::Structural,
        Error::Domain(_) => MmStatus::Domain,
        Error::UnsupportedOrder(_) | Error::OrderUnavailable(_) => MmStatus::OrderUnavailable,
        Error::TorsionCollision(_) => MmStatus::Domain,
        Error::SizeLimit(_) => MmStatus::SizeLimit,
        Error::InvalidBasisSystem(_) => MmStatus::InvalidBasisSystem,
        Error::Loop(_) => MmStatus::Loop,
        Error::Disjointness(_) => MmStatus::Structural,
        Error::RankMismatch { .. } => MmStatus::RankMismatch,
        Error::GroundMismatch(_) => MmStatus::GroundMismatch,
        Error::Precondition(_) => MmStatus::Precondition,
        Error::Overflow => MmStatus::Overflow,
        Error::Parse(_) => MmStatus::Parse,
        Error::UnknownCampaign(_) => MmStatus::UnknownCampaign,
    }
}

struct Failure(MmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            MmStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MmStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(MmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(MmStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a>(p: *const MmMatroid, what: &str) -> Result<&'a Matroid, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no NUL bytes").into_raw()
}

fn boxed(m: Matroid) -> *mut MmMatroid {
    Box::into_raw(Box::new(MmMatroid { inner: m }))
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn mm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a matroid from any accepted JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_matroid_from_json(
    json: *const c_char,
    out: *mut *mut MmMatroid,
) -> MmStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let m = MatroidSpec::from_json(text)?.build()?;
        write(out, boxed(m), "out")
    })
}

/// `P_{n,s,m}(a)` over `Z^dim`, with `a` given by `dim` coordinates.
///
/// # Safety
/// `a` must point to `dim` readable integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_matroid_panhandle(
    n: usize,
    s: usize,
    m: usize,
    a: *const i64,
    dim: usize,
    out: *mut *mut MmMatroid,
) -> MmStatus {
    guard(|| {
        if a.is_null() {
            return Err(null("a"));
        }
        let ctx = GroupCtx::free(dim)?;
        let a = ctx.element(std::slice::from_raw_parts(a, dim).to_vec())?;
        let mat = Matroid::panhandle(&ctx, &PanhandleParams { n, s, m, a })?;
        write(out, boxed(mat), "out")
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mm_matroid_free(m: *mut MmMatroid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_matroid_rank(m: *const MmMatroid, out: *mut usize) -> MmStatus {
    guard(|| write(out, handle(m, "matroid")?.rank(), "out"))
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_matroid_ground_len(m: *const MmMatroid, out: *mut usize) -> MmStatus {
    guard(|| write(out, handle(m, "matroid")?.ground().len(), "out"))
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_matroid_basis_count(m: *const MmMatroid, out: *mut usize) -> MmStatus {
    guard(|| write(out, handle(m, "matroid")?.bases().len(), "out"))
}

/// Copies the ground indices of basis `index` (in lexicographic order of
/// bases) into `buf`. `len` receives the rank; if `cap` is smaller,
/// `MM_STATUS_BUFFER_TOO_SMALL` is returned and nothing is copied.
///
/// # Safety
/// `buf` must have room for `cap` entries; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_matroid_basis(
    m: *const MmMatroid,
    index: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> MmStatus {
    guard(|| {
        let mat = handle(m, "matroid")?;
        let Some(&basis) = mat.bases().get(index) else {
            return Err(Failure(
                MmStatus::OutOfRange,
                format!("basis {index} of {}", mat.bases().len()),
            ));
        };
        let indices = mmatch::matroid::indices_of(basis);
        write(len, indices.len(), "len")?;
        if cap < indices.len() {
            return Err(Failure(
                MmStatus::BufferTooSmall,
                format!("need {} entries, got {cap}", indices.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(indices.as_ptr(), buf, indices.len());
        Ok(())
    })
}

/// Explicit `{"ctx","ground","bases"}` document.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_matroid_to_json(
    m: *const MmMatroid,
    out: *mut *mut c_char,
) -> MmStatus {
    guard(|| {
        let text = matroid_to_value(handle(m, "matroid")?).to_string();
        write(out, into_c_string(text), "out")
    })
}

fn engine_of(e: MmEngine) -> Engine {
    match e {
        MmEngine::Auto => Engine::default(),
        MmEngine::BruteForce => Engine::BruteForce,
        MmEngine::Intersection => Engine::Intersection,
    }
}

/// Whether `m` is matched to `n`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_matched(
    m: *const MmMatroid,
    n: *const MmMatroid,
    engine: MmEngine,
    out: *mut bool,
) -> MmStatus {
    guard(|| {
        let report = matroid_matched_with(handle(m, "m")?, handle(n, "n")?, engine_of(engine))?;
        write(out, report.matched, "out")
    })
}

/// Full match report as JSON (`matched`, `counterexample`, `witnesses`).
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_match_report_json(
    m: *const MmMatroid,
    n: *const MmMatroid,
    engine: MmEngine,
    out: *mut *mut c_char,
) -> MmStatus {
    guard(|| {
        let report = matroid_matched_with(handle(m, "m")?, handle(n, "n")?, engine_of(engine))?;
        write(
            out,
            into_c_string(report_to_value(&report).to_string()),
            "out",
        )
    })
}

/// Runs a campaign by id. `passed` receives whether it found no failures and
/// `json` (if not NULL) the serialized result.
///
/// # Safety
/// `id` must be a NUL-terminated string; `passed` must be writable; `json`
/// may be NULL.
#[no_mangle]
pub unsafe extern "C" fn mm_verify_campaign(
    id: *const c_char,
    seed: u64,
    trials: usize,
    max_m: usize,
    passed: *mut bool,
    json: *mut *mut c_char,
) -> MmStatus {
    guard(|| {
        let id = read_str(id, "id")?;
        let opts = CampaignOptions {
            seed,
            trials,
            max_m,
            ..CampaignOptions::default()
        };
        let result = run_campaign(id, &opts)?;
        write(passed, result.passed(), "passed")?;
        if !json.is_null() {
            let text = serde_json::to_string(&result).expect("campaign results serialize");
            json.write(into_c_string(text));
        }
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
