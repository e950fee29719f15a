//! C interface to `amd-core`. Handles are opaque and owned by the caller
//! until passed to the matching `_free`. Every fallible call returns an
//! `AmdStatus`; on failure `amd_last_error` describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use amd_core::certificate::{validate_certificate, Certificate, Method, Verdict};
use amd_core::cyclotomic::ramanujan_sum;
use amd_core::factor::report::{factor_report, FactorReport, Verdict as FactorVerdict};
use amd_core::oracle::{gen_line_digraph_complete, parse_digraph, run_battery, serialize_digraph, verify_moore, Instance};
use amd_core::sieve::{decide_with, prime_witness, DecideOptions};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmdStatus {
    Ok = 0,
    InvalidArgument = 1,
    /// No definite answer (no witness, unknown verdict, unresolved factoring).
    Unknown = 2,
    /// A digraph failed verification.
    OracleFailed = 3,
    NullPointer = 4,
    Parse = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmdVerdict {
    Exists = 0,
    NotExistSelfRepeat = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmdMethod {
    None = 0,
    KnownK2 = 1,
    LiteratureK34 = 2,
    LiteratureD23 = 3,
    PrimeWitness = 4,
    ThresholdOdd = 5,
    ThresholdEven = 6,
    ConjectureElimination = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmdFactorVerdict {
    Irreducible = 0,
    Reducible = 1,
    Unresolved = 2,
}

pub struct AmdCertificate(Certificate);
pub struct AmdFactorReport(FactorReport);
pub struct AmdDigraph(Instance);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

type Failure = (AmdStatus, String);

fn guard(f: impl FnOnce() -> Result<AmdStatus, Failure>) -> AmdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            AmdStatus::Panic
        }
    }
}

fn invalid(msg: &str) -> Failure {
    (AmdStatus::InvalidArgument, msg.to_string())
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or((AmdStatus::NullPointer, "null output pointer".into()))
}

unsafe fn in_ref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or((AmdStatus::NullPointer, "null handle".into()))
}

unsafe fn in_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((AmdStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (AmdStatus::Parse, "string is not UTF-8".into()))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn amd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn amd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn amd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Decides `(d, k)`. `literature` selects whether published nonexistence
/// results may be used.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn amd_decide(d: u64, k: u64, literature: bool, out: *mut *mut AmdCertificate) -> AmdStatus {
    guard(|| {
        let out = out_ref(out)?;
        if d < 2 || k < 2 {
            return Err(invalid("d and k must be at least 2"));
        }
        let opts = DecideOptions {
            literature,
            ..Default::default()
        };
        *out = Box::into_raw(Box::new(AmdCertificate(decide_with(d, k, opts))));
        Ok(AmdStatus::Ok)
    })
}

/// # Safety
/// `c` must be a live certificate handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn amd_certificate_free(c: *mut AmdCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn amd_certificate_verdict(c: *const AmdCertificate) -> AmdVerdict {
    match c.as_ref().map(|c| c.0.verdict) {
        Some(Verdict::Exists) => AmdVerdict::Exists,
        Some(Verdict::NotExistSelfRepeat) => AmdVerdict::NotExistSelfRepeat,
        _ => AmdVerdict::Unknown,
    }
}

/// # Safety
/// `c` must be a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn amd_certificate_method(c: *const AmdCertificate) -> AmdMethod {
    match c.as_ref().and_then(|c| c.0.method) {
        None => AmdMethod::None,
        Some(Method::KnownK2) => AmdMethod::KnownK2,
        Some(Method::LiteratureK34) => AmdMethod::LiteratureK34,
        Some(Method::LiteratureD23) => AmdMethod::LiteratureD23,
        Some(Method::PrimeWitness) => AmdMethod::PrimeWitness,
        Some(Method::ThresholdOdd) => AmdMethod::ThresholdOdd,
        Some(Method::ThresholdEven) => AmdMethod::ThresholdEven,
        Some(Method::ConjectureElimination) => AmdMethod::ConjectureElimination,
    }
}

/// Writes the witness prime; `AMD_STATUS_UNKNOWN` when there is none.
///
/// # Safety
/// `c` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn amd_certificate_witness(c: *const AmdCertificate, out: *mut u64) -> AmdStatus {
    guard(|| {
        let c = in_ref(c)?;
        let out = out_ref(out)?;
        match c.0.witness {
            Some(w) => {
                *out = w;
                Ok(AmdStatus::Ok)
            }
            None => Ok(AmdStatus::Unknown),
        }
    })
}

/// JSON text of the certificate; free with `amd_string_free`.
///
/// # Safety
/// `c` must be a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn amd_certificate_to_json(c: *const AmdCertificate) -> *mut c_char {
    match c.as_ref() {
        Some(c) => to_c_string(c.0.to_json()),
        None => {
            set_error("null handle");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn amd_certificate_from_json(json: *const c_char, out: *mut *mut AmdCertificate) -> AmdStatus {
    guard(|| {
        let out = out_ref(out)?;
        let text = in_str(json)?;
        let c = Certificate::from_json(text).map_err(|e| (AmdStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(AmdCertificate(c)));
        Ok(AmdStatus::Ok)
    })
}

/// Re-checks every claim in the certificate from `(d, k)`.
///
/// # Safety
/// `c` must be a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn amd_certificate_validate(c: *const AmdCertificate) -> AmdStatus {
    guard(|| {
        let c = in_ref(c)?;
        validate_certificate(&c.0).map_err(|e| (AmdStatus::InvalidArgument, e.to_string()))?;
        Ok(AmdStatus::Ok)
    })
}

/// Smallest prime `l` coprime to `k` with `1 < l < (k+1)/(d-1)`;
/// `AMD_STATUS_UNKNOWN` when none exists.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn amd_prime_witness(d: u64, k: u64, out: *mut u64) -> AmdStatus {
    guard(|| {
        let out = out_ref(out)?;
        if d < 2 || k < 2 {
            return Err(invalid("d and k must be at least 2"));
        }
        match prime_witness(d, k) {
            Some(l) => {
                *out = l;
                Ok(AmdStatus::Ok)
            }
            None => Ok(AmdStatus::Unknown),
        }
    })
}

/// Sum of the `ell`-th powers of the primitive `n`-th roots of unity.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn amd_ramanujan_sum(ell: u64, n: u64, out: *mut i64) -> AmdStatus {
    guard(|| {
        let out = out_ref(out)?;
        if n == 0 {
            return Err(invalid("n must be positive"));
        }
        *out = ramanujan_sum(ell, n);
        Ok(AmdStatus::Ok)
    })
}

/// Factors `F_{i,k}`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn amd_factor(i: u64, k: u64, out: *mut *mut AmdFactorReport) -> AmdStatus {
    guard(|| {
        let out = out_ref(out)?;
        if i == 0 || k == 0 {
            return Err(invalid("i and k must be positive"));
        }
        *out = Box::into_raw(Box::new(AmdFactorReport(factor_report(i, k as usize))));
        Ok(AmdStatus::Ok)
    })
}

/// # Safety
/// `r` must be a live report handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn amd_factor_report_free(r: *mut AmdFactorReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn amd_factor_report_verdict(r: *const AmdFactorReport) -> AmdFactorVerdict {
    match r.as_ref().map(|r| r.0.verdict) {
        Some(FactorVerdict::Irreducible) => AmdFactorVerdict::Irreducible,
        Some(FactorVerdict::Reducible) => AmdFactorVerdict::Reducible,
        _ => AmdFactorVerdict::Unresolved,
    }
}

/// Copies up to `cap` factor degrees (ascending) into `buf` and writes the
/// total count to `len`. Pass `cap = 0` to query the count.
///
/// # Safety
/// `r` must be live, `len` valid for writes, `buf` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn amd_factor_report_degrees(
    r: *const AmdFactorReport,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> AmdStatus {
    guard(|| {
        let r = in_ref(r)?;
        let len = out_ref(len)?;
        let degs = &r.0.factor_degrees;
        *len = degs.len();
        if cap > 0 {
            if buf.is_null() {
                return Err((AmdStatus::NullPointer, "null buffer".into()));
            }
            for (j, &d) in degs.iter().take(cap).enumerate() {
                *buf.add(j) = d as u64;
            }
        }
        Ok(AmdStatus::Ok)
    })
}

/// Parses the `n d k` digraph text format.
///
/// # Safety
/// `text` must be NUL-terminated and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn amd_digraph_parse(text: *const c_char, out: *mut *mut AmdDigraph) -> AmdStatus {
    guard(|| {
        let out = out_ref(out)?;
        let inst = parse_digraph(in_str(text)?).map_err(|e| (AmdStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(AmdDigraph(inst)));
        Ok(AmdStatus::Ok)
    })
}

/// The `(d, 2)` line digraph of the complete digraph on `d + 1` symbols.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn amd_digraph_line_complete(d: u64, out: *mut *mut AmdDigraph) -> AmdStatus {
    guard(|| {
        let out = out_ref(out)?;
        if !(2..=64).contains(&d) {
            return Err(invalid("d must be in 2..=64"));
        }
        let inst = Instance {
            graph: gen_line_digraph_complete(d as usize),
            d,
            k: 2,
        };
        *out = Box::into_raw(Box::new(AmdDigraph(inst)));
        Ok(AmdStatus::Ok)
    })
}

/// # Safety
/// `g` must be a live digraph handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn amd_digraph_free(g: *mut AmdDigraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Canonical text form; free with `amd_string_free`.
///
/// # Safety
/// `g` must be a live digraph handle.
#[no_mangle]
pub unsafe extern "C" fn amd_digraph_serialize(g: *const AmdDigraph) -> *mut c_char {
    match g.as_ref().map(|g| serialize_digraph(&g.0)) {
        Some(Ok(s)) => to_c_string(s),
        Some(Err(e)) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
        None => {
            set_error("null handle");
            ptr::null_mut()
        }
    }
}

/// Checks `I + A + ... + A^k = J + P`; writes the number of self-repeats.
///
/// # Safety
/// `g` must be live; `self_repeats` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn amd_digraph_verify(g: *const AmdDigraph, self_repeats: *mut u64) -> AmdStatus {
    guard(|| {
        let g = in_ref(g)?;
        let c = verify_moore(&g.0.graph, g.0.d, g.0.k).map_err(|e| (AmdStatus::OracleFailed, e.to_string()))?;
        if let Some(out) = self_repeats.as_mut() {
            *out = c.self_repeats.len() as u64;
        }
        Ok(AmdStatus::Ok)
    })
}

/// Runs the full structural battery; the first failed assertion is
/// reported through `amd_last_error`.
///
/// # Safety
/// `g` must be a live digraph handle.
#[no_mangle]
pub unsafe extern "C" fn amd_digraph_battery(g: *const AmdDigraph) -> AmdStatus {
    guard(|| {
        let g = in_ref(g)?;
        let rep = run_battery(&g.0.graph, g.0.d, g.0.k);
        let failed = rep.failures().next().map(|a| format!("{}: {}", a.name, a.detail));
        match failed {
            None => Ok(AmdStatus::Ok),
            Some(msg) => Err((AmdStatus::OracleFailed, msg)),
        }
    })
}
