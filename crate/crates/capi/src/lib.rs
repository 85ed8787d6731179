//! C interface for constructing generalized Hadamard codes over `Z_p`,
//! verifying the Hadamard property, and computing classification
//! invariants.
//!
//! Conventions:
//! - Handles are opaque pointers created by `ghc_generator_new*` and
//!   released with `ghc_generator_free`.
//! - Every fallible call returns a [`GhcStatus`]; non-`Ok` statuses leave a
//!   human-readable message retrievable with [`ghc_last_error`].
//! - Output structs are plain values filled on success (and, for
//!   [`ghc_verify`], also on `VerificationFailed`).
//! - Strings returned by the library are NUL-terminated, owned by the
//!   caller, and released with [`ghc_string_free`].

use ghcode::code::{enumerate, gray_image, is_gh_code_budgeted, min_distance};
use ghcode::construct::{build_a, build_a_variant, build_sylvester};
use ghcode::invariants::report;
use ghcode::{Budget, Error, GeneratorMatrix, Prime};
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of a library call. Values mirror the command-line tool's exit
/// codes, with two extra cases that can only arise through the C interface.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum GhcStatus {
    /// The call succeeded.
    Ok = 0,
    /// The computation ran but the verified property does not hold.
    VerificationFailed = 1,
    /// A parameter is invalid (non-prime p, bad shift vector, ...).
    InvalidInput = 2,
    /// The requested work exceeds the configured budget.
    BudgetExceeded = 3,
    /// A required pointer argument was NULL.
    NullPointer = 4,
    /// An internal consistency check failed.
    Internal = 5,
}

/// Opaque handle to a generator matrix.
pub struct GhcGenerator {
    inner: GeneratorMatrix,
}

/// Verification outcome for one constructed code.
#[repr(C)]
#[derive(Copy, Clone, Debug)]
pub struct GhcVerdict {
    /// 1 when the code is a generalized Hadamard code, else 0.
    pub is_gh: u8,
    /// Number of occurrences of each symbol in every balanced difference
    /// (length / p); 0 when `is_gh` is 0.
    pub lambda: u64,
    /// Code length over `Z_p`.
    pub length: u64,
    /// Number of codewords.
    pub size: u64,
    /// Minimum Hamming distance.
    pub min_distance: u64,
}

/// Full invariant report for one constructed code.
#[repr(C)]
#[derive(Copy, Clone, Debug)]
pub struct GhcReport {
    pub p: u32,
    pub t1: u32,
    pub t2: u32,
    /// Length exponent: the code length is p^t.
    pub t: u32,
    /// Number of `Z_p` coordinates of the additive code.
    pub alpha1: u64,
    /// Number of `Z_{p^2}` coordinates of the additive code.
    pub alpha2: u64,
    pub length: u64,
    pub size: u64,
    pub min_distance: u64,
    /// Dimension of the linear span over `Z_p`.
    pub rank: u32,
    /// Dimension of the kernel.
    pub kernel_dim: u32,
    /// 1 when the code is linear over `Z_p`.
    pub linear: u8,
    /// 1 when the code is a generalized Hadamard code.
    pub gh: u8,
    /// `length / p` when `gh` is 1, else 0.
    pub lambda: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> =
        RefCell::new(CString::new("").expect("empty string"));
}

fn set_last_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NUL-free message");
    });
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new("").expect("empty string");
    });
}

fn status_for(err: &Error) -> GhcStatus {
    match err {
        Error::BudgetExceeded { .. } => GhcStatus::BudgetExceeded,
        Error::NotGhCode(_) => GhcStatus::VerificationFailed,
        Error::Internal(_) => GhcStatus::Internal,
        _ => GhcStatus::InvalidInput,
    }
}

fn fail(err: &Error) -> GhcStatus {
    set_last_error(&err.to_string());
    status_for(err)
}

/// Runs `body` with panics converted to `Internal` status.
fn guarded(body: impl FnOnce() -> GhcStatus) -> GhcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            GhcStatus::Internal
        }
    }
}

fn budget(max_codewords: u64, max_symbol_ops: u64) -> Budget {
    let default = Budget::default();
    Budget {
        max_codewords: if max_codewords == 0 {
            default.max_codewords
        } else {
            max_codewords
        },
        max_symbol_ops: if max_symbol_ops == 0 {
            default.max_symbol_ops
        } else {
            max_symbol_ops
        },
    }
}

fn build(p: u32, t1: u32, t2: u32, a: Option<&[u16]>) -> Result<GeneratorMatrix, Error> {
    let p = Prime::new(p)?;
    if t1 == 0 {
        if a.is_some() {
            return Err(Error::InvalidParameter(
                "a shift vector applies only to constructions with t1 >= 1".into(),
            ));
        }
        build_sylvester(p, t2)
    } else {
        match a {
            Some(a) => build_a_variant(p, t1, t2, a),
            None => build_a(p, t1, t2),
        }
    }
}

/// Message for the most recent non-`Ok` status on this thread.
///
/// The pointer stays valid until the next library call on the same thread;
/// copy the string before calling anything else. Never NULL; the message is
/// empty after a successful call.
#[no_mangle]
pub extern "C" fn ghc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Creates the generator matrix for the recursive construction with `t1`
/// rows of order p^2 and `t2` rows of order p. `t1 = 0` selects the
/// single-alphabet construction with `t2` rows over `Z_p`. On success
/// `*out` owns the new handle.
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ghc_generator_new(
    p: u32,
    t1: u32,
    t2: u32,
    out: *mut *mut GhcGenerator,
) -> GhcStatus {
    ghc_generator_new_variant(p, t1, t2, std::ptr::null(), 0, out)
}

/// Like [`ghc_generator_new`] but with an explicit shift vector
/// `a_1..a_{p-1}` (length `a_len`) for the order-p^2 seed row. Passing a
/// NULL `a`/zero `a_len` uses the canonical choice `a_i = i`.
///
/// # Safety
/// `out` must be valid for one pointer write; `a` must point to `a_len`
/// readable `uint16_t` values (or be NULL when `a_len` is 0).
#[no_mangle]
pub unsafe extern "C" fn ghc_generator_new_variant(
    p: u32,
    t1: u32,
    t2: u32,
    a: *const u16,
    a_len: usize,
    out: *mut *mut GhcGenerator,
) -> GhcStatus {
    if out.is_null() {
        set_last_error("out pointer is NULL");
        return GhcStatus::NullPointer;
    }
    if a.is_null() && a_len != 0 {
        set_last_error("a is NULL but a_len is nonzero");
        return GhcStatus::NullPointer;
    }
    let shifts: Option<Vec<u16>> = if a.is_null() || a_len == 0 {
        None
    } else {
        Some(std::slice::from_raw_parts(a, a_len).to_vec())
    };
    guarded(|| match build(p, t1, t2, shifts.as_deref()) {
        Ok(gen) => {
            let handle = Box::new(GhcGenerator { inner: gen });
            // SAFETY: out checked non-NULL above
            unsafe { *out = Box::into_raw(handle) };
            clear_last_error();
            GhcStatus::Ok
        }
        Err(e) => fail(&e),
    })
}

/// Releases a handle created by `ghc_generator_new*`. NULL is ignored.
///
/// # Safety
/// `gen` must be NULL or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ghc_generator_free(gen: *mut GhcGenerator) {
    if !gen.is_null() {
        drop(Box::from_raw(gen));
    }
}

/// Renders the generator matrix in its block layout (`Z_p` columns, a `|`
/// separator, `Z_{p^2}` columns). On success `*out` owns a NUL-terminated
/// string to be released with [`ghc_string_free`].
///
/// # Safety
/// `gen` must be a live handle; `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn ghc_generator_render_text(
    gen: *const GhcGenerator,
    out: *mut *mut c_char,
) -> GhcStatus {
    if gen.is_null() || out.is_null() {
        set_last_error("gen or out pointer is NULL");
        return GhcStatus::NullPointer;
    }
    let gen = &*gen;
    guarded(|| {
        let text = gen.inner.render_text();
        match CString::new(text) {
            Ok(s) => {
                unsafe { *out = s.into_raw() };
                clear_last_error();
                GhcStatus::Ok
            }
            Err(_) => {
                set_last_error("rendered text contains an interior NUL");
                GhcStatus::Internal
            }
        }
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string previously returned by this library and not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn ghc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Enumerates the code generated by `gen`, maps it over the Gray map, and
/// checks the generalized Hadamard property. Budgets of 0 select the
/// defaults (2^21 codewords, 10^10 symbol operations).
///
/// Returns `Ok` when the property holds, `VerificationFailed` when it does
/// not (with `*out` filled either way), or an error status.
///
/// # Safety
/// `gen` must be a live handle; `out` must be valid for one `GhcVerdict`
/// write.
#[no_mangle]
pub unsafe extern "C" fn ghc_verify(
    gen: *const GhcGenerator,
    max_codewords: u64,
    max_symbol_ops: u64,
    out: *mut GhcVerdict,
) -> GhcStatus {
    if gen.is_null() || out.is_null() {
        set_last_error("gen or out pointer is NULL");
        return GhcStatus::NullPointer;
    }
    let gen = &*gen;
    guarded(|| {
        let b = budget(max_codewords, max_symbol_ops);
        let run = (|| -> Result<(GhcVerdict, bool), Error> {
            let code = enumerate(&gen.inner, &b)?;
            let gray = gray_image(&code);
            let verdict = is_gh_code_budgeted(&gray, &b)?;
            let d = min_distance(&gray, 0x6768_636f)?;
            Ok((
                GhcVerdict {
                    is_gh: u8::from(verdict.is_gh),
                    lambda: verdict.lambda.unwrap_or(0),
                    length: gray.length() as u64,
                    size: gray.size() as u64,
                    min_distance: d as u64,
                },
                verdict.is_gh,
            ))
        })();
        match run {
            Ok((v, is_gh)) => {
                unsafe { *out = v };
                if is_gh {
                    clear_last_error();
                    GhcStatus::Ok
                } else {
                    set_last_error("code is not a generalized Hadamard code");
                    GhcStatus::VerificationFailed
                }
            }
            Err(e) => fail(&e),
        }
    })
}

/// Computes the full invariant report (minimum distance, rank, kernel
/// dimension, linearity, Hadamard verdict) for the code generated by `gen`.
/// Budgets of 0 select the defaults.
///
/// # Safety
/// `gen` must be a live handle; `out` must be valid for one `GhcReport`
/// write.
#[no_mangle]
pub unsafe extern "C" fn ghc_invariant_report(
    gen: *const GhcGenerator,
    max_codewords: u64,
    max_symbol_ops: u64,
    seed: u64,
    out: *mut GhcReport,
) -> GhcStatus {
    if gen.is_null() || out.is_null() {
        set_last_error("gen or out pointer is NULL");
        return GhcStatus::NullPointer;
    }
    let gen = &*gen;
    guarded(|| {
        let b = budget(max_codewords, max_symbol_ops);
        match report(&gen.inner, &b, seed) {
            Ok(rep) => {
                let ct = rep.code_type;
                unsafe {
                    *out = GhcReport {
                        p: rep.p,
                        t1: ct.t1,
                        t2: ct.t2,
                        t: ct.t,
                        alpha1: ct.alpha1,
                        alpha2: ct.alpha2,
                        length: rep.length as u64,
                        size: rep.size,
                        min_distance: rep.min_distance as u64,
                        rank: rep.rank,
                        kernel_dim: rep.kernel_dim,
                        linear: u8::from(rep.linear),
                        gh: u8::from(rep.gh),
                        lambda: rep.gh_lambda.unwrap_or(0),
                    };
                }
                clear_last_error();
                GhcStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    fn new_handle(p: u32, t1: u32, t2: u32) -> *mut GhcGenerator {
        let mut gen: *mut GhcGenerator = ptr::null_mut();
        let status = unsafe { ghc_generator_new(p, t1, t2, &mut gen) };
        assert_eq!(status, GhcStatus::Ok);
        assert!(!gen.is_null());
        gen
    }

    fn last_error() -> String {
        unsafe { CStr::from_ptr(ghc_last_error()) }
            .to_string_lossy()
            .into_owned()
    }

    #[test]
    fn construct_render_roundtrip() {
        let gen = new_handle(3, 1, 1);
        let mut text: *mut c_char = ptr::null_mut();
        let status = unsafe { ghc_generator_render_text(gen, &mut text) };
        assert_eq!(status, GhcStatus::Ok);
        let rendered = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
        assert_eq!(rendered, "1 1 1 | 3 3\n0 1 2 | 1 2\n");
        unsafe {
            ghc_string_free(text);
            ghc_generator_free(gen);
        }
    }

    #[test]
    fn verify_flags_hadamard_codes() {
        let gen = new_handle(3, 1, 1);
        let mut v = GhcVerdict {
            is_gh: 0,
            lambda: 0,
            length: 0,
            size: 0,
            min_distance: 0,
        };
        let status = unsafe { ghc_verify(gen, 0, 0, &mut v) };
        assert_eq!(status, GhcStatus::Ok);
        assert_eq!(
            (v.is_gh, v.lambda, v.length, v.size, v.min_distance),
            (1, 3, 9, 27, 6)
        );
        unsafe { ghc_generator_free(gen) };
    }

    #[test]
    fn verify_fails_on_degenerate_length_one() {
        // the single-alphabet construction with one row has length 1, which
        // cannot carry the property
        let gen = new_handle(3, 0, 1);
        let mut v = GhcVerdict {
            is_gh: 1,
            lambda: 9,
            length: 0,
            size: 0,
            min_distance: 0,
        };
        let status = unsafe { ghc_verify(gen, 0, 0, &mut v) };
        assert_eq!(status, GhcStatus::VerificationFailed);
        assert_eq!(v.is_gh, 0);
        assert_eq!(v.lambda, 0);
        assert_eq!(v.size, 3);
        assert!(!last_error().is_empty());
        unsafe { ghc_generator_free(gen) };
    }

    #[test]
    fn report_matches_published_invariants() {
        let gen = new_handle(3, 1, 2);
        let mut r = GhcReport {
            p: 0,
            t1: 0,
            t2: 0,
            t: 0,
            alpha1: 0,
            alpha2: 0,
            length: 0,
            size: 0,
            min_distance: 0,
            rank: 0,
            kernel_dim: 0,
            linear: 1,
            gh: 0,
            lambda: 0,
        };
        let status = unsafe { ghc_invariant_report(gen, 0, 0, 7, &mut r) };
        assert_eq!(status, GhcStatus::Ok);
        assert_eq!((r.alpha1, r.alpha2, r.t1, r.t2, r.t), (9, 6, 1, 2, 3));
        assert_eq!((r.rank, r.kernel_dim, r.linear, r.gh), (5, 3, 0, 1));
        assert_eq!((r.length, r.size, r.min_distance, r.lambda), (27, 81, 18, 9));
        unsafe { ghc_generator_free(gen) };
    }

    #[test]
    fn sylvester_reports_linear() {
        let gen = new_handle(3, 0, 4);
        let mut r = GhcReport {
            p: 0,
            t1: 0,
            t2: 0,
            t: 0,
            alpha1: 0,
            alpha2: 0,
            length: 0,
            size: 0,
            min_distance: 0,
            rank: 0,
            kernel_dim: 0,
            linear: 0,
            gh: 0,
            lambda: 0,
        };
        let status = unsafe { ghc_invariant_report(gen, 0, 0, 7, &mut r) };
        assert_eq!(status, GhcStatus::Ok);
        assert_eq!((r.rank, r.kernel_dim, r.linear), (4, 4, 1));
        unsafe { ghc_generator_free(gen) };
    }

    #[test]
    fn invalid_parameters_are_reported() {
        let mut gen: *mut GhcGenerator = ptr::null_mut();
        let status = unsafe { ghc_generator_new(9, 1, 1, &mut gen) };
        assert_eq!(status, GhcStatus::InvalidInput);
        assert!(gen.is_null());
        assert!(last_error().contains("not prime"));

        let bad_a: [u16; 2] = [1, 4];
        let status =
            unsafe { ghc_generator_new_variant(3, 1, 1, bad_a.as_ptr(), bad_a.len(), &mut gen) };
        assert_eq!(status, GhcStatus::InvalidInput);
        assert!(last_error().contains("starting vector"));

        let good_a: [u16; 2] = [4, 8];
        let status =
            unsafe { ghc_generator_new_variant(3, 1, 1, good_a.as_ptr(), good_a.len(), &mut gen) };
        assert_eq!(status, GhcStatus::Ok);
        assert!(last_error().is_empty());
        unsafe { ghc_generator_free(gen) };
    }

    #[test]
    fn null_pointers_are_rejected() {
        let status = unsafe { ghc_generator_new(3, 1, 1, ptr::null_mut()) };
        assert_eq!(status, GhcStatus::NullPointer);

        let mut v = GhcVerdict {
            is_gh: 0,
            lambda: 0,
            length: 0,
            size: 0,
            min_distance: 0,
        };
        assert_eq!(
            unsafe { ghc_verify(ptr::null(), 0, 0, &mut v) },
            GhcStatus::NullPointer
        );

        let gen = new_handle(2, 1, 1);
        assert_eq!(
            unsafe { ghc_verify(gen, 0, 0, ptr::null_mut()) },
            GhcStatus::NullPointer
        );
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(
            unsafe { ghc_generator_render_text(ptr::null(), &mut text) },
            GhcStatus::NullPointer
        );
        unsafe {
            ghc_generator_free(gen);
            ghc_generator_free(ptr::null_mut());
            ghc_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn budget_status_propagates() {
        let gen = new_handle(3, 1, 1);
        let mut v = GhcVerdict {
            is_gh: 0,
            lambda: 0,
            length: 0,
            size: 0,
            min_distance: 0,
        };
        // 27 codewords > 10
        let status = unsafe { ghc_verify(gen, 10, 0, &mut v) };
        assert_eq!(status, GhcStatus::BudgetExceeded);
        assert!(last_error().contains("budget"));
        unsafe { ghc_generator_free(gen) };
    }

    #[test]
    fn generated_header_covers_the_surface() {
        let header = std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/include/ghcode.h"
        ))
        .expect("header generated at build time");
        for needle in [
            "typedef struct GhcGenerator GhcGenerator;",
            "GhcStatus",
            "GHC_STATUS_OK",
            "GhcVerdict",
            "GhcReport",
            "ghc_generator_new",
            "ghc_generator_new_variant",
            "ghc_generator_free",
            "ghc_generator_render_text",
            "ghc_string_free",
            "ghc_verify",
            "ghc_invariant_report",
            "ghc_last_error",
        ] {
            assert!(header.contains(needle), "header is missing {needle}");
        }
    }
}
