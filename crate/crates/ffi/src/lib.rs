//! C ABI for the decaylab toolkit.
//!
//! Conventions: functions return [`DlStatus`] and write results through
//! out-pointers; heap-allocated results are opaque handles released with
//! their matching `_free` function; strings are UTF-8, NUL-terminated,
//! and released with [`dl_string_free`]. Panics never cross the
//! boundary — they are caught and reported as `DL_STATUS_INTERNAL_ERROR`.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};

use decaylab::bounds::{
    liouville_effective_constant, mac_optimality, mac_optimality_threshold, tau_convergents,
    DeltaMode, DmtQuery, Rational,
};
use decaylab::codes::CodeConfig;
use decaylab::report::{decay_record_json, sequence_record_json, write_sequence_csv};
use decaylab::ring::RingElem;
use decaylab::search::{decay, DecayRecord, SearchBox, SearchOptions, DEFAULT_BUDGET};
use decaylab::sequences::{factor_z5n, table_row, table_rows, z_element};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    InternalError = 4,
}

/// Opaque handle to one decay-function evaluation.
pub struct DlDecayResult {
    record: DecayRecord,
}

fn guarded<F: FnOnce() -> DlStatus + UnwindSafe>(f: F) -> DlStatus {
    catch_unwind(f).unwrap_or(DlStatus::InternalError)
}

fn into_c_string(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn dl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by a `dl_*` function that
/// documents [`dl_string_free`] as its deallocator, or null.
#[no_mangle]
pub unsafe extern "C" fn dl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Evaluate the decay function D(n1, n2)² exactly.
///
/// `workers = 0` uses all available parallelism; `budget = 0` uses the
/// default reduced-pair budget. On success writes a handle to `out`,
/// which must be released with [`dl_decay_free`].
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_decay_run(
    n1: u32,
    n2: u32,
    workers: u32,
    budget: u64,
    force: bool,
    out: *mut *mut DlDecayResult,
) -> DlStatus {
    if out.is_null() {
        return DlStatus::NullArgument;
    }
    let result = catch_unwind(|| {
        let bbox = SearchBox::new(n1, n2)?;
        let opts = SearchOptions {
            workers: workers as usize,
            budget: if budget == 0 {
                DEFAULT_BUDGET
            } else {
                budget as u128
            },
            force,
        };
        decay(bbox, &CodeConfig::default(), &opts)
    });
    match result {
        Ok(Ok(record)) => {
            *out = Box::into_raw(Box::new(DlDecayResult { record }));
            DlStatus::Ok
        }
        Ok(Err(decaylab::Error::BudgetExceeded { .. })) => DlStatus::BudgetExceeded,
        Ok(Err(_)) => DlStatus::InvalidArgument,
        Err(_) => DlStatus::InternalError,
    }
}

/// Release a decay-result handle.
///
/// # Safety
/// `result` must come from [`dl_decay_run`], or be null.
#[no_mangle]
pub unsafe extern "C" fn dl_decay_free(result: *mut DlDecayResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// The exact minimum |det|² as a float (p + q·τ evaluated adaptively).
///
/// # Safety
/// Valid `result` and `out` pointers required.
#[no_mangle]
pub unsafe extern "C" fn dl_decay_detsq_float(
    result: *const DlDecayResult,
    out: *mut f64,
) -> DlStatus {
    if result.is_null() || out.is_null() {
        return DlStatus::NullArgument;
    }
    *out = (*result).record.min_detsq_float;
    DlStatus::Ok
}

/// D(n1, n2) itself, i.e. the square root of the exact minimum.
///
/// # Safety
/// Valid `result` and `out` pointers required.
#[no_mangle]
pub unsafe extern "C" fn dl_decay_value(result: *const DlDecayResult, out: *mut f64) -> DlStatus {
    if result.is_null() || out.is_null() {
        return DlStatus::NullArgument;
    }
    *out = (*result).record.decay_value();
    DlStatus::Ok
}

/// Exact |det|² coordinates over {1, τ} as decimal strings "p" and "q",
/// written through two string out-pointers (free both with
/// [`dl_string_free`]).
///
/// # Safety
/// Valid pointers required.
#[no_mangle]
pub unsafe extern "C" fn dl_decay_detsq_exact(
    result: *const DlDecayResult,
    out_p: *mut *mut c_char,
    out_q: *mut *mut c_char,
) -> DlStatus {
    if result.is_null() || out_p.is_null() || out_q.is_null() {
        return DlStatus::NullArgument;
    }
    let record = &(*result).record;
    *out_p = into_c_string(record.min_detsq.p.to_string());
    *out_q = into_c_string(record.min_detsq.q.to_string());
    DlStatus::Ok
}

/// Witness coordinates (a, b, c, d) of one user (1 or 2), written to a
/// caller-provided array of four i64. Fails with `DL_STATUS_INVALID_ARGUMENT`
/// if a coordinate exceeds the i64 range (not reachable for handles
/// produced by [`dl_decay_run`]).
///
/// # Safety
/// `out_coords` must point to at least four writable i64 slots.
#[no_mangle]
pub unsafe extern "C" fn dl_decay_witness(
    result: *const DlDecayResult,
    user: u32,
    out_coords: *mut i64,
) -> DlStatus {
    if result.is_null() || out_coords.is_null() {
        return DlStatus::NullArgument;
    }
    let record = &(*result).record;
    let witness = match user {
        1 => &record.witness1,
        2 => &record.witness2,
        _ => return DlStatus::InvalidArgument,
    };
    let coords = [&witness.a, &witness.b, &witness.c, &witness.d];
    for (idx, coord) in coords.iter().enumerate() {
        match coord.to_i64() {
            Some(value) => *out_coords.add(idx) = value,
            None => return DlStatus::InvalidArgument,
        }
    }
    DlStatus::Ok
}

/// Number of exactly-confirmed candidate pairs.
///
/// # Safety
/// Valid pointers required.
#[no_mangle]
pub unsafe extern "C" fn dl_decay_visited_pairs(
    result: *const DlDecayResult,
    out: *mut u64,
) -> DlStatus {
    if result.is_null() || out.is_null() {
        return DlStatus::NullArgument;
    }
    *out = (*result).record.visited_pairs;
    DlStatus::Ok
}

/// The full record as a JSON object (same schema as the CLI's JSON
/// output). Free with [`dl_string_free`]; null on internal error.
///
/// # Safety
/// Valid `result` pointer required.
#[no_mangle]
pub unsafe extern "C" fn dl_decay_json(result: *const DlDecayResult) -> *mut c_char {
    if result.is_null() {
        return std::ptr::null_mut();
    }
    let record = &(*result).record;
    match catch_unwind(|| decay_record_json(record).to_string()) {
        Ok(json) => into_c_string(json),
        Err(_) => std::ptr::null_mut(),
    }
}

/// The five-row reference table as CSV (same schema as the CLI).
/// Free with [`dl_string_free`]; null on internal error.
#[no_mangle]
pub extern "C" fn dl_table_csv() -> *mut c_char {
    match catch_unwind(|| {
        let rows = table_rows().expect("fixed indices");
        let mut buffer = Vec::new();
        write_sequence_csv(&rows, &mut buffer).expect("in-memory write");
        String::from_utf8(buffer).expect("utf-8 csv")
    }) {
        Ok(csv) => into_c_string(csv),
        Err(_) => std::ptr::null_mut(),
    }
}

/// One reference table row (n ∈ {5, 10, 15, 20, 25}) as JSON.
/// Free with [`dl_string_free`]; null if n is not a table index.
#[no_mangle]
pub extern "C" fn dl_table_row_json(n: u32) -> *mut c_char {
    match catch_unwind(move || table_row(n).map(|row| sequence_record_json(&row).to_string())) {
        Ok(Ok(json)) => into_c_string(json),
        _ => std::ptr::null_mut(),
    }
}

/// Exact check of the index-5 factorization z_{5n} = z_n·m_j(n)·m_{j+2}(n).
/// Returns 1 when the identity holds, 0 when it fails, −1 on invalid n.
#[no_mangle]
pub extern "C" fn dl_factor_identity_holds(n: u32) -> i32 {
    match catch_unwind(move || -> decaylab::Result<bool> {
        if n == 0 || n > 10_000 {
            return Err(decaylab::Error::InvalidParameter("n out of range".into()));
        }
        let (z_n, m_a, m_b) = factor_z5n(n)?;
        Ok(z_n.mul(&m_a).mul(&m_b) == z_element(5 * n)?)
    }) {
        Ok(Ok(true)) => 1,
        Ok(Ok(false)) => 0,
        _ => -1,
    }
}

/// Evaluate the MAC optimality condition at r = r_num/r_den with the
/// derived exponent δ = 2r. Writes whether the condition holds.
///
/// # Safety
/// `out_optimal` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_dmt_optimal(
    r_num: i64,
    r_den: i64,
    out_optimal: *mut bool,
) -> DlStatus {
    if out_optimal.is_null() {
        return DlStatus::NullArgument;
    }
    if r_den == 0 {
        return DlStatus::InvalidArgument;
    }
    let result = catch_unwind(|| {
        let r = Rational::new(BigInt::from(r_num), BigInt::from(r_den));
        mac_optimality(&DmtQuery {
            r,
            delta_mode: DeltaMode::TwoR,
        })
    });
    match result {
        Ok(Ok(report)) => {
            *out_optimal = report.optimal;
            DlStatus::Ok
        }
        Ok(Err(_)) => DlStatus::InvalidArgument,
        Err(_) => DlStatus::InternalError,
    }
}

/// Full optimality report at r = r_num/r_den as JSON (rationals as
/// "num/den" strings with float approximations). Free with
/// [`dl_string_free`]; null on invalid input.
#[no_mangle]
pub extern "C" fn dl_dmt_report_json(r_num: i64, r_den: i64) -> *mut c_char {
    if r_den == 0 {
        return std::ptr::null_mut();
    }
    match catch_unwind(move || {
        let r = Rational::new(BigInt::from(r_num), BigInt::from(r_den));
        mac_optimality(&DmtQuery {
            r,
            delta_mode: DeltaMode::TwoR,
        })
        .map(|report| report.to_json().to_string())
    }) {
        Ok(Ok(json)) => into_c_string(json),
        _ => std::ptr::null_mut(),
    }
}

/// The exact optimality threshold as a reduced fraction.
///
/// # Safety
/// Both out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dl_dmt_threshold(out_num: *mut i64, out_den: *mut i64) -> DlStatus {
    if out_num.is_null() || out_den.is_null() {
        return DlStatus::NullArgument;
    }
    let threshold = mac_optimality_threshold();
    match (threshold.numer().to_i64(), threshold.denom().to_i64()) {
        (Some(num), Some(den)) => {
            *out_num = num;
            *out_den = den;
            DlStatus::Ok
        }
        _ => DlStatus::InternalError,
    }
}

/// Effective Liouville constant 1/(1+√5) for the golden ratio.
#[no_mangle]
pub extern "C" fn dl_liouville_constant() -> f64 {
    liouville_effective_constant()
}

/// Minimum convergent quality k·|kτ−h| over all convergents with
/// k ≤ max_k.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_liouville_min_quality(max_k: u64, out: *mut f64) -> DlStatus {
    if out.is_null() {
        return DlStatus::NullArgument;
    }
    let result = catch_unwind(|| {
        tau_convergents(max_k)
            .map(|list| list.iter().map(|c| c.quality).fold(f64::INFINITY, f64::min))
    });
    match result {
        Ok(Ok(min)) => {
            *out = min;
            DlStatus::Ok
        }
        Ok(Err(_)) => DlStatus::InvalidArgument,
        Err(_) => DlStatus::InternalError,
    }
}

/// Seeded randomized self-test of the exact ring arithmetic; returns Ok
/// when every trial passes.
#[no_mangle]
pub extern "C" fn dl_ring_self_test(trials: u64) -> DlStatus {
    guarded(|| {
        // deterministic linear-congruential sampler, no external RNG
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 17) % 2_000_001) as i64 - 1_000_000
        };
        for _ in 0..trials {
            let x = RingElem::from_i64(next(), next(), next(), next());
            let y = RingElem::from_i64(next(), next(), next(), next());
            let ok = x.mul(&y) == y.mul(&x)
                && x.mul(&y).sigma() == x.sigma().mul(&y.sigma())
                && x.mul(&y).abs_squared() == x.abs_squared().mul(&y.abs_squared());
            if !ok {
                return DlStatus::InternalError;
            }
        }
        DlStatus::Ok
    })
}
