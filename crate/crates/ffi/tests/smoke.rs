//! Smoke tests driving the C ABI the way a foreign caller would.

use std::ffi::CStr;
use std::os::raw::c_char;

use decaylab_ffi::*;

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_owned();
    unsafe { dl_string_free(ptr) };
    text
}

#[test]
fn version_is_a_static_string() {
    let version = unsafe { CStr::from_ptr(dl_version()) }.to_str().unwrap();
    assert!(!version.is_empty());
}

#[test]
fn decay_handle_lifecycle() {
    let mut handle: *mut DlDecayResult = std::ptr::null_mut();
    let status = unsafe { dl_decay_run(2, 2, 0, 0, false, &mut handle) };
    assert_eq!(status, DlStatus::Ok);
    assert!(!handle.is_null());

    let mut detsq = 0.0f64;
    assert_eq!(
        unsafe { dl_decay_detsq_float(handle, &mut detsq) },
        DlStatus::Ok
    );
    assert!((detsq - 0.11145618000168243).abs() < 1e-15);

    let mut value = 0.0f64;
    assert_eq!(unsafe { dl_decay_value(handle, &mut value) }, DlStatus::Ok);
    assert!((value - detsq.sqrt()).abs() < 1e-15);

    let (mut p, mut q) = (std::ptr::null_mut(), std::ptr::null_mut());
    assert_eq!(
        unsafe { dl_decay_detsq_exact(handle, &mut p, &mut q) },
        DlStatus::Ok
    );
    assert_eq!(take_string(p), "26");
    assert_eq!(take_string(q), "-16");

    let mut coords = [0i64; 4];
    assert_eq!(
        unsafe { dl_decay_witness(handle, 1, coords.as_mut_ptr()) },
        DlStatus::Ok
    );
    assert!(coords.iter().all(|c| c.abs() <= 2));
    assert_eq!(
        unsafe { dl_decay_witness(handle, 3, coords.as_mut_ptr()) },
        DlStatus::InvalidArgument
    );

    let mut visited = 0u64;
    assert_eq!(
        unsafe { dl_decay_visited_pairs(handle, &mut visited) },
        DlStatus::Ok
    );
    assert!(visited > 0);

    let json = take_string(unsafe { dl_decay_json(handle) });
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["detsq_p"], "26");

    unsafe { dl_decay_free(handle) };
}

#[test]
fn decay_error_codes() {
    let mut handle: *mut DlDecayResult = std::ptr::null_mut();
    assert_eq!(
        unsafe { dl_decay_run(0, 1, 0, 0, false, &mut handle) },
        DlStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { dl_decay_run(2, 2, 0, 10, false, &mut handle) },
        DlStatus::BudgetExceeded
    );
    assert_eq!(
        unsafe { dl_decay_run(2, 2, 0, 10, true, &mut handle) },
        DlStatus::Ok
    );
    unsafe { dl_decay_free(handle) };
    let status = unsafe { dl_decay_run(1, 1, 0, 0, false, std::ptr::null_mut()) };
    assert_eq!(status, DlStatus::NullArgument);
}

#[test]
fn table_and_factorization_surface() {
    let csv = take_string(dl_table_csv());
    assert!(csv.contains("219640"));
    assert_eq!(csv.lines().count(), 6); // header + five rows

    let row = take_string(dl_table_row_json(25));
    let value: serde_json::Value = serde_json::from_str(&row).unwrap();
    assert_eq!(value["m"], "66563198");
    assert!(dl_table_row_json(7).is_null());

    assert_eq!(dl_factor_identity_holds(40), 1);
    assert_eq!(dl_factor_identity_holds(0), -1);
}

#[test]
fn dmt_surface() {
    let mut optimal = false;
    assert_eq!(unsafe { dl_dmt_optimal(1, 5, &mut optimal) }, DlStatus::Ok);
    assert!(optimal);
    assert_eq!(unsafe { dl_dmt_optimal(1, 2, &mut optimal) }, DlStatus::Ok);
    assert!(!optimal);
    assert_eq!(
        unsafe { dl_dmt_optimal(3, 2, &mut optimal) },
        DlStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { dl_dmt_optimal(1, 0, &mut optimal) },
        DlStatus::InvalidArgument
    );

    let (mut num, mut den) = (0i64, 0i64);
    assert_eq!(
        unsafe { dl_dmt_threshold(&mut num, &mut den) },
        DlStatus::Ok
    );
    assert_eq!((num, den), (1, 5));

    let report = take_string(dl_dmt_report_json(1, 5));
    let value: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(value["optimal"], true);
    assert_eq!(value["condition_lhs"]["exact"], "4/5");
}

#[test]
fn bounds_and_self_test_surface() {
    let constant = dl_liouville_constant();
    assert!((constant - 0.30901699437494745).abs() < 1e-15);

    let mut min_quality = 0.0f64;
    assert_eq!(
        unsafe { dl_liouville_min_quality(1_000_000, &mut min_quality) },
        DlStatus::Ok
    );
    assert!(min_quality > constant && min_quality < 1.0);

    assert_eq!(dl_ring_self_test(200), DlStatus::Ok);
}
