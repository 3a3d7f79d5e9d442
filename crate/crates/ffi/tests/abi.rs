use std::ffi::{c_char, CStr, CString};
use std::ptr;

use whitney_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { whitney_string_free(p) };
    s
}

fn last_error() -> String {
    let p = whitney_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn cochain(json: &str) -> *mut WhitneyCochain {
    let json = CString::new(json).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { whitney_cochain_from_json(json.as_ptr(), &mut c) }, WhitneyStatus::Ok);
    c
}

const HYPOTENUSE: &str = r#"{"n":2,"k":1,"terms":[{"face":[1,2],"coeff":"1"}]}"#;

#[test]
fn whitney_then_derham_round_trips() {
    let c = cochain(HYPOTENUSE);
    let mut form = ptr::null_mut();
    assert_eq!(unsafe { whitney_map(c, &mut form) }, WhitneyStatus::Ok);

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { whitney_form_render(form, 0, &mut text) }, WhitneyStatus::Ok);
    assert_eq!(take_string(text), "x1 dx2 - x2 dx1");

    let mut back = ptr::null_mut();
    assert_eq!(unsafe { whitney_derham(form, &mut back) }, WhitneyStatus::Ok);
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(whitney_cochain_to_json(c, &mut a), WhitneyStatus::Ok);
        assert_eq!(whitney_cochain_to_json(back, &mut b), WhitneyStatus::Ok);
    }
    assert_eq!(take_string(a), take_string(b));

    unsafe {
        whitney_cochain_free(back);
        whitney_form_free(form);
        whitney_cochain_free(c);
    }
}

#[test]
fn characterize_agrees_with_whitney_via_json() {
    let c = cochain(r#"{"n":3,"k":2,"terms":[{"face":[0,1,3],"coeff":"2/3"},{"face":[1,2,3],"coeff":"-1"}]}"#);
    let (mut w, mut s) = (ptr::null_mut(), ptr::null_mut());
    let (mut wj, mut sj) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(whitney_map(c, &mut w), WhitneyStatus::Ok);
        assert_eq!(whitney_characterize(c, &mut s), WhitneyStatus::Ok);
        assert_eq!(whitney_form_to_json(w, &mut wj), WhitneyStatus::Ok);
        assert_eq!(whitney_form_to_json(s, &mut sj), WhitneyStatus::Ok);
    }
    let json = take_string(wj);
    assert_eq!(json, take_string(sj));

    // The serialized form parses back to the same thing.
    let text = CString::new(json.clone()).unwrap();
    let (mut reparsed, mut again) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(whitney_form_from_json(text.as_ptr(), &mut reparsed), WhitneyStatus::Ok);
        assert_eq!(whitney_form_to_json(reparsed, &mut again), WhitneyStatus::Ok);
        whitney_form_free(reparsed);
        whitney_form_free(w);
        whitney_form_free(s);
        whitney_cochain_free(c);
    }
    assert_eq!(take_string(again), json);
}

#[test]
fn integrate_respects_orientation() {
    let c = cochain(HYPOTENUSE);
    let mut form = ptr::null_mut();
    assert_eq!(unsafe { whitney_map(c, &mut form) }, WhitneyStatus::Ok);
    let cases: [(&[usize], i32, &str); 4] = [(&[1, 2], 0, "1"), (&[2, 1], 0, "-1"), (&[1, 2], 1, "-1"), (&[0, 1], 0, "0")];
    for (vertices, negative, expected) in cases {
        let mut out = ptr::null_mut();
        let status = unsafe { whitney_integrate(form, vertices.as_ptr(), vertices.len(), negative, &mut out) };
        assert_eq!(status, WhitneyStatus::Ok);
        assert_eq!(take_string(out), expected, "{vertices:?} negative={negative}");
    }

    let mut out = ptr::null_mut();
    let bad = [0usize, 0];
    assert_eq!(unsafe { whitney_integrate(form, bad.as_ptr(), 2, 0, &mut out) }, WhitneyStatus::InvalidArgument);
    assert!(out.is_null());
    unsafe {
        whitney_form_free(form);
        whitney_cochain_free(c);
    }
}

#[test]
fn dimensions_and_trace() {
    let mut d = 0usize;
    assert_eq!(unsafe { whitney_lambda_e_dimension(3, 1, &mut d) }, WhitneyStatus::Ok);
    assert_eq!(d, 6);
    assert_eq!(unsafe { whitney_lambda_e_dimension(2, 3, &mut d) }, WhitneyStatus::InvalidArgument);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { whitney_proof_trace(2, 1, &mut out) }, WhitneyStatus::Ok);
    let trace = take_string(out);
    assert!(trace.contains("\"stage1\"") && trace.contains("\"stage2\""), "{trace}");

    assert_eq!(unsafe { whitney_proof_trace(2, 2, &mut out) }, WhitneyStatus::InvalidArgument);
}

#[test]
fn errors_set_status_and_message() {
    let mut c = ptr::null_mut();
    let garbage = CString::new("{not json").unwrap();
    assert_eq!(unsafe { whitney_cochain_from_json(garbage.as_ptr(), &mut c) }, WhitneyStatus::Parse);
    assert!(c.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { whitney_cochain_from_json(ptr::null(), &mut c) }, WhitneyStatus::NullPointer);
    assert!(last_error().contains("null"));

    let mut form = ptr::null_mut();
    assert_eq!(unsafe { whitney_map(ptr::null(), &mut form) }, WhitneyStatus::NullPointer);

    let good = cochain(HYPOTENUSE);
    assert_eq!(unsafe { whitney_map(good, ptr::null_mut()) }, WhitneyStatus::NullPointer);
    unsafe {
        whitney_cochain_free(good);
        whitney_cochain_free(ptr::null_mut());
        whitney_form_free(ptr::null_mut());
        whitney_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/whitney.h")).unwrap();
    let source = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 14);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct WhitneyCochain WhitneyCochain;"));
}
