use std::ffi::{CStr, CString};
use std::ptr;

use chaincodes_ffi::*;

const Z4: &str = r#"{"kind":"galois","p":2,"t":2,"l":1}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { cc_string_free(s) };
    out
}

fn last_error() -> String {
    let p = cc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn ambient(ring: &str, moduli: &str) -> *mut CcAmbient {
    let mut a = ptr::null_mut();
    let st = unsafe { cc_ambient_new(c(ring).as_ptr(), c(moduli).as_ptr(), 0, &mut a) };
    assert_eq!(st, CcStatus::Ok, "{}", last_error());
    a
}

#[test]
fn hamming_lift_round_trip() {
    let a = ambient(Z4, "x^7-1");
    unsafe {
        let mut n = 0usize;
        assert_eq!(cc_ambient_num_classes(a, &mut n), CcStatus::Ok);
        assert_eq!(n, 3);
        assert_eq!(cc_ambient_length(a, &mut n), CcStatus::Ok);
        assert_eq!(n, 7);

        let mut json = ptr::null_mut();
        assert_eq!(cc_ambient_classes_json(a, &mut json), CcStatus::Ok);
        let classes: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(classes.as_array().unwrap().len(), 3);

        let g = c("x^3+2*x^2+x+3");
        let gens = [g.as_ptr()];
        let mut k = ptr::null_mut();
        assert_eq!(cc_code_from_generators(a, gens.as_ptr(), 1, &mut k), CcStatus::Ok, "{}", last_error());

        let mut d = 0u64;
        assert_eq!(cc_code_min_distance(k, 1 << 24, &mut d), CcStatus::Ok);
        assert_eq!(d, 3);
        let mut b = 0u64;
        assert_eq!(cc_code_distance_bound(k, 1 << 24, &mut b), CcStatus::Ok);
        assert!(b <= d);

        let mut card = ptr::null_mut();
        assert_eq!(cc_code_cardinality(k, &mut card), CcStatus::Ok);
        assert_eq!(take_string(card), "256");

        let mut j = [0u32; 3];
        let mut len = 0usize;
        assert_eq!(cc_code_exponents(k, j.as_mut_ptr(), 3, &mut len), CcStatus::Ok);
        assert_eq!(len, 3);
        let mut k2 = ptr::null_mut();
        assert_eq!(cc_code_from_exponents(a, j.as_ptr(), len, &mut k2), CcStatus::Ok);
        let mut j2 = [0u32; 3];
        assert_eq!(cc_code_exponents(k2, j2.as_mut_ptr(), 3, &mut len), CcStatus::Ok);
        assert_eq!(j, j2);

        let mut small = [0u32; 1];
        assert_eq!(cc_code_exponents(k, small.as_mut_ptr(), 1, &mut len), CcStatus::Domain);
        assert_eq!(len, 3);

        let mut json = ptr::null_mut();
        assert_eq!(cc_code_json(k, &mut json), CcStatus::Ok);
        let rec: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert!(rec.is_object());

        cc_code_free(k2);
        cc_code_free(k);
        cc_ambient_free(a);
    }
}

#[test]
fn duality_and_selfdual_construction() {
    let a = ambient(Z4, "x^7-1");
    unsafe {
        let mut exists = false;
        assert_eq!(cc_nontrivial_selfdual_exists(a, &mut exists), CcStatus::Ok);
        assert!(exists);
        let mut k = ptr::null_mut();
        assert_eq!(cc_build_nontrivial_selfdual(a, &mut k), CcStatus::Ok);
        let mut sd = false;
        assert_eq!(cc_code_is_selfdual(k, &mut sd), CcStatus::Ok);
        assert!(sd);
        let mut card = ptr::null_mut();
        assert_eq!(cc_code_cardinality(k, &mut card), CcStatus::Ok);
        assert_eq!(take_string(card), "128");

        let j = [1u32, 0, 0];
        let mut k1 = ptr::null_mut();
        assert_eq!(cc_code_from_exponents(a, j.as_ptr(), 3, &mut k1), CcStatus::Ok);
        let mut dual = ptr::null_mut();
        assert_eq!(cc_code_dual(k1, &mut dual), CcStatus::Ok);
        let mut c1 = ptr::null_mut();
        let mut c2 = ptr::null_mut();
        cc_code_cardinality(k1, &mut c1);
        cc_code_cardinality(dual, &mut c2);
        let prod: u64 = take_string(c1).parse::<u64>().unwrap() * take_string(c2).parse::<u64>().unwrap();
        assert_eq!(prod, 1 << 14);

        cc_code_free(dual);
        cc_code_free(k1);
        cc_code_free(k);
        cc_ambient_free(a);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(cc_ambient_new(ptr::null(), c("x-1").as_ptr(), 0, &mut a), CcStatus::NullPointer);
        assert!(!last_error().is_empty());
        assert_eq!(cc_ambient_new(c("{").as_ptr(), c("x-1").as_ptr(), 0, &mut a), CcStatus::Parse);
        assert_eq!(cc_ambient_new(c(Z4).as_ptr(), c("x^2-1").as_ptr(), 0, &mut a), CcStatus::Domain);
        assert!(last_error().len() > 3);
        let bad = [0xffu8, 0];
        assert_eq!(cc_ambient_new(bad.as_ptr().cast(), c("x-1").as_ptr(), 0, &mut a), CcStatus::InvalidUtf8);

        let a = ambient(Z4, "x^7-1");
        let mut k = ptr::null_mut();
        let j = [1u32, 2];
        assert_ne!(cc_code_from_exponents(a, j.as_ptr(), 2, &mut k), CcStatus::Ok);
        let mut n = 0usize;
        assert_eq!(cc_ambient_num_classes(a, &mut n), CcStatus::Ok);
        assert!(cc_last_error().is_null());

        let j = [1u32, 1, 1];
        assert_eq!(cc_code_from_exponents(a, j.as_ptr(), 3, &mut k), CcStatus::Ok);
        let mut d = 0u64;
        assert_eq!(cc_code_min_distance(k, 4, &mut d), CcStatus::Budget);
        assert_eq!(cc_code_min_distance(ptr::null(), 4, &mut d), CcStatus::NullPointer);
        cc_code_free(k);
        cc_ambient_free(a);
        cc_code_free(ptr::null_mut());
        cc_ambient_free(ptr::null_mut());
        cc_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/chaincodes.h")).unwrap();
    for name in [
        "CcStatus",
        "cc_last_error",
        "cc_string_free",
        "cc_ambient_new",
        "cc_ambient_free",
        "cc_ambient_num_classes",
        "cc_ambient_length",
        "cc_ambient_classes_json",
        "cc_code_from_exponents",
        "cc_code_from_generators",
        "cc_code_free",
        "cc_code_exponents",
        "cc_code_json",
        "cc_code_cardinality",
        "cc_code_dual",
        "cc_code_is_selfdual",
        "cc_code_min_distance",
        "cc_code_distance_bound",
        "cc_nontrivial_selfdual_exists",
        "cc_build_nontrivial_selfdual",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
