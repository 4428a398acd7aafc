use std::ffi::{CStr, CString};
use std::ptr;

use mzvlab_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mzv_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn eval_zeta21() {
    let mut v = ptr::null_mut();
    let st = unsafe {
        mzv_eval(c("mzv").as_ptr(), c("2,1").as_ptr(), ptr::null(), ptr::null(), ptr::null(), ptr::null(), ptr::null(), 128, &mut v)
    };
    assert_eq!(st, MzvStatus::Ok);
    let s = unsafe { CStr::from_ptr(mzv_value_string(v)) }.to_str().unwrap().to_string();
    assert!(s.starts_with("1.2020569031595942853997"), "{s}");
    unsafe {
        assert!(mzv_value_err(v) < 1e-35);
        assert_eq!(mzv_value_is_exact(v), 0);
        mzv_value_free(v);
    }
}

#[test]
fn errors_map_to_codes() {
    let mut v = ptr::null_mut();
    let st = unsafe {
        mzv_eval(c("mzv").as_ptr(), c("1").as_ptr(), ptr::null(), ptr::null(), ptr::null(), ptr::null(), ptr::null(), 128, &mut v)
    };
    assert_ne!(st, MzvStatus::Ok);
    assert!(v.is_null());
    assert!(!last_error().is_empty());

    let st = unsafe { mzv_eval(ptr::null(), c("2").as_ptr(), ptr::null(), ptr::null(), ptr::null(), ptr::null(), ptr::null(), 0, &mut v) };
    assert_eq!(st, MzvStatus::NullPointer);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mzv_dual(c("1,x").as_ptr(), &mut s) }, MzvStatus::Parse);
    assert_eq!(unsafe { mzv_dual(c("2").as_ptr(), ptr::null_mut()) }, MzvStatus::NullPointer);
}

#[test]
fn dual_string() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mzv_dual(c("1,1,2,1").as_ptr(), &mut s) }, MzvStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "3,2");
    unsafe { mzv_string_free(s) };
}

#[test]
fn poset_handle() {
    let text = c("1: K(1)\n2: K(1)\n3: O\n3<2\n2<1\n");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mzv_poset_parse(text.as_ptr(), &mut p) }, MzvStatus::Ok);
    unsafe {
        assert_eq!(mzv_poset_len(p), 3);
        let mut n = 0u64;
        assert_eq!(mzv_poset_extensions(p, &mut n), MzvStatus::Ok);
        assert_eq!(n, 1);
        assert_eq!(mzv_poset_admissible(p, ptr::null_mut()), MzvStatus::Ok);
        let mut v = ptr::null_mut();
        assert_eq!(mzv_poset_eval(p, 128, &mut v), MzvStatus::Ok);
        assert!((mzv_value_re(v) - 1.2020569031595942).abs() < 1e-14);
        mzv_value_free(v);
        mzv_poset_free(p);
    }

    let bad = c("1: O\n");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mzv_poset_parse(bad.as_ptr(), &mut p) }, MzvStatus::Ok);
    let mut w = 0u32;
    unsafe {
        assert_eq!(mzv_poset_admissible(p, &mut w), MzvStatus::Inadmissible);
        assert_eq!(w, 1);
        mzv_poset_free(p);
    }
}

#[test]
fn verify_and_fuzz() {
    let mut r = ptr::null_mut();
    let st = unsafe {
        mzv_verify(c("SS2016-LEMMA").as_ptr(), c("k=2,1;x=1/2,1/3;n=4").as_ptr(), c("exact").as_ptr(), 128, &mut r)
    };
    assert_eq!(st, MzvStatus::Ok, "{}", last_error());
    unsafe {
        assert_eq!(mzv_report_verdict(r), MzvVerdict::Pass);
        assert_eq!(mzv_report_residual(r), 0.0);
        let j: serde_json::Value = serde_json::from_str(CStr::from_ptr(mzv_report_json(r)).to_str().unwrap()).unwrap();
        assert_eq!(j["residual"], "0");
        mzv_report_free(r);
    }

    let st = unsafe { mzv_verify(c("SS2016-LEMMA").as_ptr(), c("k=2,1;n=4").as_ptr(), ptr::null(), 128, &mut r) };
    assert_eq!(st, MzvStatus::Invalid);

    let mut s = ptr::null_mut();
    let st = unsafe { mzv_fuzz(c("PMPLS1").as_ptr(), 20, 1, ptr::null(), 128, &mut s) };
    assert_eq!(st, MzvStatus::Ok);
    let j: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    assert_eq!(j["pass"], 20);
    unsafe { mzv_string_free(s) };
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(mzv_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
