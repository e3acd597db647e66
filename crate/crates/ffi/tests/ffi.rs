use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use blockfuse_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { bf_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bf_last_error()) }.to_str().unwrap().to_string()
}

fn system(group: u8, n: u32, p: u32) -> *mut BfSystem {
    let mut sys = ptr::null_mut();
    let status = unsafe { bf_system_new(group as c_char, n, p, &mut sys) };
    assert_eq!(status, BfStatus::Ok, "{}", last_error());
    sys
}

#[test]
fn block_counts_match_known_values() {
    for (group, n, p, want) in [(b's', 3, 2, 2), (b's', 4, 2, 1), (b's', 1, 2, 1), (b's', 5, 5, 3), (b'a', 4, 3, 2)] {
        let sys = system(group, n, p);
        let mut count = 0usize;
        assert_eq!(unsafe { bf_system_block_count(sys, &mut count) }, BfStatus::Ok);
        assert_eq!(count, want, "{} {n} mod {p}", group as char);
        unsafe { bf_system_free(sys) };
    }
}

#[test]
fn json_reports() {
    let sys = system(b's', 4, 3);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bf_system_blocks_json(sys, &mut out) }, BfStatus::Ok);
    let blocks = take(out);
    assert!(blocks.contains("\"blocks\""));
    assert!(!blocks.contains("wall_time_ms"));

    assert_eq!(unsafe { bf_system_fusion_json(sys, -1, &mut out) }, BfStatus::Ok);
    let fusion = take(out);
    assert!(fusion.contains("\"S_M\""));
    assert!(!fusion.contains("FALSIFIED"));

    assert_eq!(unsafe { bf_system_fusion_json(sys, 99, &mut out) }, BfStatus::Usage);
    assert!(!last_error().is_empty());
    unsafe { bf_system_free(sys) };
}

#[test]
fn usage_and_null_errors() {
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { bf_system_new(b's' as c_char, 4, 4, &mut sys) }, BfStatus::Usage);
    assert!(last_error().contains("not prime"));
    assert_eq!(unsafe { bf_system_new(b'x' as c_char, 4, 2, &mut sys) }, BfStatus::Usage);
    assert_eq!(unsafe { bf_system_new(b's' as c_char, 0, 2, &mut sys) }, BfStatus::Usage);
    assert_eq!(unsafe { bf_system_new(b's' as c_char, 3, 2, ptr::null_mut()) }, BfStatus::Null);
    assert!(sys.is_null());

    let mut count = 0usize;
    assert_eq!(unsafe { bf_system_block_count(ptr::null(), &mut count) }, BfStatus::Null);
    unsafe {
        bf_system_free(ptr::null_mut());
        bf_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_suite() {
    let suite = CString::new("blocks").unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { bf_verify(suite.as_ptr(), b'a' as c_char, 4, 2, &mut out) };
    assert_eq!(status, BfStatus::Ok, "{}", last_error());
    assert!(take(out).contains("\"passed\": true"));

    let bad = CString::new("nonsense").unwrap();
    assert_eq!(unsafe { bf_verify(bad.as_ptr(), 0, 0, 0, &mut out) }, BfStatus::Usage);
}

#[test]
fn cycle_type() {
    // (1 2 3)(4 5), 6 fixed
    let images = [2u32, 3, 1, 5, 4, 6];
    let mut parts = [0u32; 6];
    let mut count = 0usize;
    let status = unsafe { bf_perm_cycle_type(images.as_ptr(), images.len(), parts.as_mut_ptr(), parts.len(), &mut count) };
    assert_eq!(status, BfStatus::Ok);
    assert_eq!(&parts[..count], &[3, 2, 1]);

    let mut small = [0u32; 1];
    let status = unsafe { bf_perm_cycle_type(images.as_ptr(), images.len(), small.as_mut_ptr(), 1, &mut count) };
    assert_eq!(status, BfStatus::Usage);
    assert_eq!(count, 3);

    let not_perm = [1u32, 1];
    let status = unsafe { bf_perm_cycle_type(not_perm.as_ptr(), 2, parts.as_mut_ptr(), 6, &mut count) };
    assert_eq!(status, BfStatus::Usage);
    let zero = [0u32];
    let status = unsafe { bf_perm_cycle_type(zero.as_ptr(), 1, parts.as_mut_ptr(), 6, &mut count) };
    assert_eq!(status, BfStatus::Usage);
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/blockfuse.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["bf_system_new", "bf_system_fusion_json", "bf_verify", "bf_last_error", "BF_STATUS_NULL = 5"] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; syntax check skipped");
        return;
    };
    assert!(status.success());
}
