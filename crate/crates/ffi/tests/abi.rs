use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bibd_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(bibd_last_error()) }.to_string_lossy().into_owned()
}

fn generate(kind: BibdGenerator, q: usize) -> *mut BibdDesign {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { bibd_design_generate(kind, q, &mut d) }, BibdStatus::Ok);
    d
}

#[test]
fn example15_through_handles() {
    let d = generate(BibdGenerator::Example15, 0);
    unsafe {
        let mut p = BibdParams::default();
        assert_eq!(bibd_design_params(d, &mut p), BibdStatus::Ok);
        assert_eq!(p, BibdParams { v: 15, b: 35, r: 7, k: 3, lambda: 1 });

        let mut block = [0usize; 3];
        assert_eq!(bibd_design_block(d, 0, block.as_mut_ptr(), 3), BibdStatus::Ok);
        assert_eq!(block, [0, 1, 2]);
        assert_eq!(bibd_design_block(d, 35, block.as_mut_ptr(), 3), BibdStatus::OutOfRange);
        assert_eq!(bibd_design_block(d, 0, block.as_mut_ptr(), 2), BibdStatus::BufferTooSmall);

        let mut wd = BibdWdProfile::default();
        assert_eq!(bibd_wd_profile(d, &mut wd), BibdStatus::Ok);
        assert_eq!((wd.v_prime, wd.n, wd.l, wd.m, wd.well_distributed), (7, 15, 7, 3, true));

        let (mut classes, mut rounds) = (0, 0);
        assert_eq!(bibd_wl_refine(d, false, &mut classes, &mut rounds), BibdStatus::Ok);
        assert_eq!((classes, rounds), (9, 1));

        let mut case: c_char = 0;
        assert_eq!(bibd_gip_case(d, &mut case), BibdStatus::Ok);
        assert_eq!(case as u8, b'd');

        let mut json = ptr::null_mut();
        let mut violations = usize::MAX;
        assert_eq!(bibd_report_json(d, false, &mut json, &mut violations), BibdStatus::Ok);
        assert_eq!(violations, 0);
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"m\": 3"));
        bibd_string_free(json);
        bibd_design_free(d);
    }
}

#[test]
fn parse_round_trip_and_errors() {
    let d = generate(BibdGenerator::Fano, 0);
    unsafe {
        let mut text = ptr::null_mut();
        assert_eq!(bibd_design_serialize(d, &mut text), BibdStatus::Ok);
        let mut e = ptr::null_mut();
        assert_eq!(bibd_design_parse(text, &mut e), BibdStatus::Ok);
        let mut case: c_char = 0;
        assert_eq!(bibd_gip_case(e, &mut case), BibdStatus::Ok);
        assert_eq!(case as u8, b'a');
        let mut wd = BibdWdProfile::default();
        assert_eq!(bibd_wd_profile(e, &mut wd), BibdStatus::NotApplicable);
        bibd_string_free(text);
        bibd_design_free(e);
        bibd_design_free(d);

        let mut out = ptr::null_mut();
        let bad = CString::new("7 3\n0 1 2\n0 1 3\n").unwrap();
        assert_eq!(bibd_design_parse(bad.as_ptr(), &mut out), BibdStatus::InvalidDesign);
        assert!(out.is_null());
        assert!(last_error().contains("pair"));
        let junk = CString::new("7 x\n").unwrap();
        assert_eq!(bibd_design_parse(junk.as_ptr(), &mut out), BibdStatus::ParseError);
        assert!(last_error().contains("line 1"));
        assert_eq!(bibd_design_parse(ptr::null(), &mut out), BibdStatus::NullPointer);
        let mut p = BibdParams::default();
        assert_eq!(bibd_design_params(ptr::null(), &mut p), BibdStatus::NullPointer);
        let mut g = ptr::null_mut();
        assert_eq!(bibd_design_generate(BibdGenerator::ProjectivePlane, 4, &mut g), BibdStatus::InvalidDesign);
        assert!(CStr::from_ptr(bibd_status_str(BibdStatus::BufferTooSmall)).to_str().unwrap().contains("buffer"));
        bibd_design_free(ptr::null_mut());
        bibd_string_free(ptr::null_mut());
    }
}

#[test]
fn from_blocks() {
    let blocks: [usize; 21] = [0, 1, 2, 0, 3, 4, 0, 5, 6, 1, 3, 5, 1, 4, 6, 2, 3, 6, 2, 4, 5];
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(bibd_design_from_blocks(7, 3, blocks.as_ptr(), 7, &mut d), BibdStatus::Ok);
        let mut p = BibdParams::default();
        bibd_design_params(d, &mut p);
        assert_eq!((p.v, p.b), (7, 7));
        bibd_design_free(d);
        let mut e = ptr::null_mut();
        assert_eq!(bibd_design_from_blocks(7, 3, blocks.as_ptr(), 6, &mut e), BibdStatus::InvalidDesign);
    }
}

fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_against_header() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = profile_dir().join("libbibd_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("bibd_smoke.c");
    let exe = tmp.join("bibd_smoke");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "bibd.h"
int main(void) {
    BibdDesign *d = NULL;
    if (bibd_design_generate(BIBD_GENERATOR_EXAMPLE40, 0, &d) != BIBD_STATUS_OK) return 1;
    BibdParams p;
    bibd_design_params(d, &p);
    BibdWdProfile wd;
    if (bibd_wd_profile(d, &wd) != BIBD_STATUS_OK) return 2;
    char gip = 0;
    bibd_gip_case(d, &gip);
    printf("%zu %zu %zu %zu %zu %c\n", p.v, p.b, wd.n, wd.l, wd.m, gip);
    bibd_design_free(d);
    BibdDesign *bad = NULL;
    BibdStatus s = bibd_design_parse("4 3\n0 1 2\n", &bad);
    printf("%d %s\n", (int)s, bibd_status_str(s));
    return 0;
}
"#,
    )
    .unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout, "40 130 40 13 4 d\n4 invalid design\n");
}
