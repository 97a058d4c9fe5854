//! C ABI over `bibd-core`.
//!
//! Designs live behind an opaque `BibdDesign` handle created by one of the
//! constructors and released with `bibd_design_free`. Every fallible call
//! returns a `BibdStatus`; on failure `bibd_last_error` gives a message for
//! the calling thread. Strings returned by the library are freed with
//! `bibd_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bibd_core::constructions::{affine_plane, example_15, example_40, fano, projective_plane};
use bibd_core::io::{parse_design, serialize_design, ParseError};
use bibd_core::report::{run_pipeline, to_json, PipelineOptions};
use bibd_core::subdesign::{minimal_subdesigns, wd_profile_of};
use bibd_core::wl::{classify_gip_case, wl2_refine, IncidenceGraph, InitialColouring, PairColoring, MAX_NODES};
use bibd_core::Design;

/// Opaque design handle.
pub struct BibdDesign(Design);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BibdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidDesign = 4,
    OutOfRange = 5,
    BufferTooSmall = 6,
    NotApplicable = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BibdParams {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
}

/// Coverage of the minimal sub-designs. `l` and `m` are 0 when not constant.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BibdWdProfile {
    pub v_prime: usize,
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub well_distributed: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BibdGenerator {
    Fano = 0,
    ProjectivePlane = 1,
    AffinePlane = 2,
    Example15 = 3,
    Example40 = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: BibdStatus, msg: impl Into<String>) -> BibdStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> BibdStatus) -> BibdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(BibdStatus::Panic, msg)
        }
    }
}

unsafe fn handle<'a>(d: *const BibdDesign) -> Result<&'a Design, BibdStatus> {
    d.as_ref().map(|h| &h.0).ok_or_else(|| fail(BibdStatus::NullPointer, "null design handle"))
}

unsafe fn store(out: *mut *mut BibdDesign, d: Design) -> BibdStatus {
    *out = Box::into_raw(Box::new(BibdDesign(d)));
    BibdStatus::Ok
}

fn string_out(out: *mut *mut c_char, s: String) -> BibdStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            BibdStatus::Ok
        }
        Err(_) => fail(BibdStatus::Panic, "interior NUL in output"),
    }
}

/// Message for the last failed call on this thread. Valid until the next
/// call on the same thread.
#[no_mangle]
pub extern "C" fn bibd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn bibd_status_str(status: BibdStatus) -> *const c_char {
    let s: &'static CStr = match status {
        BibdStatus::Ok => c"ok",
        BibdStatus::NullPointer => c"null pointer",
        BibdStatus::InvalidUtf8 => c"invalid UTF-8",
        BibdStatus::ParseError => c"parse error",
        BibdStatus::InvalidDesign => c"invalid design",
        BibdStatus::OutOfRange => c"index out of range",
        BibdStatus::BufferTooSmall => c"buffer too small",
        BibdStatus::NotApplicable => c"not applicable",
        BibdStatus::Panic => c"internal error",
    };
    s.as_ptr()
}

/// Parses a design from text in the `v k` + blocks format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bibd_design_parse(text: *const c_char, out: *mut *mut BibdDesign) -> BibdStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(BibdStatus::NullPointer, "null argument");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(BibdStatus::InvalidUtf8, "input is not UTF-8");
        };
        match parse_design(text) {
            Ok(d) => store(out, d),
            Err(e @ ParseError::Design(_)) => fail(BibdStatus::InvalidDesign, e.to_string()),
            Err(e) => fail(BibdStatus::ParseError, e.to_string()),
        }
    })
}

/// Builds a design from `nblocks * k` vertex ids laid out block by block.
///
/// # Safety
/// `vertices` must point to `nblocks * k` readable values and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn bibd_design_from_blocks(
    v: usize,
    k: usize,
    vertices: *const usize,
    nblocks: usize,
    out: *mut *mut BibdDesign,
) -> BibdStatus {
    guard(|| {
        if vertices.is_null() || out.is_null() {
            return fail(BibdStatus::NullPointer, "null argument");
        }
        let Some(len) = nblocks.checked_mul(k) else {
            return fail(BibdStatus::OutOfRange, "nblocks * k overflows");
        };
        let flat = std::slice::from_raw_parts(vertices, len);
        let blocks = flat.chunks(k.max(1)).map(|c| c.to_vec()).collect();
        match Design::with_block_size(v, k, blocks) {
            Ok(d) => store(out, d),
            Err(e) => fail(BibdStatus::InvalidDesign, e.to_string()),
        }
    })
}

/// Generates a standard design. `q` is the prime order for the planes and
/// ignored otherwise.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bibd_design_generate(kind: BibdGenerator, q: usize, out: *mut *mut BibdDesign) -> BibdStatus {
    guard(|| {
        if out.is_null() {
            return fail(BibdStatus::NullPointer, "null argument");
        }
        let d = match kind {
            BibdGenerator::Fano => Ok(fano()),
            BibdGenerator::ProjectivePlane => projective_plane(q),
            BibdGenerator::AffinePlane => affine_plane(q),
            BibdGenerator::Example15 => Ok(example_15()),
            BibdGenerator::Example40 => Ok(example_40()),
        };
        match d {
            Ok(d) => store(out, d),
            Err(e) => fail(BibdStatus::InvalidDesign, e.to_string()),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bibd_design_free(d: *mut BibdDesign) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bibd_design_params(d: *const BibdDesign, out: *mut BibdParams) -> BibdStatus {
    guard(|| {
        let d = match handle(d) {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(BibdStatus::NullPointer, "null argument");
        }
        let p = d.params();
        *out = BibdParams { v: p.v, b: p.b, r: p.r, k: p.k, lambda: p.lambda };
        BibdStatus::Ok
    })
}

/// Copies block `id` into `buf`, which must hold `k` values.
///
/// # Safety
/// `d` must be a live handle and `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn bibd_design_block(d: *const BibdDesign, id: usize, buf: *mut usize, cap: usize) -> BibdStatus {
    guard(|| {
        let d = match handle(d) {
            Ok(d) => d,
            Err(s) => return s,
        };
        if buf.is_null() {
            return fail(BibdStatus::NullPointer, "null buffer");
        }
        if id >= d.b() {
            return fail(BibdStatus::OutOfRange, format!("block {id} is outside 0..{}", d.b()));
        }
        if cap < d.k() {
            return fail(BibdStatus::BufferTooSmall, format!("need {} slots", d.k()));
        }
        ptr::copy_nonoverlapping(d.block(id).as_ptr(), buf, d.k());
        BibdStatus::Ok
    })
}

/// Canonical text form of the design.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bibd_design_serialize(d: *const BibdDesign, out: *mut *mut c_char) -> BibdStatus {
    guard(|| {
        let d = match handle(d) {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(BibdStatus::NullPointer, "null argument");
        }
        string_out(out, serialize_design(d))
    })
}

/// Enumerates minimal sub-designs and reports their coverage.
/// Returns `NotApplicable` when there are none.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bibd_wd_profile(d: *const BibdDesign, out: *mut BibdWdProfile) -> BibdStatus {
    guard(|| {
        let d = match handle(d) {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(BibdStatus::NullPointer, "null argument");
        }
        match wd_profile_of(d, &minimal_subdesigns(d)) {
            Ok(wd) => {
                *out = BibdWdProfile {
                    v_prime: wd.v_prime,
                    n: wd.n,
                    l: wd.l.unwrap_or(0),
                    m: wd.m.unwrap_or(0),
                    well_distributed: wd.well_distributed,
                };
                BibdStatus::Ok
            }
            Err(e) => fail(BibdStatus::NotApplicable, e.to_string()),
        }
    })
}

/// Stable 2-WL class count and number of splitting rounds.
///
/// # Safety
/// `d` must be a live handle; `classes` and `rounds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bibd_wl_refine(
    d: *const BibdDesign,
    side_aware: bool,
    classes: *mut usize,
    rounds: *mut usize,
) -> BibdStatus {
    guard(|| {
        let d = match handle(d) {
            Ok(d) => d,
            Err(s) => return s,
        };
        if classes.is_null() || rounds.is_null() {
            return fail(BibdStatus::NullPointer, "null argument");
        }
        if d.v() + d.b() > MAX_NODES {
            return fail(BibdStatus::NotApplicable, format!("more than {MAX_NODES} nodes"));
        }
        let g = IncidenceGraph::new(d);
        let kind = if side_aware { InitialColouring::SideAware } else { InitialColouring::Plain };
        match wl2_refine(&g, Some(&PairColoring::initial(&g, kind))) {
            Ok(c) => {
                *classes = c.num_classes;
                *rounds = c.rounds;
                BibdStatus::Ok
            }
            Err(e) => fail(BibdStatus::NotApplicable, e.to_string()),
        }
    })
}

/// Case letter `'a'` to `'d'` of the sub-design classification.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bibd_gip_case(d: *const BibdDesign, out: *mut c_char) -> BibdStatus {
    guard(|| {
        let d = match handle(d) {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(BibdStatus::NullPointer, "null argument");
        }
        *out = classify_gip_case(d).tag() as c_char;
        BibdStatus::Ok
    })
}

/// Full pipeline report as JSON. `violations` receives the number of failed
/// checks.
///
/// # Safety
/// `d` must be a live handle; `out` and `violations` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bibd_report_json(
    d: *const BibdDesign,
    full: bool,
    out: *mut *mut c_char,
    violations: *mut usize,
) -> BibdStatus {
    guard(|| {
        let d = match handle(d) {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() || violations.is_null() {
            return fail(BibdStatus::NullPointer, "null argument");
        }
        let r = run_pipeline(d, PipelineOptions { full, ..Default::default() });
        *violations = r.violations.len();
        string_out(out, to_json(&r))
    })
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bibd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
