//! C ABI for the toribord core. All functions return a status code; text
//! results are heap strings released with `toribord_string_free`, complexes
//! are opaque handles released with `toribord_complex_free`. The last error
//! message is kept per thread and fetched with `toribord_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use toribord::bordism::{
    a_n, class_coordinates_unitary, class_coordinates_z2, is_realizable_unitary, is_realizable_z2,
    z2_bordism_dim,
};
use toribord::complex::{
    build_universal_z2_with, build_universal_z_truncated_with, Limits, Ring, SimplicialComplex,
};
use toribord::homology::{reduced_homology_gf2, reduced_homology_z};
use toribord::io;
use toribord::poly::{d_z, J};
use toribord::toric::{connect_sum_unitary, connect_sum_z2, fixed_point_data_unitary,
    fixed_point_data_z2, phi_quasitoric};

pub const TORIBORD_OK: i32 = 0;
pub const TORIBORD_ERR_ARGUMENT: i32 = 1;
pub const TORIBORD_ERR_PARSE: i32 = 2;
pub const TORIBORD_ERR_DOMAIN: i32 = 3;
pub const TORIBORD_ERR_LIMIT: i32 = 4;
pub const TORIBORD_ERR_PANIC: i32 = 5;

/// Opaque simplicial complex handle.
pub struct ToribordComplex(SimplicialComplex);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(code: i32, msg: impl Into<String>) -> i32 {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
    code
}

fn guarded(body: impl FnOnce() -> i32) -> i32 {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(code) => code,
        Err(_) => fail(TORIBORD_ERR_PANIC, "internal panic"),
    }
}

/// # Safety
/// `ptr` must be a valid NUL-terminated string.
unsafe fn text_arg<'a>(ptr: *const c_char) -> Result<&'a str, i32> {
    if ptr.is_null() {
        return Err(fail(TORIBORD_ERR_ARGUMENT, "null string argument"));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| fail(TORIBORD_ERR_ARGUMENT, "string is not UTF-8"))
}

fn emit_string(text: String, out: *mut *mut c_char) -> i32 {
    if out.is_null() {
        return fail(TORIBORD_ERR_ARGUMENT, "null output pointer");
    }
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            TORIBORD_OK
        }
        Err(_) => fail(TORIBORD_ERR_PANIC, "result contained NUL"),
    }
}

fn limits(allow_large: u8) -> Limits {
    Limits {
        allow_large: allow_large != 0,
        ..Limits::default()
    }
}

fn limit_or_domain(msg: String) -> i32 {
    if msg.contains("guard") || msg.contains("large") || msg.contains("cells") {
        fail(TORIBORD_ERR_LIMIT, msg)
    } else {
        fail(TORIBORD_ERR_DOMAIN, msg)
    }
}

/// Copies the last error message for this thread into `buf` (truncated,
/// always NUL-terminated when `cap > 0`) and returns the full length.
///
/// # Safety
/// `buf` must point to at least `cap` writable bytes, or be NULL with cap 0.
#[no_mangle]
pub unsafe extern "C" fn toribord_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from a toribord function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn toribord_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// The closed-form dimension A_n as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn toribord_an(n: u32, out: *mut *mut c_char) -> i32 {
    guarded(|| {
        if n == 0 {
            return fail(TORIBORD_ERR_ARGUMENT, "n must be >= 1");
        }
        match a_n(n) {
            Ok(v) => emit_string(v.to_string(), out),
            Err(e) => fail(TORIBORD_ERR_DOMAIN, e.to_string()),
        }
    })
}

/// dim_{GF(2)} of the n-th 2-torus bordism group, computed from homology.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn toribord_z2_bordism_dim(
    n: usize,
    allow_large: u8,
    out: *mut usize,
) -> i32 {
    guarded(|| {
        if out.is_null() {
            return fail(TORIBORD_ERR_ARGUMENT, "null output pointer");
        }
        match z2_bordism_dim(n, &limits(allow_large)) {
            Ok(d) => {
                unsafe { *out = d };
                TORIBORD_OK
            }
            Err(e) => limit_or_domain(e.to_string()),
        }
    })
}

/// Builds X(Z_2^n).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn toribord_complex_new_z2(
    n: usize,
    allow_large: u8,
    out: *mut *mut ToribordComplex,
) -> i32 {
    guarded(|| {
        if out.is_null() {
            return fail(TORIBORD_ERR_ARGUMENT, "null output pointer");
        }
        match build_universal_z2_with(n, &limits(allow_large)) {
            Ok(k) => {
                unsafe { *out = Box::into_raw(Box::new(ToribordComplex(k))) };
                TORIBORD_OK
            }
            Err(e) => limit_or_domain(e.to_string()),
        }
    })
}

/// Builds the box-truncated X(Z^n; bound).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn toribord_complex_new_z(
    n: usize,
    bound: u32,
    allow_large: u8,
    out: *mut *mut ToribordComplex,
) -> i32 {
    guarded(|| {
        if out.is_null() {
            return fail(TORIBORD_ERR_ARGUMENT, "null output pointer");
        }
        match build_universal_z_truncated_with(n, bound, &limits(allow_large)) {
            Ok(k) => {
                unsafe { *out = Box::into_raw(Box::new(ToribordComplex(k))) };
                TORIBORD_OK
            }
            Err(e) => limit_or_domain(e.to_string()),
        }
    })
}

/// Releases a complex handle.
///
/// # Safety
/// `k` must come from a toribord constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn toribord_complex_free(k: *mut ToribordComplex) {
    if !k.is_null() {
        drop(unsafe { Box::from_raw(k) });
    }
}

/// Copies the f-vector into `buf` and stores the number of dimensions in
/// `written`; fails if `cap` is too small.
///
/// # Safety
/// `buf` must point to `cap` writable entries; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn toribord_complex_f_vector(
    k: *const ToribordComplex,
    buf: *mut usize,
    cap: usize,
    written: *mut usize,
) -> i32 {
    guarded(|| {
        if k.is_null() || buf.is_null() || written.is_null() {
            return fail(TORIBORD_ERR_ARGUMENT, "null pointer");
        }
        let f = unsafe { &(*k).0 }.f_vector();
        if f.len() > cap {
            return fail(TORIBORD_ERR_ARGUMENT, format!("need capacity {}", f.len()));
        }
        for (i, c) in f.iter().enumerate() {
            unsafe { *buf.add(i) = *c };
        }
        unsafe { *written = f.len() };
        TORIBORD_OK
    })
}

/// Serializes the complex in the text format used by the CLI.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn toribord_complex_to_string(
    k: *const ToribordComplex,
    out: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        if k.is_null() {
            return fail(TORIBORD_ERR_ARGUMENT, "null complex");
        }
        emit_string(io::write_complex(unsafe { &(*k).0 }), out)
    })
}

/// Reduced homology in one dimension, formatted like "H_1 = Z^13".
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn toribord_homology(
    k: *const ToribordComplex,
    dim: usize,
    out: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        if k.is_null() {
            return fail(TORIBORD_ERR_ARGUMENT, "null complex");
        }
        let k = unsafe { &(*k).0 };
        let summary = match k.ring() {
            Ring::GF2 => reduced_homology_gf2(k, dim),
            Ring::Z => reduced_homology_z(k, dim),
        };
        emit_string(summary.display(), out)
    })
}

/// Free rank of the reduced homology in one dimension.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn toribord_homology_rank(
    k: *const ToribordComplex,
    dim: usize,
    rank: *mut usize,
) -> i32 {
    guarded(|| {
        if k.is_null() || rank.is_null() {
            return fail(TORIBORD_ERR_ARGUMENT, "null pointer");
        }
        let k = unsafe { &(*k).0 };
        let r = match k.ring() {
            Ring::GF2 => reduced_homology_gf2(k, dim).rank,
            Ring::Z => reduced_homology_z(k, dim).rank,
        };
        unsafe { *rank = r };
        TORIBORD_OK
    })
}

/// Realizability of fixed-point data given as a polynomial file (side J).
/// The ring is read from the header; `bound` is ignored for GF(2) and may be
/// 0 for "no truncation" over Z. `faithful` and `realizable` receive 0/1.
///
/// # Safety
/// `text` must be NUL-terminated; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn toribord_check_poly(
    text: *const c_char,
    bound: u32,
    allow_large: u8,
    faithful: *mut u8,
    realizable: *mut u8,
) -> i32 {
    guarded(|| {
        if faithful.is_null() || realizable.is_null() {
            return fail(TORIBORD_ERR_ARGUMENT, "null output pointer");
        }
        let text = match unsafe { text_arg(text) } {
            Ok(t) => t,
            Err(code) => return code,
        };
        let lim = limits(allow_large);
        let (f, r) = if text.starts_with("POLY ring=gf2") {
            match io::read_poly_gf2::<J>(text) {
                Ok(g) => {
                    let rep = is_realizable_z2(&g, &lim);
                    (rep.faithful, rep.realizable)
                }
                Err(e) => return fail(TORIBORD_ERR_PARSE, e.to_string()),
            }
        } else if text.starts_with("POLY ring=z") {
            match io::read_poly_z::<J>(text) {
                Ok(g) => {
                    let b = if bound == 0 { None } else { Some(bound) };
                    let rep = is_realizable_unitary(&g, b, &lim);
                    (rep.faithful, rep.realizable)
                }
                Err(e) => return fail(TORIBORD_ERR_PARSE, e.to_string()),
            }
        } else {
            return fail(TORIBORD_ERR_PARSE, "not a polynomial file");
        };
        unsafe {
            *faithful = f as u8;
            *realizable = r as u8;
        }
        TORIBORD_OK
    })
}

/// Coordinates of realizable fixed-point data in the homology basis of the
/// given complex, as a space-separated decimal string.
///
/// # Safety
/// `text` must be NUL-terminated; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn toribord_class_coordinates(
    text: *const c_char,
    k: *const ToribordComplex,
    out: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        if k.is_null() {
            return fail(TORIBORD_ERR_ARGUMENT, "null complex");
        }
        let text = match unsafe { text_arg(text) } {
            Ok(t) => t,
            Err(code) => return code,
        };
        let k = unsafe { &(*k).0 };
        let coords: Vec<String> = if text.starts_with("POLY ring=gf2") {
            let g = match io::read_poly_gf2::<J>(text) {
                Ok(g) => g,
                Err(e) => return fail(TORIBORD_ERR_PARSE, e.to_string()),
            };
            match class_coordinates_z2(&g, k) {
                Ok(cs) => cs.iter().map(|c| c.to_string()).collect(),
                Err(e) => return fail(TORIBORD_ERR_DOMAIN, e.to_string()),
            }
        } else if text.starts_with("POLY ring=z") {
            let g = match io::read_poly_z::<J>(text) {
                Ok(g) => g,
                Err(e) => return fail(TORIBORD_ERR_PARSE, e.to_string()),
            };
            match class_coordinates_unitary(&g, k) {
                Ok(cs) => cs.iter().map(|c| c.to_string()).collect(),
                Err(e) => return fail(TORIBORD_ERR_DOMAIN, e.to_string()),
            }
        } else {
            return fail(TORIBORD_ERR_PARSE, "not a polynomial file");
        };
        emit_string(coords.join(" "), out)
    })
}

/// Validates a pair file (ring read from the header).
///
/// # Safety
/// `text` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn toribord_pair_validate(text: *const c_char) -> i32 {
    guarded(|| {
        let text = match unsafe { text_arg(text) } {
            Ok(t) => t,
            Err(code) => return code,
        };
        let result = if text.contains("ring=gf2") {
            io::read_pair_z2(text).map(|_| ()).map_err(|e| e.to_string())
        } else {
            io::read_pair_unitary(text).map(|_| ()).map_err(|e| e.to_string())
        };
        match result {
            Ok(()) => TORIBORD_OK,
            Err(e) => fail(TORIBORD_ERR_PARSE, e),
        }
    })
}

/// Fixed-point data (the dual polynomial) of a pair file, serialized.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn toribord_pair_dual(text: *const c_char, out: *mut *mut c_char) -> i32 {
    guarded(|| {
        let text = match unsafe { text_arg(text) } {
            Ok(t) => t,
            Err(code) => return code,
        };
        if text.contains("ring=gf2") {
            let pair = match io::read_pair_z2(text) {
                Ok(p) => p,
                Err(e) => return fail(TORIBORD_ERR_PARSE, e.to_string()),
            };
            match fixed_point_data_z2(&pair) {
                Ok(g) => emit_string(io::write_poly_gf2(&g), out),
                Err(e) => fail(TORIBORD_ERR_DOMAIN, e.to_string()),
            }
        } else {
            let pair = match io::read_pair_unitary(text) {
                Ok(p) => p,
                Err(e) => return fail(TORIBORD_ERR_PARSE, e.to_string()),
            };
            match fixed_point_data_unitary(&pair) {
                Ok(g) => emit_string(io::write_poly_z(&g), out),
                Err(e) => fail(TORIBORD_ERR_DOMAIN, e.to_string()),
            }
        }
    })
}

/// phi of a quasitoric pair file, serialized; fails if d(phi) != 0.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn toribord_pair_phi(text: *const c_char, out: *mut *mut c_char) -> i32 {
    guarded(|| {
        let text = match unsafe { text_arg(text) } {
            Ok(t) => t,
            Err(code) => return code,
        };
        let pair = match io::read_pair_unitary(text) {
            Ok(p) => p,
            Err(e) => return fail(TORIBORD_ERR_PARSE, e.to_string()),
        };
        let phi = match phi_quasitoric(&pair) {
            Ok(p) => p,
            Err(e) => return fail(TORIBORD_ERR_DOMAIN, e.to_string()),
        };
        match d_z(&phi) {
            Ok(r) if r.is_zero() => emit_string(io::write_poly_z(&phi), out),
            Ok(_) => fail(TORIBORD_ERR_DOMAIN, "d(phi) is nonzero"),
            Err(e) => fail(TORIBORD_ERR_DOMAIN, e.to_string()),
        }
    })
}

/// Connected sum of two pair files (same ring) at vertices `v1`, `v2`; the
/// glued pair is serialized into `out`.
///
/// # Safety
/// Texts must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn toribord_connect_sum(
    text1: *const c_char,
    v1: usize,
    text2: *const c_char,
    v2: usize,
    out: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let t1 = match unsafe { text_arg(text1) } {
            Ok(t) => t,
            Err(code) => return code,
        };
        let t2 = match unsafe { text_arg(text2) } {
            Ok(t) => t,
            Err(code) => return code,
        };
        let gf2_1 = t1.contains("ring=gf2");
        if gf2_1 != t2.contains("ring=gf2") {
            return fail(TORIBORD_ERR_ARGUMENT, "pair files use different rings");
        }
        if gf2_1 {
            let p1 = match io::read_pair_z2(t1) {
                Ok(p) => p,
                Err(e) => return fail(TORIBORD_ERR_PARSE, e.to_string()),
            };
            let p2 = match io::read_pair_z2(t2) {
                Ok(p) => p,
                Err(e) => return fail(TORIBORD_ERR_PARSE, e.to_string()),
            };
            match connect_sum_z2(&p1, v1, &p2, v2) {
                Ok(g) => emit_string(io::write_pair_z2(&g), out),
                Err(e) => fail(TORIBORD_ERR_DOMAIN, e.to_string()),
            }
        } else {
            let p1 = match io::read_pair_unitary(t1) {
                Ok(p) => p,
                Err(e) => return fail(TORIBORD_ERR_PARSE, e.to_string()),
            };
            let p2 = match io::read_pair_unitary(t2) {
                Ok(p) => p,
                Err(e) => return fail(TORIBORD_ERR_PARSE, e.to_string()),
            };
            match connect_sum_unitary(&p1, v1, &p2, v2) {
                Ok(g) => emit_string(io::write_pair_unitary(&g), out),
                Err(e) => fail(TORIBORD_ERR_DOMAIN, e.to_string()),
            }
        }
    })
}
