//! C ABI over the galoisph library.
//!
//! Every object crosses the boundary as an opaque pointer created by a
//! `gph_*_parse` / `gph_*_compute` constructor and released by the matching
//! `gph_*_free`. Functions that can fail either return null or a nonzero
//! status code; the message behind the most recent failure on the current
//! thread is available through [`gph_last_error`]. Returned strings are owned
//! by the caller and must be released with [`gph_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::ToPrimitive;

use galoisph::diagram::{
    diagram_of, equivalent, rank_diagram_direct, render_diagram, Diagram, Route,
};
use galoisph::homology::{parse_filtration, persistence_module, Filtration};
use galoisph::linalg::PrimeField;
use galoisph::matching::bottleneck_distance;
use galoisph::mobius::{mobius_invert, parse_intfn, render_intfn, zeta_transform};
use galoisph::pmod::{parse_module, render_module, PersistenceModule};
use galoisph::poset::{parse_poset, render_poset, PosetRef};
use galoisph::rat::ExtRat;
use galoisph::{Error, Result};

/// Success.
pub const GPH_OK: i32 = 0;
/// A required pointer was null or a string was not valid UTF-8.
pub const GPH_ERR_ARGUMENT: i32 = 1;
/// The input text failed to parse.
pub const GPH_ERR_PARSE: i32 = 2;
/// The input parsed but violated a structural invariant.
pub const GPH_ERR_VALIDATION: i32 = 3;
/// A diagram carried negative mass where a barcode was required.
pub const GPH_ERR_NEGATIVE: i32 = 4;
/// A numeric result did not fit the requested machine type.
pub const GPH_ERR_OVERFLOW: i32 = 8;
/// An internal invariant failed; the library state is still consistent.
pub const GPH_ERR_PANIC: i32 = 9;

/// Compute diagrams through nullities of the structure maps.
pub const GPH_ROUTE_KERNEL: i32 = 0;
/// Compute diagrams through a free presentation.
pub const GPH_ROUTE_PRESENTATION: i32 = 1;

/// Mobius inversion: recover a derivative from cumulative values.
pub const GPH_DIRECTION_INVERT: i32 = 0;
/// Zeta transform: accumulate a derivative back to cumulative values.
pub const GPH_DIRECTION_ZETA: i32 = 1;

/// A finite partially ordered set.
pub struct GphPoset(PosetRef);

/// A graded simplicial complex over one or two parameters.
pub struct GphFiltration(Filtration);

/// A persistence module: dimensions and structure maps over a poset.
pub struct GphModule(PersistenceModule);

/// A persistence diagram: signed multiplicities over interval pairs.
pub struct GphDiagram(Diagram);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn remember(message: String) {
    let stored = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

enum FfiError {
    /// A caller-side problem: null handle, bad UTF-8, unknown constant.
    Argument(String),
    Lib(Error),
}

impl From<Error> for FfiError {
    fn from(e: Error) -> FfiError {
        FfiError::Lib(e)
    }
}

type FfiResult<T> = std::result::Result<T, FfiError>;

fn fail(e: &FfiError) -> i32 {
    match e {
        FfiError::Argument(message) => {
            remember(message.clone());
            GPH_ERR_ARGUMENT
        }
        FfiError::Lib(e) => {
            remember(e.to_string());
            match e {
                Error::Parse { .. } | Error::Io(_) => GPH_ERR_PARSE,
                Error::NegativeDiagram(..) => GPH_ERR_NEGATIVE,
                _ => GPH_ERR_VALIDATION,
            }
        }
    }
}

/// Run a body with a panic net: a panic is recorded like any other failure.
fn guarded<T>(fallback: T, body: impl FnOnce() -> T) -> T {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(v) => v,
        Err(_) => {
            remember("internal panic".into());
            fallback
        }
    }
}

/// Null-checked, UTF-8-checked view of a C string.
///
/// # Safety
/// `ptr` must be null or point to a NUL-terminated string.
unsafe fn text_in<'a>(ptr: *const c_char) -> FfiResult<&'a str> {
    if ptr.is_null() {
        return Err(FfiError::Argument("null string argument".into()));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| FfiError::Argument("string argument is not UTF-8".into()))
}

fn text_out(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => {
            remember("rendered text contained a NUL byte".into());
            std::ptr::null_mut()
        }
    }
}

fn handle_out<H>(wrap: impl FnOnce() -> FfiResult<H>) -> *mut H {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        match wrap() {
            Ok(h) => Box::into_raw(Box::new(h)),
            Err(e) => {
                fail(&e);
                std::ptr::null_mut()
            }
        }
    })
}

unsafe fn borrow<'a, H>(ptr: *const H, what: &str) -> FfiResult<&'a H> {
    if ptr.is_null() {
        return Err(FfiError::Argument(format!("null {what} handle")));
    }
    Ok(unsafe { &*ptr })
}

fn field_of(p: u64) -> Result<PrimeField> {
    PrimeField::new(p)
}

/// The library version as a static string; do not free it.
#[no_mangle]
pub extern "C" fn gph_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// The message behind the most recent failure on this thread, or null when
/// the last call succeeded. The caller owns the returned string.
#[no_mangle]
pub extern "C" fn gph_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `ptr` must be null or a pointer previously returned by a `gph_*` function
/// that hands ownership to the caller, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gph_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(unsafe { CString::from_raw(ptr) });
    }
}

/// Parse a poset from its text form (`elt` and `le` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gph_poset_parse(text: *const c_char) -> *mut GphPoset {
    handle_out(|| Ok(GphPoset(parse_poset(unsafe { text_in(text) }?)?)))
}

/// Number of elements, or -1 on a null handle.
///
/// # Safety
/// `poset` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gph_poset_len(poset: *const GphPoset) -> i64 {
    guarded(-1, || {
        clear_error();
        match unsafe { borrow(poset, "poset") } {
            Ok(p) => p.0.len() as i64,
            Err(e) => {
                fail(&e);
                -1
            }
        }
    })
}

/// Render a poset back to its text form. The caller owns the string.
///
/// # Safety
/// `poset` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gph_poset_render(poset: *const GphPoset) -> *mut c_char {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        match unsafe { borrow(poset, "poset") } {
            Ok(p) => text_out(render_poset(&p.0)),
            Err(e) => {
                fail(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Release a poset handle.
///
/// # Safety
/// `poset` must be null or a live handle, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gph_poset_free(poset: *mut GphPoset) {
    if !poset.is_null() {
        drop(unsafe { Box::from_raw(poset) });
    }
}

/// Parse a filtration from its text form (`params`, `grid`, `s` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gph_filtration_parse(text: *const c_char) -> *mut GphFiltration {
    handle_out(|| Ok(GphFiltration(parse_filtration(unsafe { text_in(text) }?)?)))
}

/// Release a filtration handle.
///
/// # Safety
/// `filtration` must be null or a live handle, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gph_filtration_free(filtration: *mut GphFiltration) {
    if !filtration.is_null() {
        drop(unsafe { Box::from_raw(filtration) });
    }
}

/// Degree-`dim` homology of a filtration over F_field, as a new module handle.
///
/// # Safety
/// `filtration` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gph_homology_module(
    filtration: *const GphFiltration,
    dim: u32,
    field: u64,
) -> *mut GphModule {
    handle_out(|| {
        let f = unsafe { borrow(filtration, "filtration") }?;
        Ok(GphModule(persistence_module(
            &f.0,
            dim as usize,
            field_of(field)?,
        )?))
    })
}

/// Parse a module (`dim` and `map` lines) over a poset and field.
///
/// # Safety
/// `text` must be a NUL-terminated string and `poset` a live handle.
#[no_mangle]
pub unsafe extern "C" fn gph_module_parse(
    text: *const c_char,
    poset: *const GphPoset,
    field: u64,
) -> *mut GphModule {
    handle_out(|| {
        let p = unsafe { borrow(poset, "poset") }?;
        Ok(GphModule(parse_module(
            unsafe { text_in(text) }?,
            &p.0,
            field_of(field)?,
        )?))
    })
}

/// Render a module back to its text form. The caller owns the string.
///
/// # Safety
/// `module` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gph_module_render(module: *const GphModule) -> *mut c_char {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        match unsafe { borrow(module, "module") } {
            Ok(m) => text_out(render_module(&m.0)),
            Err(e) => {
                fail(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Dimension of the space at the named element, or -1 on failure.
///
/// # Safety
/// `module` must be a live handle and `element` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gph_module_dim(
    module: *const GphModule,
    element: *const c_char,
) -> i64 {
    guarded(-1, || {
        clear_error();
        let looked = (|| -> FfiResult<i64> {
            let m = unsafe { borrow(module, "module") }?;
            let id = unsafe { text_in(element) }?;
            let i = m.0.base().idx(id)?;
            Ok(m.0.dim(i) as i64)
        })();
        match looked {
            Ok(d) => d,
            Err(e) => {
                fail(&e);
                -1
            }
        }
    })
}

/// Release a module handle.
///
/// # Safety
/// `module` must be null or a live handle, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gph_module_free(module: *mut GphModule) {
    if !module.is_null() {
        drop(unsafe { Box::from_raw(module) });
    }
}

/// The persistence diagram of a module along the requested route
/// (`GPH_ROUTE_KERNEL` or `GPH_ROUTE_PRESENTATION`).
///
/// # Safety
/// `module` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gph_diagram_compute(
    module: *const GphModule,
    route: i32,
) -> *mut GphDiagram {
    handle_out(|| {
        let m = unsafe { borrow(module, "module") }?;
        let route = match route {
            GPH_ROUTE_KERNEL => Route::Kernel,
            GPH_ROUTE_PRESENTATION => Route::Presentation,
            other => {
                return Err(FfiError::Argument(format!("unknown route {other}")));
            }
        };
        Ok(GphDiagram(diagram_of(&m.0, route)))
    })
}

/// The rank diagram of a module, over the reversed-containment interval order.
///
/// # Safety
/// `module` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gph_rank_diagram(module: *const GphModule) -> *mut GphDiagram {
    handle_out(|| {
        let m = unsafe { borrow(module, "module") }?;
        Ok(GphDiagram(rank_diagram_direct(&m.0)))
    })
}

/// Render a diagram to its text form; `poset_ref` fills the `poset` line.
/// The caller owns the string.
///
/// # Safety
/// `diagram` must be a live handle and `poset_ref` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gph_diagram_render(
    diagram: *const GphDiagram,
    poset_ref: *const c_char,
) -> *mut c_char {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        let rendered = (|| -> FfiResult<String> {
            let d = unsafe { borrow(diagram, "diagram") }?;
            let name = unsafe { text_in(poset_ref) }?;
            Ok(render_diagram(&d.0, name))
        })();
        match rendered {
            Ok(s) => text_out(s),
            Err(e) => {
                fail(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Sum of canonical multiplicities, or -1 on failure or overflow.
///
/// # Safety
/// `diagram` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gph_diagram_total_mass(diagram: *const GphDiagram) -> i64 {
    guarded(-1, || {
        clear_error();
        match unsafe { borrow(diagram, "diagram") } {
            Ok(d) => match d.0.total_mass().to_i64() {
                Some(v) => v,
                None => {
                    remember("total mass does not fit in 64 bits".into());
                    -1
                }
            },
            Err(e) => {
                fail(&e);
                -1
            }
        }
    })
}

/// Whether two diagrams are equivalent (equal canonical representatives):
/// 1 yes, 0 no, negative on failure.
///
/// # Safety
/// Both arguments must be live handles from this library.
#[no_mangle]
pub unsafe extern "C" fn gph_diagram_equivalent(
    left: *const GphDiagram,
    right: *const GphDiagram,
) -> i32 {
    guarded(-GPH_ERR_PANIC, || {
        clear_error();
        let verdict = (|| -> FfiResult<bool> {
            let l = unsafe { borrow(left, "diagram") }?;
            let r = unsafe { borrow(right, "diagram") }?;
            Ok(equivalent(&l.0, &r.0)?)
        })();
        match verdict {
            Ok(true) => 1,
            Ok(false) => 0,
            Err(e) => -fail(&e),
        }
    })
}

/// Release a diagram handle.
///
/// # Safety
/// `diagram` must be null or a live handle, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gph_diagram_free(diagram: *mut GphDiagram) {
    if !diagram.is_null() {
        drop(unsafe { Box::from_raw(diagram) });
    }
}

/// Bottleneck distance between two barcode diagrams. On success writes the
/// value as `numerator/denominator` (or sets `infinite`) and returns GPH_OK.
///
/// # Safety
/// The diagram arguments must be live handles; the out parameters must be
/// null or valid destinations.
#[no_mangle]
pub unsafe extern "C" fn gph_bottleneck(
    left: *const GphDiagram,
    right: *const GphDiagram,
    numerator: *mut i64,
    denominator: *mut i64,
    infinite: *mut u8,
) -> i32 {
    guarded(GPH_ERR_PANIC, || {
        clear_error();
        let computed = (|| -> FfiResult<ExtRat> {
            let l = unsafe { borrow(left, "diagram") }?;
            let r = unsafe { borrow(right, "diagram") }?;
            Ok(bottleneck_distance(&l.0, &r.0)?.0)
        })();
        let value = match computed {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        let (num, den, inf) = match value {
            ExtRat::Infinity => (0, 1, 1),
            ExtRat::Finite(q) => match (q.numer().to_i64(), q.denom().to_i64()) {
                (Some(n), Some(d)) => (n, d, 0),
                _ => {
                    remember("distance does not fit in 64-bit numerator/denominator".into());
                    return GPH_ERR_OVERFLOW;
                }
            },
        };
        unsafe {
            if !numerator.is_null() {
                *numerator = num;
            }
            if !denominator.is_null() {
                *denominator = den;
            }
            if !infinite.is_null() {
                *infinite = inf;
            }
        }
        GPH_OK
    })
}

/// Mobius-invert or zeta-transform an integer function given as text
/// (`element value` lines) over a poset. The caller owns the result string.
///
/// # Safety
/// `poset` must be a live handle and `text` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gph_mobius_transform(
    poset: *const GphPoset,
    text: *const c_char,
    direction: i32,
) -> *mut c_char {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        let transformed = (|| -> FfiResult<String> {
            let p = unsafe { borrow(poset, "poset") }?;
            let f = parse_intfn(unsafe { text_in(text) }?, &p.0)?;
            let out = match direction {
                GPH_DIRECTION_INVERT => mobius_invert(&f),
                GPH_DIRECTION_ZETA => zeta_transform(&f),
                other => {
                    return Err(FfiError::Argument(format!("unknown direction {other}")));
                }
            };
            Ok(render_intfn(&out))
        })();
        match transformed {
            Ok(s) => text_out(s),
            Err(e) => {
                fail(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Run the randomized self-test suites. Returns GPH_OK when every suite
/// passes, GPH_ERR_VALIDATION for a bad field, and 7 on suite failure.
#[no_mangle]
pub extern "C" fn gph_selftest(seed: u64, iters: u64, field: u64) -> i32 {
    guarded(GPH_ERR_PANIC, || {
        clear_error();
        let f = match field_of(field) {
            Ok(f) => f,
            Err(e) => return fail(&e.into()),
        };
        let report = galoisph::selftest::run(seed, iters as usize, f);
        if report.passed() {
            GPH_OK
        } else {
            remember(report.text());
            7
        }
    })
}

/// The full self-test report. The caller owns the string.
#[no_mangle]
pub extern "C" fn gph_selftest_report(seed: u64, iters: u64, field: u64) -> *mut c_char {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        match field_of(field) {
            Ok(f) => text_out(galoisph::selftest::run(seed, iters as usize, f).text()),
            Err(e) => {
                fail(&e.into());
                std::ptr::null_mut()
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(text: &str) -> CString {
        CString::new(text).unwrap()
    }

    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
        unsafe { gph_string_free(ptr) };
        s
    }

    const SQUARE: &str = "params 1\ngrid 0 0 1 2 3 4 5\n\
        s 1 @ 0\ns 2 @ 0\ns 3 @ 1\ns 4 @ 1\n\
        s 1 2 @ 2\ns 2 3 @ 2\ns 3 4 @ 2\ns 1 4 @ 2\n\
        s 1 3 @ 5\ns 1 2 3 @ 5\ns 1 3 4 @ 5\n";

    #[test]
    fn homology_pipeline_round_trips() {
        unsafe {
            let filtration = gph_filtration_parse(c(SQUARE).as_ptr());
            assert!(!filtration.is_null());
            let module = gph_homology_module(filtration, 1, 2);
            assert!(!module.is_null());
            let kernel = gph_diagram_compute(module, GPH_ROUTE_KERNEL);
            let pres = gph_diagram_compute(module, GPH_ROUTE_PRESENTATION);
            assert_eq!(gph_diagram_equivalent(kernel, pres), 1);
            assert_eq!(gph_diagram_total_mass(kernel), 1);
            let text = take_string(gph_diagram_render(kernel, c("-").as_ptr()));
            assert!(text.contains("2 5 1"), "{text}");
            gph_diagram_free(kernel);
            gph_diagram_free(pres);
            gph_module_free(module);
            gph_filtration_free(filtration);
        }
    }

    #[test]
    fn bottleneck_reports_five_halves() {
        unsafe {
            let poset = gph_poset_parse(c("elt 0 0\nelt 3 3\nelt 5 5\nle 0 3\nle 3 5\n").as_ptr());
            let module = |text: &str| gph_module_parse(c(text).as_ptr(), poset, 2);
            // One class alive on [0, 5), one alive on [3, 5): the cheapest
            // matching retires both to the diagonal at cost 5/2.
            let m1 = module("dim 0 1\ndim 3 1\ndim 5 0\nmap 0 3 1\nmap 3 5\n");
            let m2 = module("dim 0 0\ndim 3 1\ndim 5 0\nmap 0 3\nmap 3 5\n");
            let d1 = gph_diagram_compute(m1, GPH_ROUTE_KERNEL);
            let d2 = gph_diagram_compute(m2, GPH_ROUTE_KERNEL);
            let (mut num, mut den, mut inf) = (0i64, 0i64, 2u8);
            let status = gph_bottleneck(d1, d2, &mut num, &mut den, &mut inf);
            assert_eq!(status, GPH_OK);
            assert_eq!((num, den, inf), (5, 2, 0));
            gph_diagram_free(d1);
            gph_diagram_free(d2);
            gph_module_free(m1);
            gph_module_free(m2);
            gph_poset_free(poset);
        }
    }

    #[test]
    fn errors_surface_through_last_error() {
        unsafe {
            let bad = gph_poset_parse(c("nonsense\n").as_ptr());
            assert!(bad.is_null());
            let message = take_string(gph_last_error());
            assert!(!message.is_empty());

            let ok = gph_poset_parse(c("elt x\n").as_ptr());
            assert!(!ok.is_null());
            assert!(gph_last_error().is_null(), "success clears the error");
            assert_eq!(gph_poset_len(ok), 1);
            gph_poset_free(ok);

            assert_eq!(gph_poset_len(std::ptr::null()), -1);
            let message = take_string(gph_last_error());
            assert!(message.contains("null"));

            let mut num = 0i64;
            let mut den = 0i64;
            let mut infinite = 0u8;
            let status = gph_bottleneck(
                std::ptr::null(),
                std::ptr::null(),
                &mut num,
                &mut den,
                &mut infinite,
            );
            assert_eq!(status, GPH_ERR_ARGUMENT);
        }
    }

    #[test]
    fn mobius_text_transforms_invert_each_other() {
        unsafe {
            let poset =
                gph_poset_parse(c("elt a\nelt b\nelt c\nelt d\nle a b\nle b c\nle b d\n").as_ptr());
            let derived = take_string(gph_mobius_transform(
                poset,
                c("a 1\nb 2\nc 4\nd 0\n").as_ptr(),
                GPH_DIRECTION_INVERT,
            ));
            assert_eq!(derived, "a 1\nb 1\nc 2\nd -2\n");
            let restored = take_string(gph_mobius_transform(
                poset,
                c(&derived).as_ptr(),
                GPH_DIRECTION_ZETA,
            ));
            assert_eq!(restored, "a 1\nb 2\nc 4\nd 0\n");
            gph_poset_free(poset);
        }
    }

    #[test]
    fn selftest_passes_and_rejects_bad_fields() {
        assert_eq!(gph_selftest(0, 5, 2), GPH_OK);
        assert_eq!(gph_selftest(0, 5, 6), GPH_ERR_VALIDATION);
        unsafe {
            let report = take_string(gph_selftest_report(0, 5, 3));
            assert!(report.contains("selftest: PASS"), "{report}");
        }
    }

    #[test]
    fn frees_tolerate_null() {
        unsafe {
            gph_poset_free(std::ptr::null_mut());
            gph_filtration_free(std::ptr::null_mut());
            gph_module_free(std::ptr::null_mut());
            gph_diagram_free(std::ptr::null_mut());
            gph_string_free(std::ptr::null_mut());
        }
    }

    #[test]
    fn header_is_generated_with_the_full_surface() {
        let header = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/include/galoisph.h"));
        for symbol in [
            "GPH_OK",
            "GPH_ERR_NEGATIVE",
            "typedef struct GphPoset GphPoset;",
            "gph_filtration_parse",
            "gph_homology_module",
            "gph_diagram_compute",
            "gph_bottleneck",
            "gph_selftest_report",
            "gph_string_free",
            "gph_last_error",
        ] {
            assert!(header.contains(symbol), "header lacks {symbol}");
        }
    }
}
