//! C ABI over the symbreak library.
//!
//! Graphs and colorings are opaque handles released with their `_free`
//! functions. Every fallible call returns a [`SymbreakStatus`]; on failure
//! [`symbreak_last_error`] describes the error for the calling thread.
//! Strings returned through out-parameters are owned by the caller and
//! released with [`symbreak_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use symbreak::coloring::{
    dsc_coloring, dsc_coloring_relaxed, motion_growth_coloring_with, random_coloring, verify_distinguishing_with,
    Coloring, Strategy, VerifyOptions,
};
use symbreak::config::RunConfig;
use symbreak::{Error, FamilySpec, GraphHandle, VertexId};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbreakStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Argument = 3,
    Identifier = 4,
    BudgetExceeded = 5,
    CapExceeded = 6,
    Precondition = 7,
    WitnessExhausted = 8,
    AnchorNotFound = 9,
    Structure = 10,
    BeyondRadius = 11,
    Schedule = 12,
    Io = 13,
    Json = 14,
    Config = 15,
    Unsupported = 16,
    Panic = 17,
}

/// An infinite graph given by its neighbor oracle.
pub struct SymbreakGraph {
    inner: GraphHandle,
}

/// A coloring of a ball in a graph.
pub struct SymbreakColoring {
    inner: Coloring,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SymbreakStatus {
    match e {
        Error::Identifier { .. } => SymbreakStatus::Identifier,
        Error::Argument(_) => SymbreakStatus::Argument,
        Error::BudgetExceeded { .. } => SymbreakStatus::BudgetExceeded,
        Error::CapExceeded { .. } => SymbreakStatus::CapExceeded,
        Error::AnchorNotFound { .. } => SymbreakStatus::AnchorNotFound,
        Error::WitnessExhausted { .. } => SymbreakStatus::WitnessExhausted,
        Error::Precondition(_) => SymbreakStatus::Precondition,
        Error::Structure(_) => SymbreakStatus::Structure,
        Error::Schedule(_) => SymbreakStatus::Schedule,
        Error::BeyondRadius { .. } => SymbreakStatus::BeyondRadius,
        Error::Unsupported(_) => SymbreakStatus::Unsupported,
        Error::Io { .. } => SymbreakStatus::Io,
        Error::Json(_) => SymbreakStatus::Json,
        Error::Config(_) => SymbreakStatus::Config,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Utf8(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SymbreakStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SymbreakStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is NULL"));
            SymbreakStatus::NullPointer
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_error(format!("{what} is not valid UTF-8"));
            SymbreakStatus::InvalidUtf8
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_error(format!("internal panic: {msg}"));
            SymbreakStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn graph<'a>(g: *const SymbreakGraph) -> Result<&'a GraphHandle, Failure> {
    g.as_ref().map(|g| &g.inner).ok_or(Failure::Null("graph"))
}

unsafe fn root_of(g: &GraphHandle, root: *const c_char) -> Result<VertexId, Failure> {
    let v = if root.is_null() {
        g.default_root().ok_or_else(|| Error::Config(format!("family {} has no default root", g.family())))?
    } else {
        VertexId::new(text(root, "root")?)
    };
    g.neighbors(&v)?;
    Ok(v)
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes replaced").into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn symbreak_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn symbreak_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Sets the process-wide cap on vertices materialized by one ball.
#[no_mangle]
pub extern "C" fn symbreak_set_vertex_budget(budget: usize) {
    symbreak::graph::set_vertex_budget(budget);
}

/// Builds a graph from a family description: either the compact form
/// (`regular_tree(3)`, `cartesian_product(biinfinite_path,grid2d)`) or
/// key=value assignments (`family=regular_tree d=3`).
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symbreak_graph_new(spec: *const c_char, out_graph: *mut *mut SymbreakGraph) -> SymbreakStatus {
    guard(|| {
        let spec = text(spec, "spec")?;
        let slot = out(out_graph, "out_graph")?;
        let family = if spec.contains('=') {
            let mut c = RunConfig::default();
            c.merge_str(spec)?;
            c.family_spec()?
        } else {
            spec.parse::<FamilySpec>()?
        };
        *slot = Box::into_raw(Box::new(SymbreakGraph { inner: family.build()? }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from [`symbreak_graph_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn symbreak_graph_free(g: *mut SymbreakGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// The canonical family string of a graph.
///
/// # Safety
/// Pointers must be valid; the string is released with [`symbreak_string_free`].
#[no_mangle]
pub unsafe extern "C" fn symbreak_graph_family(g: *const SymbreakGraph, out_family: *mut *mut c_char) -> SymbreakStatus {
    guard(|| {
        let g = graph(g)?;
        *out(out_family, "out_family")? = owned(g.family());
        Ok(())
    })
}

/// `|B_root(radius)|`. A NULL root means the family's canonical root.
///
/// # Safety
/// Pointers must be valid; `root` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn symbreak_ball_size(
    g: *const SymbreakGraph,
    root: *const c_char,
    radius: usize,
    out_size: *mut usize,
) -> SymbreakStatus {
    guard(|| {
        let g = graph(g)?;
        let slot = out(out_size, "out_size")?;
        let v = root_of(g, root)?;
        *slot = symbreak::ball(&**g, &v, radius)?.len();
        Ok(())
    })
}

/// Checks the distinct-spheres condition for all equidistant pairs within
/// `r_pairs` of the root, with witnesses up to `radius`. Writes whether all
/// pairs are witnessed and, if `out_json` is not NULL, the full report.
///
/// # Safety
/// Pointers must be valid; `root` and `out_json` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn symbreak_check_dsc(
    g: *const SymbreakGraph,
    root: *const c_char,
    r_pairs: usize,
    radius: usize,
    out_all_witnessed: *mut bool,
    out_json: *mut *mut c_char,
) -> SymbreakStatus {
    guard(|| {
        let g = graph(g)?;
        let slot = out(out_all_witnessed, "out_all_witnessed")?;
        let v = root_of(g, root)?;
        let report = symbreak::dsc::check_dsc(&**g, &v, r_pairs, radius)?;
        if !out_json.is_null() {
            *out_json = owned(serde_json::to_string_pretty(&report).map_err(Error::from)?);
        }
        *slot = report.all_witnessed();
        Ok(())
    })
}

/// Builds a coloring of `B_root(radius)`. `options` holds key=value
/// assignments as in a run config: `strategy`, `radius`, `r_pairs`, `gap`,
/// `epsilon`, `margin`, `schedule`, `seed`. NULL means all defaults.
///
/// # Safety
/// Pointers must be valid; `root` and `options` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn symbreak_color(
    g: *const SymbreakGraph,
    root: *const c_char,
    options: *const c_char,
    out_coloring: *mut *mut SymbreakColoring,
) -> SymbreakStatus {
    guard(|| {
        let g = graph(g)?;
        let slot = out(out_coloring, "out_coloring")?;
        let v = root_of(g, root)?;
        let mut c = RunConfig::default();
        if !options.is_null() {
            c.merge_str(text(options, "options")?)?;
        }
        c.validate()?;
        let col = match c.strategy {
            Strategy::Dsc => dsc_coloring(g, &v, c.r_pairs, c.radius)?,
            Strategy::DscRelaxed => dsc_coloring_relaxed(g, &v, c.r_pairs, c.radius, c.gap)?,
            Strategy::Random => random_coloring(g, &v, c.radius, &c.random_schedule()?)?,
            Strategy::MotionGrowth => motion_growth_coloring_with(g, &v, c.epsilon, c.radius, c.margin)?,
            Strategy::Explicit => return Err(Error::Config("explicit colorings are loaded from JSON".into()).into()),
        };
        *slot = Box::into_raw(Box::new(SymbreakColoring { inner: col }));
        Ok(())
    })
}

/// Reads a coloring from its JSON form.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn symbreak_coloring_from_json(
    json: *const c_char,
    out_coloring: *mut *mut SymbreakColoring,
) -> SymbreakStatus {
    guard(|| {
        let json = text(json, "json")?;
        let slot = out(out_coloring, "out_coloring")?;
        *slot = Box::into_raw(Box::new(SymbreakColoring { inner: Coloring::from_json(json)? }));
        Ok(())
    })
}

/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn symbreak_coloring_free(c: *mut SymbreakColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of blue vertices.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn symbreak_coloring_blue_count(c: *const SymbreakColoring, out_count: *mut usize) -> SymbreakStatus {
    guard(|| {
        let c = c.as_ref().ok_or(Failure::Null("coloring"))?;
        *out(out_count, "out_count")? = c.inner.blue_count();
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid; the string is released with [`symbreak_string_free`].
#[no_mangle]
pub unsafe extern "C" fn symbreak_coloring_to_json(c: *const SymbreakColoring, out_json: *mut *mut c_char) -> SymbreakStatus {
    guard(|| {
        let c = c.as_ref().ok_or(Failure::Null("coloring"))?;
        let slot = out(out_json, "out_json")?;
        *slot = owned(c.inner.to_json()?);
        Ok(())
    })
}

/// Checks that no color-preserving automorphism of `B_root(r_outer)` moves
/// a vertex of `B_root(r_inner)`. Requires `r_inner + 4 <= r_outer`.
///
/// # Safety
/// Pointers must be valid; `out_json` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn symbreak_verify(
    c: *const SymbreakColoring,
    r_outer: usize,
    r_inner: usize,
    out_pass: *mut bool,
    out_json: *mut *mut c_char,
) -> SymbreakStatus {
    guard(|| {
        let c = c.as_ref().ok_or(Failure::Null("coloring"))?;
        let slot = out(out_pass, "out_pass")?;
        let report = verify_distinguishing_with(&c.inner, r_outer, r_inner, &VerifyOptions::default())?;
        if !out_json.is_null() {
            *out_json = owned(serde_json::to_string_pretty(&report).map_err(Error::from)?);
        }
        *slot = report.pass;
        Ok(())
    })
}

/// Length of the longest subgroup chain in `Sym(n)`, for `n >= 1`.
///
/// # Safety
/// `out_length` must be valid.
#[no_mangle]
pub unsafe extern "C" fn symbreak_chain_length_bound(n: usize, out_length: *mut usize) -> SymbreakStatus {
    guard(|| {
        let slot = out(out_length, "out_length")?;
        *slot = symbreak::automorphism::chain_length_bound(n)?;
        Ok(())
    })
}
