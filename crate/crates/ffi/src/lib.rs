//! C ABI over the `mbqc` library.
//!
//! Circuits and patterns live behind opaque handles created by the parse
//! and transform functions and released with the matching `_free`. Every
//! fallible call returns an [`MbqcStatus`]; on failure a message for the
//! calling thread is available from [`mbqc_last_error`]. Strings returned to
//! the caller are released with [`mbqc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mbqc::artifact::Artifact;
use mbqc::depth::quantum_depth;
use mbqc::flow::{characterized_depth, find_flow};
use mbqc::rewrite::{pauli_simplify, signal_shift, standardize};
use mbqc::sim::{equiv_up_to_phase, SimAngles};
use mbqc::text::{
    parse_circuit_file, parse_pattern_file, serialize_circuit_file, serialize_pattern_file,
    CircuitFile, PatternFile,
};
use mbqc::translate::{
    circuit_to_pattern, parallelize_circuit, pattern_to_circuit, FanInMode, Variant,
};
use mbqc::Error;

/// Result of an FFI call. `Ok` is zero; everything else is an error.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbqcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidPattern = 4,
    NoFlow = 5,
    NotStandard = 6,
    NotShifted = 7,
    WrongDialect = 8,
    Resource = 9,
    Simulation = 10,
    Unsupported = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbqcVariant {
    Direct = 0,
    Cluster = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbqcFanIn {
    Linear = 0,
    Tree = 1,
}

/// Opaque circuit handle.
pub struct MbqcCircuit(CircuitFile);

/// Opaque pattern handle.
pub struct MbqcPattern(PatternFile);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> MbqcStatus {
    match e {
        Error::Parse(_) => MbqcStatus::Parse,
        Error::Invalid(_) | Error::MissingAngle(_) | Error::NotFlowForm(_) => {
            MbqcStatus::InvalidPattern
        }
        Error::NoFlow | Error::UnequalInputOutput { .. } => MbqcStatus::NoFlow,
        Error::NotStandard => MbqcStatus::NotStandard,
        Error::NotShifted => MbqcStatus::NotShifted,
        Error::Dialect { .. } => MbqcStatus::WrongDialect,
        Error::Resource(_) => MbqcStatus::Resource,
        Error::Sim(_) => MbqcStatus::Simulation,
        Error::NonPauliWord(_) | Error::Unsupported(_) => MbqcStatus::Unsupported,
    }
}

struct Failure(MbqcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MbqcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any error or panic for [`mbqc_last_error`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MbqcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            MbqcStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            MbqcStatus::Panic
        }
    }
}

/// # Safety
/// `text` is null or a NUL-terminated string valid for the call.
unsafe fn read_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| Failure(MbqcStatus::InvalidUtf8, format!("{what}: {e}")))
}

/// # Safety
/// `p` is null or points to a live handle.
unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` is null or writable.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn mbqc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mbqc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses circuit text into a new handle.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_circuit_parse(
    text: *const c_char,
    out: *mut *mut MbqcCircuit,
) -> MbqcStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let file = parse_circuit_file(text).map_err(Error::from)?;
        put(out, Box::into_raw(Box::new(MbqcCircuit(file))))
    })
}

/// # Safety
/// `c` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mbqc_circuit_free(c: *mut MbqcCircuit) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Circuit text; release it with [`mbqc_string_free`]. Null on a null handle.
///
/// # Safety
/// `c` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mbqc_circuit_serialize(c: *const MbqcCircuit) -> *mut c_char {
    match c.as_ref() {
        Some(c) => into_c_string(serialize_circuit_file(&c.0)),
        None => ptr::null_mut(),
    }
}

/// Number of wires.
///
/// # Safety
/// `c` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_circuit_wires(c: *const MbqcCircuit, out: *mut u32) -> MbqcStatus {
    guard(|| put(out, borrow(c, "circuit")?.0.circuit.n))
}

/// Depth under one-interaction-per-wire scheduling.
///
/// # Safety
/// `c` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_circuit_depth(c: *const MbqcCircuit, out: *mut usize) -> MbqcStatus {
    guard(|| put(out, borrow(c, "circuit")?.0.circuit.depth()))
}

/// Parses pattern text into a new handle.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_pattern_parse(
    text: *const c_char,
    out: *mut *mut MbqcPattern,
) -> MbqcStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let file = parse_pattern_file(text).map_err(Error::from)?;
        put(out, Box::into_raw(Box::new(MbqcPattern(file))))
    })
}

/// # Safety
/// `p` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mbqc_pattern_free(p: *mut MbqcPattern) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Pattern text; release it with [`mbqc_string_free`]. Null on a null handle.
///
/// # Safety
/// `p` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mbqc_pattern_serialize(p: *const MbqcPattern) -> *mut c_char {
    match p.as_ref() {
        Some(p) => into_c_string(serialize_pattern_file(&p.0)),
        None => ptr::null_mut(),
    }
}

/// Translates a source circuit; the pattern is standardized and
/// signal-shifted.
///
/// # Safety
/// `c` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_circuit_to_pattern(
    c: *const MbqcCircuit,
    variant: MbqcVariant,
    out: *mut *mut MbqcPattern,
) -> MbqcStatus {
    guard(|| {
        let c = borrow(c, "circuit")?;
        let variant = match variant {
            MbqcVariant::Direct => Variant::Direct,
            MbqcVariant::Cluster => Variant::Cluster,
        };
        let t = circuit_to_pattern(&c.0.circuit, variant)?;
        let file = PatternFile {
            inputs: t.wire_inputs(),
            outputs: t.wire_outputs(),
            pattern: t.pattern,
        };
        put(out, Box::into_raw(Box::new(MbqcPattern(file))))
    })
}

/// Coherent circuit of a standard, signal-shifted pattern.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_pattern_to_circuit(
    p: *const MbqcPattern,
    fanin: MbqcFanIn,
    out: *mut *mut MbqcCircuit,
) -> MbqcStatus {
    guard(|| {
        let p = borrow(p, "pattern")?;
        let mode = match fanin {
            MbqcFanIn::Linear => FanInMode::Linear,
            MbqcFanIn::Tree => FanInMode::Tree,
        };
        let cc = pattern_to_circuit(&p.0.pattern, mode)?;
        let wire = |q: &mbqc::Qubit| cc.wire_of[q];
        let file = CircuitFile {
            inputs: p.0.inputs.iter().map(wire).collect(),
            outputs: p.0.outputs.iter().map(wire).collect(),
            circuit: cc.circuit.clone(),
        };
        put(out, Box::into_raw(Box::new(MbqcCircuit(file))))
    })
}

/// The full pipeline: translation, rewrites and a tree fan-in circuit.
/// `d_prime` may be null.
///
/// # Safety
/// `c` is a live handle; `out` is writable; `d_prime` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_circuit_parallelize(
    c: *const MbqcCircuit,
    out: *mut *mut MbqcCircuit,
    d_prime: *mut usize,
) -> MbqcStatus {
    guard(|| {
        let c = borrow(c, "circuit")?;
        let par = parallelize_circuit(&c.0.circuit)?;
        if !d_prime.is_null() {
            d_prime.write(par.report.d_prime);
        }
        let file = CircuitFile {
            circuit: par.coherent.circuit,
            inputs: par.logical_inputs,
            outputs: par.logical_outputs,
        };
        put(out, Box::into_raw(Box::new(MbqcCircuit(file))))
    })
}

type Rewrite = fn(&mbqc::Pattern) -> mbqc::Result<(mbqc::Pattern, mbqc::rewrite::RewriteTrace)>;

unsafe fn rewrite_into(
    p: *const MbqcPattern,
    out: *mut *mut MbqcPattern,
    f: Rewrite,
) -> MbqcStatus {
    guard(|| {
        let p = borrow(p, "pattern")?;
        let (pattern, _) = f(&p.0.pattern)?;
        let file = PatternFile {
            pattern,
            ..p.0.clone()
        };
        put(out, Box::into_raw(Box::new(MbqcPattern(file))))
    })
}

/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_pattern_standardize(
    p: *const MbqcPattern,
    out: *mut *mut MbqcPattern,
) -> MbqcStatus {
    rewrite_into(p, out, standardize)
}

/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_pattern_shift(
    p: *const MbqcPattern,
    out: *mut *mut MbqcPattern,
) -> MbqcStatus {
    rewrite_into(p, out, signal_shift)
}

/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_pattern_simplify(
    p: *const MbqcPattern,
    out: *mut *mut MbqcPattern,
) -> MbqcStatus {
    rewrite_into(p, out, pauli_simplify)
}

/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_pattern_quantum_depth(
    p: *const MbqcPattern,
    out: *mut usize,
) -> MbqcStatus {
    guard(|| put(out, quantum_depth(&borrow(p, "pattern")?.0.pattern)?))
}

/// Depth predicted from the influencing paths of a flow-form pattern.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_pattern_characterized_depth(
    p: *const MbqcPattern,
    out: *mut usize,
) -> MbqcStatus {
    guard(|| {
        let report = characterized_depth(&borrow(p, "pattern")?.0.pattern)?;
        put(out, report.characterized_depth)
    })
}

/// Number of layers of the flow of the pattern's geometry, outputs
/// included; `MbqcStatus::NoFlow` when there is none.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_pattern_flow_depth(
    p: *const MbqcPattern,
    out: *mut usize,
) -> MbqcStatus {
    guard(|| {
        let flow = find_flow(&borrow(p, "pattern")?.0.pattern.geometry())?;
        put(out, flow.depth())
    })
}

/// Compares the operators of two circuit or pattern texts up to global
/// phase. `out` receives 1 when they agree within `tol`, 0 otherwise.
///
/// # Safety
/// `a` and `b` are NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mbqc_equivalent(
    a: *const c_char,
    b: *const c_char,
    tol: f64,
    out: *mut i32,
) -> MbqcStatus {
    guard(|| {
        let parse = |s: &str| Artifact::parse(s).map_err(Error::from);
        let a = parse(read_str(a, "first text")?)?;
        let b = parse(read_str(b, "second text")?)?;
        let angles = SimAngles::default();
        let (u, v) = (a.operator(&angles)?, b.operator(&angles)?);
        let same = u.shape() == v.shape() && equiv_up_to_phase(&u, &v, tol)?;
        put(out, i32::from(same))
    })
}
